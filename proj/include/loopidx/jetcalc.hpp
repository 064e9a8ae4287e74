#pragma once

#include "loopidx/charring.hpp"
#include "loopidx/series.hpp"

#include <map>
#include <vector>

namespace loopidx::jetcalc {

using rootsys::CoweightC;
using rootsys::CoweightQ;
using rootsys::RootDatum;
using rootsys::WeightVec;

// Default cap on truncation orders accepted by the solvers; requests beyond
// it are almost certainly a typo and explode combinatorially.
inline constexpr int kMaxOrder = 12;

void check_order(int N, int cap = kMaxOrder);

// Formal vector field on the torus with polynomial frequency content:
// v_t = sum_j t^j sum_lambda vec_{j,lambda} e^lambda.  Values are coweights.
struct VectorFieldSeries {
    int rank = 0;
    std::vector<std::map<WeightVec, CoweightC, charring::GradedLexLess>> orders;

    int order() const { return (int)orders.size() - 1; }
    void add_term(int j, const WeightVec& w, const CoweightC& vec);
    size_t term_count() const;
};

// t-series of coweight vectors
using VSeries = std::vector<CoweightC>;

CoweightC ell_inverse(const RootDatum& d, CoweightC v);

// v_t evaluated along the jet u(t); a coweight-valued series.
VSeries evaluate_field_at_jet(const RootDatum& d, const VectorFieldSeries& v,
                              const TorusJet& jet, int N);

// The time-t flow applied to a jet: u -> u * exp(t * [ell^{-1}] field(u)).
TorusJet apply_flow(const RootDatum& d, const VectorFieldSeries& field, const TorusJet& jet,
                    int N, bool apply_ell_inverse);

// Unique jet with the given base solving  plus + t ell^{-1} v_t(base*exp(plus)) = 0,
// i.e. the fixed point of the deformed flow lying over `base`.  The residual of
// the defining equation is re-evaluated and asserted to vanish through order N.
TorusJet solve_fixed_point(const RootDatum& d, const VectorFieldSeries& v,
                           const CoweightC& base, int N);
TorusJet solve_fixed_point(const RootDatum& d, const VectorFieldSeries& v,
                           const CoweightQ& base, int N);

// det(1 + t ell^{-1} dv_t) along the jet.
CSeries flow_jacobian_det(const RootDatum& d, const VectorFieldSeries& v, const TorusJet& jet,
                          int N);

// Symbolic inverse flow: the field psi with u*exp(t psi_t(u)) inverting
// u*exp(t ell^{-1} v_t(u)) through order N.  Coefficients live in the
// character ring; support growth is capped.
VectorFieldSeries invert_flow(const RootDatum& d, const VectorFieldSeries& v, int N,
                              size_t support_cap = 200000);

TorusJet act_on_jet(const rootsys::WeylElement& w, const TorusJet& jet);

// Sum over the Weyl group of w.v; the result is W-invariant by construction.
VectorFieldSeries symmetrize_field(const RootDatum& d,
                                   const std::vector<rootsys::WeylElement>& wl,
                                   const VectorFieldSeries& v);

double jet_distance(const TorusJet& a, const TorusJet& b);

// max |coefficient| over the plus-part of the jet
double jet_plus_norm(const TorusJet& jet);

} // namespace loopidx::jetcalc
