#pragma once

#include "loopidx/charring.hpp"
#include "loopidx/jetcalc.hpp"
#include "loopidx/tlevel.hpp"

#include <vector>

namespace loopidx::poisson {

using charring::LaurentPoly;
using jetcalc::CSeries;
using jetcalc::VectorFieldSeries;
using rootsys::RootDatum;

// Outcome of comparing the two independent evaluations of the deformed
// lattice summation identity through a fixed t-order.
struct PoissonReport {
    int order = 0;
    CSeries lhs, rhs;              // length order+1 each
    std::vector<double> deviation; // per t-order absolute difference
    double max_deviation = 0.0;
    size_t eta_count = 0;          // lattice vectors feeding the direct sum
    double tol = 0.0;
    bool pass = false;
};

// Lattice vectors that can contribute to the direct (Fourier) side: gram*eta
// must land in -(supp f + S_N) where S_N is the N-fold sumset of
// supp(v) together with 0.  Throws when the sumset outgrows the cap.
std::vector<IntVec> lhs_candidates(const RootDatum& d, const VectorFieldSeries& v,
                                   const LaurentPoly& f, int N, size_t cap = 500000);

// Character-series expansion of the eta-translate multiplier
//   u^{gram*eta} * exp(2 pi i t <eta, v_t(u)>)
// where the pairing is against the unscaled basic form (the level factors
// cancel between the lattice scaling and the flow's inverse scaling).
// Entry k is the weight-space coefficient of t^k.
std::vector<LaurentPoly> eta_multiplier_series(const RootDatum& d, const VectorFieldSeries& v,
                                               const IntVec& eta, int N);

// Direct side: sum over candidate eta of the constant Fourier coefficient of
// f times the eta-multiplier (Haar measure normalized to vol 1, so pairing
// with a character is exactly constant-term extraction).
CSeries poisson_lhs(const RootDatum& d, const VectorFieldSeries& v, const LaurentPoly& f, int N,
                    size_t* eta_count = nullptr, size_t cap = 500000);

// Fixed-point side: average over the level subgroup of f evaluated on the
// fixed-point jet, divided by the flow Jacobian determinant along that jet.
CSeries poisson_rhs(const RootDatum& d, const VectorFieldSeries& v, const LaurentPoly& f, int N);

// Both sides plus the per-order deviations; pass iff max deviation < tol.
PoissonReport poisson_check(const RootDatum& d, const VectorFieldSeries& v, const LaurentPoly& f,
                            int N, double tol = 1e-8);

} // namespace loopidx::poisson
