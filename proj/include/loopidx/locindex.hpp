#pragma once

#include "loopidx/charring.hpp"
#include "loopidx/jetcalc.hpp"
#include "loopidx/poisson.hpp"
#include "loopidx/tlevel.hpp"

#include <utility>
#include <vector>

namespace loopidx::locindex {

using charring::LaurentPoly;
using charring::Window;
using charring::WindowedMultiplicity;
using jetcalc::CSeries;
using jetcalc::TorusJet;
using jetcalc::VectorFieldSeries;
using rootsys::CoweightQ;
using rootsys::RootDatum;
using rootsys::WeightVec;
using rootsys::WeylElement;

// Localized fixed-point data at an isolated component: a polarizing direction
// beta, a net phase weight, the weights of the restricted coefficient class,
// and the nonzero normal weights whose inverted factors are expanded as
// polarized geometric series.
struct FixedPointContribution {
    CoweightQ beta;
    WeightVec mu0;
    int sign = 1;
    LaurentPoly e_weights;                 // finite weight -> coefficient map
    std::vector<WeightVec> normal_weights; // each must pair nonzero with beta
};

// Exact upper bound c with <mu, beta> <= c on the support of the expansion.
Rational support_bound(const FixedPointContribution& c);

// Can any support point land inside the window?  (Exact test for point
// contributions; half-space test otherwise.)
bool support_meets_window(const FixedPointContribution& c, const Window& win);

// sign * e^{mu0} * e_weights * prod_j (1 - e^{-alpha_j})^{-1}, every factor
// expanded away from the polarizing direction:
//   <alpha, beta> > 0  ->  sum_{n>=0} e^{-n alpha}
//   <alpha, beta> < 0  ->  -sum_{n>=1} e^{+n alpha}
// truncated to the window.  Throws on an unpolarized normal weight.
WindowedMultiplicity nonabelian_contribution(const RootDatum& d, const FixedPointContribution& c,
                                             const Window& win);

// Pointwise sum of the contributions that can meet the window; contributions
// that provably miss it are only counted (reported through `skipped`).
WindowedMultiplicity nonabelian_sum(const RootDatum& d,
                                    const std::vector<FixedPointContribution>& cs,
                                    const Window& win, size_t* skipped = nullptr);

// All lattice translates of `base` (mu0 shifted by gram*eta, beta by eta)
// that can meet the window.  Termination is certified through the exact
// operator norm of the inverse Gram matrix, which exists only for point
// contributions; a translated family with normal weights has cone-shaped
// support that re-enters every window, and is rejected as non-admissible.
std::vector<FixedPointContribution> expand_lattice_translates(const RootDatum& d,
                                                              const FixedPointContribution& base,
                                                              const Window& win,
                                                              long long shell_cap = 4096);

// numerator / prod_j (1 - e^{-alpha_j})^{mult_j}, all raised to `exponent`.
struct IntegrandDatum {
    LaurentPoly numerator;
    std::vector<std::pair<WeightVec, int>> denominator_factors;
    int exponent = 1;
};

IntegrandDatum constant_datum(int rank, jetcalc::Cpx value);

// Evaluate the datum along a jet.  A denominator factor whose constant term
// vanishes means the base point sits on the wall of that factor; rejected.
CSeries integrand_eval(const IntegrandDatum& I, const TorusJet& jet, int N);

// Finitely many delta-jets with scalar-series coefficients.
struct DeltaAtom {
    CoweightQ base; // canonical representative, coordinates in [0,1)
    TorusJet jet;
    CSeries coeff;
};

struct DeltaJetDistribution {
    int order = 0;
    std::vector<DeltaAtom> atoms; // sorted by base, bases pairwise distinct
};

enum class AssemblyMode { T, G };

// For each regular orbit representative g with integrand datum I_g: solve the
// fixed-point jet g_t over g, form I_g(g_t) / (|T_level| * det(1 + t l^{-1}
// dv_t(g_t))), then emit either the full Weyl orbit of delta-jets with
// alternating signs (mode T) or a single atom carrying the extra factor
// (-1)^{#positive roots} * J(g_t) with J the antisymmetrized rho-exponential
// (mode G; requires a Weyl-invariant field).
DeltaJetDistribution assemble_fixed_point_index(
    const RootDatum& d, const std::vector<std::pair<CoweightQ, IntegrandDatum>>& data,
    const VectorFieldSeries& v, int N, AssemblyMode mode);

CSeries pair_with_character(const DeltaJetDistribution& dist, const LaurentPoly& f, int N);

// Pairing against sum_k t^k ps[k] with character-ring coefficients.
CSeries pair_with_poly_series(const DeltaJetDistribution& dist,
                              const std::vector<LaurentPoly>& ps, int N);

struct DeviationReport {
    double max_deviation = 0.0;
    double tol = 0.0;
    bool pass = false;
};

// Pairs the distribution against f times the eta-translate multiplier for a
// panel of characters f = e^lambda, |lambda_i| <= panel_radius, and compares
// with the plain pairing; assembled distributions must be invariant.
DeviationReport check_twisted_invariance(const RootDatum& d, const DeltaJetDistribution& dist,
                                         const VectorFieldSeries& v, const IntVec& eta, int N,
                                         double tol = 1e-8, long long panel_radius = 3);

// Atom-matching antisymmetry defect: coefficients at Weyl-translated bases
// must differ by the sign of the group element (missing atoms count as zero).
double weyl_antisymmetry_deviation(const RootDatum& d, const std::vector<WeylElement>& wl,
                                   const DeltaJetDistribution& dist);

bool is_weyl_invariant_field(const RootDatum& d, const std::vector<WeylElement>& wl,
                             const VectorFieldSeries& v, double tol = 1e-9);

} // namespace loopidx::locindex
