#pragma once

#include "loopidx/locindex.hpp"

#include <string>

namespace loopidx::models {

// Alternating sum of exponentials over the lattice-translated Weyl orbit of a
// dominant weight: every point w(lambda + rho) + gram*eta inside the window
// contributes the sign of w (translations themselves carry sign +1).
charring::WindowedMultiplicity coadjoint_toy_index(const rootsys::RootDatum& d,
                                                   const rootsys::WeightVec& lambda,
                                                   const charring::Window& win);

// The same multiplicity table assembled through the fixed-point expansion
// pipeline (point contributions expanded over lattice translates); both paths
// must agree coefficient for coefficient.
charring::WindowedMultiplicity coadjoint_toy_index_by_contributions(
    const rootsys::RootDatum& d, const rootsys::WeightVec& lambda,
    const charring::Window& win);

struct VerlindeParams {
    rootsys::RootDatum datum; // single simple factor scaled by ell
    int level = 0;            // k >= 0
    int genus = 1;            // h >= 1
    long long ell = 0;        // level + dual Coxeter number of the factor
};

// Builds the datum for one simple factor at scale level + dual Coxeter.
// Throws std::invalid_argument on multi-factor specs, explicit factor scales,
// negative level, or genus < 1.
VerlindeParams make_verlinde_params(const std::string& simple_factor, int level,
                                    int genus);

// Integrand whose value at a torus point g is (order(T) / |J(g)|^2)^(genus-1),
// with J the alternating Weyl sum at rho.
locindex::IntegrandDatum verlinde_integrand(const VerlindeParams& p);

// Sum of the integrand over regular orbit representatives. Throws
// std::runtime_error if the result is not real to 1e-9 or not within 1e-6 of
// an integer, both of which signal an assembly bug.
jetcalc::Cpx verlinde_fixed_point(const VerlindeParams& p);

// Same number computed by assembling the conjugation-invariant distribution
// with zero vector field and pairing it with the constant character.
jetcalc::Cpx verlinde_assembled(const VerlindeParams& p);

// Closed-form reference ((k+2)/2)^(h-1) * sum_j sin(j pi/(k+2))^(2-2h) over
// j = 1..k+1; defined for A1 factors only, throws std::invalid_argument
// otherwise.
double verlinde_trig_oracle(const VerlindeParams& p);

} // namespace loopidx::models
