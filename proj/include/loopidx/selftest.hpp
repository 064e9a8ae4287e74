#pragma once

#include "loopidx/models.hpp"

#include <iosfwd>
#include <random>
#include <string>

namespace loopidx::selftest {

// Deterministic generators shared by the property sweep and the acceptance
// runner; every draw comes from the caller's engine so a fixed seed fixes the
// whole run.
jetcalc::VectorFieldSeries random_field(const rootsys::RootDatum& d, std::mt19937_64& rng,
                                        int terms, int max_order, long long weight_bound,
                                        double amplitude);
rootsys::CoweightC random_base(const rootsys::RootDatum& d, std::mt19937_64& rng);
charring::LaurentPoly random_poly(const rootsys::RootDatum& d, std::mt19937_64& rng,
                                  int terms, long long weight_bound, double amplitude);

// Pointwise value and directional derivative of the order-j part of the
// field at exp(xi); the oracles behind the solver and Jacobian checks.
rootsys::CoweightC field_value(const rootsys::RootDatum& d,
                               const jetcalc::VectorFieldSeries& v, int j,
                               const rootsys::CoweightC& xi);
rootsys::CoweightC field_derivative(const rootsys::RootDatum& d,
                                    const jetcalc::VectorFieldSeries& v, int j,
                                    const rootsys::CoweightC& xi,
                                    const rootsys::CoweightC& zeta);

// Largest coefficient deviation of the solved jet's first two orders from
//   -t ell^{-1}v_0(g) - t^2 (ell^{-1}v_1(g) - ell^{-1} d_{ell^{-1}v_0(g)} v_0(g)).
double order2_closed_form_deviation(const rootsys::RootDatum& d,
                                    const jetcalc::VectorFieldSeries& v,
                                    const rootsys::CoweightC& base);

// Relative gap between the series Jacobian determinant along the jet and a
// centered finite-difference determinant of the realized flow at time t.
double jacobian_fd_relative_deviation(const rootsys::RootDatum& d,
                                      const jetcalc::VectorFieldSeries& v,
                                      const jetcalc::TorusJet& jet, int N, double t);

// Multiplicity table of a finitely supported character combination on the
// bounding box of its support.
charring::WindowedMultiplicity poly_table(const charring::LaurentPoly& p, int rank);

struct SelftestResult {
    int checks = 0;
    int failures = 0;
    bool pass() const { return failures == 0; }
};

// One seeded pass over every module's cheap invariants; one line per
// property goes to the stream.
SelftestResult run_selftest(unsigned long seed, std::ostream& os);

} // namespace loopidx::selftest
