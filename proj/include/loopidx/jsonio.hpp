#pragma once

#include "loopidx/locindex.hpp"
#include "loopidx/poisson.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

// JSON wire formats for every value the command line reads or writes.
// Rationals travel as "p/q" strings so exact data stays exact; doubles rely
// on the shortest-round-trip printing of the JSON library.
namespace loopidx::jsonio {

using nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";

json rational_json(const Rational& r);
Rational json_rational(const json& j);

json coweight_json(const rootsys::CoweightQ& xi);
rootsys::CoweightQ json_coweight(const json& j);

// {"terms":[{"w":[ints],"re":float,"im":float}]}
json laurent_json(const charring::LaurentPoly& p);
charring::LaurentPoly json_laurent(const json& j);

// exact coefficients: {"terms":[{"w":[ints],"re":"p/q","im":"p/q"}]}
json laurent_exact_json(const charring::LaurentPolyQ& p);
charring::LaurentPolyQ json_laurent_exact(const json& j);

// [[re,im],...] with index = t-order
json series_json(const jetcalc::CSeries& s);
jetcalc::CSeries json_series(const json& j);

// {"rank":r,"orders":[[{"w":[ints],"vec":[[re,im],...]}...]...]}
json field_json(const jetcalc::VectorFieldSeries& v);
jetcalc::VectorFieldSeries json_field(const json& j);

// {"base":[[re,im],...],"plus":[[[re,im],...],...]}
json jet_json(const jetcalc::TorusJet& jet);
jetcalc::TorusJet json_jet(const json& j);

// {"numerator":laurent,"denoms":[{"w":[ints],"mult":m}],"exp":e}
json integrand_json(const locindex::IntegrandDatum& I);
locindex::IntegrandDatum json_integrand(const json& j);

// {"points":[{"rep":["p/q",...],"numerator":...,"denoms":[...],"exp":...}]}
using FixedPointData = std::vector<std::pair<rootsys::CoweightQ, locindex::IntegrandDatum>>;
json fixed_point_data_json(const FixedPointData& pts);
FixedPointData json_fixed_point_data(const json& j);

// {"order":N,"atoms":[{"base":["p/q",...],"jet":...,"coeff":series}]}
json distribution_json(const locindex::DeltaJetDistribution& dist);
locindex::DeltaJetDistribution json_distribution(const json& j);

json poisson_report_json(const poisson::PoissonReport& r);
poisson::PoissonReport json_poisson_report(const json& j);

// {"window":{"lo":[ints],"hi":[ints]},"values":[{"w":[ints],"re":..,"im":..}]}
json multiplicity_json(const charring::WindowedMultiplicity& m);
charring::WindowedMultiplicity json_multiplicity(const json& j);

// rows: one weight coordinate per column, then re and im
void multiplicity_csv(std::ostream& os, const charring::WindowedMultiplicity& m);

// {"order":…,"regular":…,"orbits":[{"rep":["p/q",...],"size":…}]}
json tlevel_report_json(const rootsys::RootDatum& d);

// {"group":…,"N":…,"tol":…,"seed":…,"version":…}
json metadata_json(const std::string& group, int order, double tol, unsigned long seed);

} // namespace loopidx::jsonio
