#include "loopidx/jsonio.hpp"

#include "loopidx/tlevel.hpp"

#include <ostream>

namespace loopidx::jsonio {

using charring::LaurentPoly;
using charring::LaurentPolyQ;
using charring::WindowedMultiplicity;
using jetcalc::Cpx;
using jetcalc::CSeries;
using jetcalc::TorusJet;
using jetcalc::VectorFieldSeries;
using rootsys::CoweightC;
using rootsys::CoweightQ;
using rootsys::WeightVec;

namespace {

json cpx_json(Cpx c) { return json::array({c.real(), c.imag()}); }

Cpx json_cpx(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("complex value must be a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

json weight_json(const WeightVec& w) { return json(w); }

WeightVec json_weight(const json& j) { return j.get<WeightVec>(); }

json cvec_json(const CoweightC& v) {
    json out = json::array();
    for (auto c : v) out.push_back(cpx_json(c));
    return out;
}

CoweightC json_cvec(const json& j) {
    CoweightC out;
    for (const auto& e : j) out.push_back(json_cpx(e));
    return out;
}

} // namespace

json rational_json(const Rational& r) { return r.str(); }

Rational json_rational(const json& j) {
    if (!j.is_string()) throw std::invalid_argument("rational must be a \"p/q\" string");
    return Rational::parse(j.get<std::string>());
}

json coweight_json(const CoweightQ& xi) {
    json out = json::array();
    for (const auto& r : xi) out.push_back(rational_json(r));
    return out;
}

CoweightQ json_coweight(const json& j) {
    CoweightQ out;
    for (const auto& e : j) out.push_back(json_rational(e));
    return out;
}

json laurent_json(const LaurentPoly& p) {
    json terms = json::array();
    for (const auto& [w, c] : p.terms())
        terms.push_back({{"w", weight_json(w)}, {"re", c.real()}, {"im", c.imag()}});
    return {{"terms", terms}};
}

LaurentPoly json_laurent(const json& j) {
    LaurentPoly p;
    for (const auto& t : j.at("terms"))
        p.add_term(json_weight(t.at("w")),
                   Cpx(t.at("re").get<double>(), t.at("im").get<double>()));
    return p;
}

json laurent_exact_json(const LaurentPolyQ& p) {
    json terms = json::array();
    for (const auto& [w, c] : p.terms())
        terms.push_back({{"w", weight_json(w)},
                         {"re", rational_json(c.re)},
                         {"im", rational_json(c.im)}});
    return {{"terms", terms}};
}

LaurentPolyQ json_laurent_exact(const json& j) {
    LaurentPolyQ p;
    for (const auto& t : j.at("terms"))
        p.add_term(json_weight(t.at("w")),
                   GaussianRational(json_rational(t.at("re")), json_rational(t.at("im"))));
    return p;
}

json series_json(const CSeries& s) {
    json out = json::array();
    for (auto c : s) out.push_back(cpx_json(c));
    return out;
}

CSeries json_series(const json& j) {
    CSeries out;
    for (const auto& e : j) out.push_back(json_cpx(e));
    return out;
}

json field_json(const VectorFieldSeries& v) {
    json orders = json::array();
    for (const auto& level : v.orders) {
        json terms = json::array();
        for (const auto& [w, vec] : level)
            terms.push_back({{"w", weight_json(w)}, {"vec", cvec_json(vec)}});
        orders.push_back(std::move(terms));
    }
    return {{"rank", v.rank}, {"orders", orders}};
}

VectorFieldSeries json_field(const json& j) {
    VectorFieldSeries v;
    v.rank = j.at("rank").get<int>();
    const auto& orders = j.at("orders");
    for (size_t k = 0; k < orders.size(); ++k)
        for (const auto& t : orders[k]) {
            CoweightC vec = json_cvec(t.at("vec"));
            if ((int)vec.size() != v.rank)
                throw std::invalid_argument("field vector rank mismatch");
            v.add_term((int)k, json_weight(t.at("w")), vec);
        }
    return v;
}

json jet_json(const TorusJet& jet) {
    json plus = json::array();
    for (const auto& p : jet.plus) plus.push_back(cvec_json(p));
    return {{"base", cvec_json(jet.base)}, {"plus", plus}};
}

TorusJet json_jet(const json& j) {
    TorusJet jet;
    jet.base = json_cvec(j.at("base"));
    for (const auto& p : j.at("plus")) jet.plus.push_back(json_cvec(p));
    return jet;
}

json integrand_json(const locindex::IntegrandDatum& I) {
    json denoms = json::array();
    for (const auto& [w, mult] : I.denominator_factors)
        denoms.push_back({{"w", weight_json(w)}, {"mult", mult}});
    return {{"numerator", laurent_json(I.numerator)},
            {"denoms", denoms},
            {"exp", I.exponent}};
}

locindex::IntegrandDatum json_integrand(const json& j) {
    locindex::IntegrandDatum I;
    I.numerator = json_laurent(j.at("numerator"));
    for (const auto& d : j.at("denoms"))
        I.denominator_factors.push_back({json_weight(d.at("w")), d.at("mult").get<int>()});
    I.exponent = j.at("exp").get<int>();
    return I;
}

json fixed_point_data_json(const FixedPointData& pts) {
    json points = json::array();
    for (const auto& [rep, I] : pts) {
        json p = integrand_json(I);
        p["rep"] = coweight_json(rep);
        points.push_back(std::move(p));
    }
    return {{"points", points}};
}

FixedPointData json_fixed_point_data(const json& j) {
    FixedPointData out;
    for (const auto& p : j.at("points"))
        out.push_back({json_coweight(p.at("rep")), json_integrand(p)});
    return out;
}

json distribution_json(const locindex::DeltaJetDistribution& dist) {
    json atoms = json::array();
    for (const auto& a : dist.atoms)
        atoms.push_back({{"base", coweight_json(a.base)},
                         {"jet", jet_json(a.jet)},
                         {"coeff", series_json(a.coeff)}});
    return {{"order", dist.order}, {"atoms", atoms}};
}

locindex::DeltaJetDistribution json_distribution(const json& j) {
    locindex::DeltaJetDistribution dist;
    dist.order = j.at("order").get<int>();
    for (const auto& a : j.at("atoms"))
        dist.atoms.push_back({json_coweight(a.at("base")), json_jet(a.at("jet")),
                              json_series(a.at("coeff"))});
    return dist;
}

json poisson_report_json(const poisson::PoissonReport& r) {
    return {{"order", r.order},
            {"lhs", series_json(r.lhs)},
            {"rhs", series_json(r.rhs)},
            {"deviation", r.deviation},
            {"max_deviation", r.max_deviation},
            {"eta_count", r.eta_count},
            {"tol", r.tol},
            {"pass", r.pass}};
}

poisson::PoissonReport json_poisson_report(const json& j) {
    poisson::PoissonReport r;
    r.order = j.at("order").get<int>();
    r.lhs = json_series(j.at("lhs"));
    r.rhs = json_series(j.at("rhs"));
    r.deviation = j.at("deviation").get<std::vector<double>>();
    r.max_deviation = j.at("max_deviation").get<double>();
    r.eta_count = j.at("eta_count").get<size_t>();
    r.tol = j.at("tol").get<double>();
    r.pass = j.at("pass").get<bool>();
    return r;
}

json multiplicity_json(const WindowedMultiplicity& m) {
    json values = json::array();
    for (const auto& [w, c] : m.values)
        values.push_back({{"w", weight_json(w)}, {"re", c.real()}, {"im", c.imag()}});
    return {{"window", {{"lo", json(m.window.lo)}, {"hi", json(m.window.hi)}}},
            {"values", values}};
}

WindowedMultiplicity json_multiplicity(const json& j) {
    WindowedMultiplicity m;
    m.window.lo = j.at("window").at("lo").get<IntVec>();
    m.window.hi = j.at("window").at("hi").get<IntVec>();
    for (const auto& t : j.at("values"))
        m.add(json_weight(t.at("w")),
              Cpx(t.at("re").get<double>(), t.at("im").get<double>()));
    return m;
}

void multiplicity_csv(std::ostream& os, const WindowedMultiplicity& m) {
    int rank = m.window.rank();
    for (int i = 0; i < rank; ++i) os << "w" << i << ",";
    os << "re,im\n";
    os.precision(17);
    for (const auto& [w, c] : m.values) {
        for (long long x : w) os << x << ",";
        os << c.real() << "," << c.imag() << "\n";
    }
}

json tlevel_report_json(const rootsys::RootDatum& d) {
    auto els = tlevel::enumerate_tlevel(d);
    auto wl = rootsys::weyl_elements(d);
    auto orbits = tlevel::regular_orbit_reps(d, els, wl);
    size_t regular = 0;
    for (const auto& el : els)
        if (tlevel::is_regular(d, el.xi)) ++regular;
    json ob = json::array();
    for (size_t i = 0; i < orbits.reps.size(); ++i)
        ob.push_back({{"rep", coweight_json(els[orbits.reps[i]].xi)},
                      {"size", orbits.orbits[i].size()}});
    return {{"order", tlevel::tlevel_order(d)}, {"regular", regular}, {"orbits", ob}};
}

json metadata_json(const std::string& group, int order, double tol, unsigned long seed) {
    return {{"group", group}, {"N", order}, {"tol", tol}, {"seed", seed},
            {"version", kVersion}};
}

} // namespace loopidx::jsonio
