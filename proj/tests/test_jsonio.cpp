#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "loopidx/jsonio.hpp"
#include "loopidx/models.hpp"

#include <sstream>

using namespace loopidx;
using namespace loopidx::rootsys;
using namespace loopidx::charring;
using namespace loopidx::jetcalc;
using namespace loopidx::jsonio;

namespace {

RootDatum datum(const std::string& s) { return build_root_datum(LieSpec::parse(s)); }

json reparse(const json& j) { return json::parse(j.dump()); }

} // namespace

TEST_CASE("rationals ride as p/q strings") {
    for (const char* s : {"3/4", "-5", "0", "-7/3"}) {
        Rational r = Rational::parse(s);
        CHECK(json_rational(reparse(rational_json(r))) == r);
    }
    CHECK(rational_json(Rational(3, 4)).get<std::string>() == "3/4");
    CHECK_THROWS_AS(json_rational(json(7)), std::invalid_argument);

    CoweightQ xi{Rational(1, 4), Rational(-2, 3)};
    CHECK(json_coweight(reparse(coweight_json(xi))) == xi);
}

TEST_CASE("laurent polynomials round-trip bit for bit") {
    LaurentPoly p;
    p.add_term({2, -1}, Cpx(1.0 / 3.0, -0.25));
    p.add_term({0, 0}, Cpx(1e-15, 2.0));
    p.add_term({-3, 5}, Cpx(7.0, 0.0));
    CHECK(json_laurent(reparse(laurent_json(p))) == p);

    LaurentPolyQ q;
    q.add_term({1}, GaussianRational(Rational(2, 3), Rational(-1, 7)));
    q.add_term({-4}, GaussianRational(5));
    CHECK(json_laurent_exact(reparse(laurent_exact_json(q))) == q);

    CHECK_THROWS(json_laurent(json::parse("{}")));
}

TEST_CASE("series, jets, and vector fields round-trip") {
    CSeries s{Cpx(0.1, 0.2), Cpx(-3.0, 1e-9), Cpx(0.0, 0.0)};
    CHECK(json_series(reparse(series_json(s))) == s);

    TorusJet jet = make_jet(CoweightQ{Rational(1, 4), Rational(1, 3)}, 3);
    jet.plus[2][0] = Cpx(0.125, -0.5);
    TorusJet back = json_jet(reparse(jet_json(jet)));
    CHECK(back.base == jet.base);
    CHECK(back.plus == jet.plus);

    VectorFieldSeries v;
    v.rank = 2;
    v.add_term(0, {1, -1}, {Cpx(0.3, 0.1), Cpx(0.0, -0.2)});
    v.add_term(2, {0, 2}, {Cpx(-1.0, 0.0), Cpx(0.5, 0.5)});
    VectorFieldSeries w = json_field(reparse(field_json(v)));
    CHECK(w.rank == v.rank);
    REQUIRE(w.orders.size() == v.orders.size());
    for (size_t k = 0; k < v.orders.size(); ++k) CHECK(w.orders[k] == v.orders[k]);

    json bad = field_json(v);
    bad["orders"][0][0]["vec"] = json::array({json::array({0.1, 0.2})});
    CHECK_THROWS_AS(json_field(bad), std::invalid_argument);
}

TEST_CASE("integrand data and fixed-point points round-trip") {
    auto p = models::make_verlinde_params("A1", 2, 3);
    locindex::IntegrandDatum I = models::verlinde_integrand(p);
    auto I2 = json_integrand(reparse(integrand_json(I)));
    CHECK(I2.numerator == I.numerator);
    CHECK(I2.denominator_factors == I.denominator_factors);
    CHECK(I2.exponent == I.exponent);

    FixedPointData pts{{CoweightQ{Rational(1, 4)}, I},
                       {CoweightQ{Rational(3, 8)}, locindex::constant_datum(1, Cpx(2, 1))}};
    auto back = json_fixed_point_data(reparse(fixed_point_data_json(pts)));
    REQUIRE(back.size() == 2);
    for (size_t i = 0; i < 2; ++i) {
        CHECK(back[i].first == pts[i].first);
        CHECK(back[i].second.numerator == pts[i].second.numerator);
        CHECK(back[i].second.denominator_factors == pts[i].second.denominator_factors);
        CHECK(back[i].second.exponent == pts[i].second.exponent);
    }
}

TEST_CASE("assembled distributions round-trip") {
    auto d = datum("A1*2");
    VectorFieldSeries v;
    v.rank = 1;
    v.add_term(0, {2}, {Cpx(0.2, 0.1)});
    v.add_term(0, {-2}, {Cpx(0.2, -0.1)});
    std::vector<std::pair<CoweightQ, locindex::IntegrandDatum>> data{
        {{Rational(1, 4)}, locindex::constant_datum(1, 1.0)}};
    auto dist = locindex::assemble_fixed_point_index(d, data, v, 3,
                                                     locindex::AssemblyMode::T);
    auto back = json_distribution(reparse(distribution_json(dist)));
    CHECK(back.order == dist.order);
    REQUIRE(back.atoms.size() == dist.atoms.size());
    for (size_t i = 0; i < dist.atoms.size(); ++i) {
        CHECK(back.atoms[i].base == dist.atoms[i].base);
        CHECK(back.atoms[i].jet.base == dist.atoms[i].jet.base);
        CHECK(back.atoms[i].jet.plus == dist.atoms[i].jet.plus);
        CHECK(back.atoms[i].coeff == dist.atoms[i].coeff);
    }
}

TEST_CASE("poisson reports round-trip") {
    auto d = datum("A1*2");
    VectorFieldSeries v;
    v.rank = 1;
    LaurentPoly f = LaurentPoly::monomial({4}, 1.0) + LaurentPoly::constant(1, 0.5);
    auto rep = poisson::poisson_check(d, v, f, 2, 1e-8);
    auto back = json_poisson_report(reparse(poisson_report_json(rep)));
    CHECK(back.order == rep.order);
    CHECK(back.lhs == rep.lhs);
    CHECK(back.rhs == rep.rhs);
    CHECK(back.deviation == rep.deviation);
    CHECK(back.max_deviation == rep.max_deviation);
    CHECK(back.eta_count == rep.eta_count);
    CHECK(back.tol == rep.tol);
    CHECK(back.pass == rep.pass);
}

TEST_CASE("multiplicity tables round-trip and print as CSV") {
    auto d = datum("A1*2");
    auto m = models::coadjoint_toy_index(d, {0}, Window::cube(1, 6));
    auto back = json_multiplicity(reparse(multiplicity_json(m)));
    CHECK(back == m);

    json bad = multiplicity_json(m);
    bad["values"].push_back({{"w", {99}}, {"re", 1.0}, {"im", 0.0}});
    CHECK_THROWS_AS(json_multiplicity(bad), std::out_of_range);

    std::ostringstream os;
    multiplicity_csv(os, m);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "w0,re,im");
    size_t rows = 0;
    while (std::getline(is, line)) ++rows;
    CHECK(rows == m.values.size());
}

TEST_CASE("tlevel and metadata reports carry the advertised fields") {
    auto d = datum("A1*2");
    json t = tlevel_report_json(d);
    CHECK(t["order"] == 4);
    CHECK(t["regular"] == 2);
    REQUIRE(t["orbits"].size() == 1);
    CHECK(t["orbits"][0]["rep"][0] == "1/4");
    CHECK(t["orbits"][0]["size"] == 2);

    json md = metadata_json("A1*2", 4, 1e-8, 7);
    CHECK(md["group"] == "A1*2");
    CHECK(md["N"] == 4);
    CHECK(md["seed"] == 7);
    CHECK(md["version"] == "0.1.0");
}
