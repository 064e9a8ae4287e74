#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "loopidx/poisson.hpp"

#include <cstdlib>
#include <random>

using namespace loopidx;
using namespace loopidx::rootsys;
using namespace loopidx::jetcalc;
using namespace loopidx::charring;
using namespace loopidx::poisson;

namespace {

RootDatum datum(const std::string& s) { return build_root_datum(LieSpec::parse(s)); }

VectorFieldSeries empty_field(int rank) {
    VectorFieldSeries v;
    v.rank = rank;
    return v;
}

Cpx rand_cpx(std::mt19937& rng, double amp) {
    std::uniform_real_distribution<double> u(-amp, amp);
    return Cpx(u(rng), u(rng));
}

VectorFieldSeries random_field(const RootDatum& d, std::mt19937& rng, int max_terms,
                               double amp) {
    std::uniform_int_distribution<int> nterms(1, max_terms), ord(0, 1), wt(-2, 2);
    VectorFieldSeries v;
    v.rank = d.rank;
    int n = nterms(rng);
    for (int k = 0; k < n; ++k) {
        WeightVec w(d.rank);
        for (auto& c : w) c = wt(rng);
        CoweightC vec(d.rank);
        for (auto& c : vec) c = rand_cpx(rng, amp);
        v.add_term(ord(rng), w, vec);
    }
    return v;
}

LaurentPoly random_poly(const RootDatum& d, std::mt19937& rng, int max_terms, double amp) {
    std::uniform_int_distribution<int> nterms(1, max_terms), wt(-3, 3);
    LaurentPoly f;
    int n = nterms(rng);
    for (int k = 0; k < n; ++k) {
        WeightVec w(d.rank);
        for (auto& c : w) c = wt(rng);
        f.add_term(w, rand_cpx(rng, amp));
    }
    return f;
}

} // namespace

TEST_CASE("trivial field reduces to character orthogonality") {
    auto d = datum("A1*2");
    auto v = empty_field(d.rank);
    int N = 3;

    auto hit = poisson_check(d, v, LaurentPoly::monomial({4}, 1.0), N);
    CHECK(hit.pass);
    CHECK(std::abs(hit.lhs[0] - 1.0) < 1e-12);
    for (int k = 1; k <= N; ++k) CHECK(std::abs(hit.lhs[k]) < 1e-12);

    auto miss = poisson_check(d, v, LaurentPoly::monomial({2}, 1.0), N);
    CHECK(miss.pass);
    for (int k = 0; k <= N; ++k) CHECK(std::abs(miss.lhs[k]) < 1e-12);

    auto cst = poisson_check(d, v, LaurentPoly::constant(1, Cpx(0.7, -0.2)), N);
    CHECK(cst.pass);
    CHECK(std::abs(cst.rhs[0] - Cpx(0.7, -0.2)) < 1e-12);
}

TEST_CASE("hand-checked single-term field in rank one") {
    auto d = datum("A1*1");
    Cpx c(0.37, 0.11);
    VectorFieldSeries v = empty_field(1);
    v.add_term(0, {2}, {c});

    // constant test function: only eta in {0, -1} can contribute, and the
    // t^1 coefficient collapses to -4*pi*i*c from eta = -1
    size_t etas = 0;
    CSeries lhs = poisson_lhs(d, v, LaurentPoly::constant(1, 1.0), 1, &etas);
    CHECK(etas == 2);
    CHECK(std::abs(lhs[0] - 1.0) < 1e-12);
    Cpx expect = Cpx(0.0, -4.0 * 3.14159265358979323846) * c;
    CHECK(std::abs(lhs[1] - expect) < 1e-10);
    auto rep = poisson_check(d, v, LaurentPoly::constant(1, 1.0), 4);
    CHECK(rep.pass);

    // moving the test function to e^{-2} makes every order-1 term miss the
    // constant coefficient, so both sides vanish there
    auto rep2 = poisson_check(d, v, LaurentPoly::monomial({-2}, 1.0), 4);
    CHECK(rep2.pass);
    CHECK(std::abs(rep2.lhs[1]) < 1e-12);
    CHECK(std::abs(rep2.rhs[1]) < 1e-12);
}

TEST_CASE("zero test polynomial gives the zero series") {
    auto d = datum("A1*2");
    std::mt19937 rng(5);
    auto v = random_field(d, rng, 3, 0.5);
    auto rep = poisson_check(d, v, LaurentPoly(), 3);
    CHECK(rep.pass);
    CHECK(rep.eta_count == 0);
    CHECK(rep.max_deviation == 0.0);
    for (auto& z : rep.lhs) CHECK(z == Cpx(0.0));
    for (auto& z : rep.rhs) CHECK(z == Cpx(0.0));
}

TEST_CASE("random sparse pairs pass across small groups") {
    int idx = 0;
    for (const char* g : {"A1*1", "A1*2", "A1*3"}) {
        auto d = datum(g);
        for (int rep = 0; rep < 6; ++rep) {
            std::mt19937 rng(100 * ++idx + rep);
            auto v = random_field(d, rng, 3, 0.5);
            auto f = random_poly(d, rng, 3, 1.0);
            auto r = poisson_check(d, v, f, 4, 1e-8);
            CAPTURE(g);
            CAPTURE(rep);
            CHECK(r.pass);
        }
    }
    auto d = datum("A2*1");
    for (int rep = 0; rep < 4; ++rep) {
        std::mt19937 rng(9000 + rep);
        auto v = random_field(d, rng, 2, 0.4);
        auto f = random_poly(d, rng, 2, 1.0);
        auto r = poisson_check(d, v, f, 3, 1e-8);
        CAPTURE(rep);
        CHECK(r.pass);
    }
}

TEST_CASE("rank-two field supported on a root pair") {
    auto d = datum("A2*1");
    VectorFieldSeries v = empty_field(2);
    v.add_term(0, {2, -1}, {Cpx(0.3, 0.1), Cpx(-0.2, 0.0)});
    v.add_term(0, {-2, 1}, {Cpx(0.1, -0.25), Cpx(0.0, 0.15)});
    LaurentPoly f = LaurentPoly::monomial({1, 1}, 1.0);
    auto rep = poisson_check(d, v, f, 3, 1e-8);
    CHECK(rep.pass);
}

TEST_CASE("both sides are linear in the test polynomial") {
    auto d = datum("A1*2");
    std::mt19937 rng(41);
    auto v = random_field(d, rng, 3, 0.5);
    auto f1 = random_poly(d, rng, 3, 1.0);
    auto f2 = random_poly(d, rng, 3, 1.0);
    LaurentPoly sum = f1 + f2;
    int N = 3;
    CSeries l1 = poisson_lhs(d, v, f1, N), l2 = poisson_lhs(d, v, f2, N);
    CSeries ls = poisson_lhs(d, v, sum, N);
    CSeries r1 = poisson_rhs(d, v, f1, N), r2 = poisson_rhs(d, v, f2, N);
    CSeries rs = poisson_rhs(d, v, sum, N);
    for (int k = 0; k <= N; ++k) {
        CHECK(std::abs(ls[k] - l1[k] - l2[k]) < 1e-10);
        CHECK(std::abs(rs[k] - r1[k] - r2[k]) < 1e-10);
    }
}

TEST_CASE("lattice vectors beyond the candidate set contribute nothing") {
    auto d = datum("A1*2");
    std::mt19937 rng(77);
    auto v = random_field(d, rng, 2, 0.5);
    auto f = random_poly(d, rng, 2, 1.0);
    int N = 3;
    CSeries fast = poisson_lhs(d, v, f, N);
    // brute-force over a box much larger than the certified candidate set
    CSeries brute = series_zero(N);
    for (long long e = -8; e <= 8; ++e) {
        auto mult = eta_multiplier_series(d, v, {e}, N);
        for (int k = 0; k <= N; ++k) {
            Cpx acc = 0.0;
            for (const auto& [w, c] : mult[k].terms()) {
                WeightVec neg(w);
                for (auto& z : neg) z = -z;
                acc += c * f.coeff(neg);
            }
            brute[k] += acc;
        }
    }
    for (int k = 0; k <= N; ++k) CHECK(std::abs(fast[k] - brute[k]) < 1e-12);
}

TEST_CASE("thread count does not change any coefficient") {
    auto d = datum("A1*3");
    std::mt19937 rng(13);
    auto v = random_field(d, rng, 3, 0.5);
    auto f = random_poly(d, rng, 3, 1.0);
    int N = 4;
    CSeries lhs1 = poisson_lhs(d, v, f, N), rhs1 = poisson_rhs(d, v, f, N);
    setenv("LOOPIDX_THREADS", "4", 1);
    CSeries lhs4 = poisson_lhs(d, v, f, N), rhs4 = poisson_rhs(d, v, f, N);
    unsetenv("LOOPIDX_THREADS");
    for (int k = 0; k <= N; ++k) {
        CHECK(lhs1[k] == lhs4[k]);
        CHECK(rhs1[k] == rhs4[k]);
    }
}

TEST_CASE("order zero is the classical finite-group average") {
    auto d = datum("A1*2");
    std::mt19937 rng(63);
    auto v = random_field(d, rng, 3, 0.5);
    auto f = random_poly(d, rng, 3, 1.0);
    CSeries rhs = poisson_rhs(d, v, f, 2);

    auto els = tlevel::enumerate_tlevel(d);
    Cpx avg = 0.0;
    for (const auto& e : els) {
        auto jet = make_jet(e.xi, 0);
        avg += evaluate_at_jet(f, jet, 0)[0];
    }
    avg /= double(els.size());
    CHECK(std::abs(rhs[0] - avg) < 1e-12);

    CSeries lhs = poisson_lhs(d, v, f, 2);
    Cpx direct = 0.0;
    for (long long e = -8; e <= 8; ++e) {
        WeightVec w = mat_vec(d.gram, IntVec{e});
        for (auto& z : w) z = -z;
        direct += f.coeff(w);
    }
    CHECK(std::abs(lhs[0] - direct) < 1e-12);
}
