#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "loopidx/rootsys.hpp"

#include <random>

using namespace loopidx;
using namespace loopidx::rootsys;

namespace {

RootDatum datum(const std::string& s) { return build_root_datum(LieSpec::parse(s)); }

// Independent Gram oracle for type A: realize the coroots of su(n) as
// e_i - e_{i+1} in Z^n and take plain dot products (this is the trace form
// normalized so coroots have squared length 2).
IntMat su_gram_oracle(int n) {
    IntMat g(n - 1, IntVec(n - 1, 0));
    for (int i = 0; i < n - 1; ++i)
        for (int j = 0; j < n - 1; ++j) {
            IntVec a(n, 0), b(n, 0);
            a[i] = 1; a[i + 1] = -1;
            b[j] = 1; b[j + 1] = -1;
            for (int k = 0; k < n; ++k) g[i][j] += a[k] * b[k];
        }
    return g;
}

unsigned long long factorial(int n) {
    unsigned long long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

} // namespace

TEST_CASE("group spec parsing round-trips") {
    auto s = LieSpec::parse("A1*2+A1*3");
    CHECK(s.factors.size() == 2);
    CHECK(s.factors[0].level == 2);
    CHECK(s.factors[1].level == 3);
    CHECK(s.str() == "A1*2+A1*3");
    CHECK(LieSpec::parse("G2").factors[0].level == 1);
    CHECK(LieSpec::parse("c2*4").factors[0].series == 'C');
    CHECK_THROWS(LieSpec::parse(""));
    CHECK_THROWS(LieSpec::parse("A1*0"));
    CHECK_THROWS(datum("H3"));
    CHECK_THROWS(datum("D3"));
}

TEST_CASE("type-A Gram matrices match the trace-form oracle") {
    for (int n = 2; n <= 5; ++n) {
        auto d = datum("A" + std::to_string(n - 1) + "*1");
        CHECK(d.gram == su_gram_oracle(n));
        CHECK(d.gram == d.gram_basic);
    }
}

TEST_CASE("level scaling of the Gram matrix") {
    CHECK(datum("A1*1").gram == IntMat{{2}});
    CHECK(datum("A1*2+A1*3").gram == IntMat{{4, 0}, {0, 6}});
    auto d = datum("A2*3");
    CHECK(d.gram == IntMat{{6, -3}, {-3, 6}});
    CHECK(d.gram_basic == IntMat{{2, -1}, {-1, 2}});
}

TEST_CASE("non-simply-laced tables: C2 and G2") {
    auto c2 = datum("C2*1");
    CHECK(c2.cartan == IntMat{{2, -2}, {-1, 2}});
    CHECK(c2.gram == IntMat{{4, -2}, {-2, 2}});
    CHECK(c2.positive_roots.size() == 4);
    CHECK(c2.weyl_order == 8);
    CHECK(c2.dual_coxeter[0] == 3);

    auto g2 = datum("G2*1");
    CHECK(g2.cartan == IntMat{{2, -3}, {-1, 2}});
    CHECK(g2.gram == IntMat{{6, -3}, {-3, 2}});
    CHECK(g2.positive_roots.size() == 6);
    CHECK(g2.weyl_order == 12);
    CHECK(g2.dual_coxeter[0] == 4);
}

TEST_CASE("Weyl group enumeration matches the factorial oracle") {
    for (int n = 1; n <= 4; ++n) {
        auto d = datum("A" + std::to_string(n) + "*1");
        auto w = weyl_elements(d);
        CHECK(w.size() == factorial(n + 2 - 1));
        CHECK(d.weyl_order == factorial(n + 1));
        // identity first, unique longest element of length = #positive roots
        CHECK(w[0].length == 0);
        int longest = 0, count_longest = 0;
        for (auto& e : w) {
            longest = std::max(longest, e.length);
            }
        for (auto& e : w) count_longest += (e.length == longest);
        CHECK(longest == (int)d.positive_roots.size());
        CHECK(count_longest == 1);
    }
    CHECK(weyl_elements(datum("C2*1")).size() == 8);
    CHECK(weyl_elements(datum("G2*1")).size() == 12);
    CHECK(weyl_elements(datum("A1*1+A2*1")).size() == 12);
    CHECK_THROWS_AS((void)weyl_elements(datum("A2*1"), 3), std::length_error);
}

TEST_CASE("simple reflections satisfy the defining relations") {
    for (auto name : {"A2*1", "C2*1", "G2*1", "A3*2"}) {
        auto d = datum(name);
        for (int i = 0; i < d.rank; ++i) {
            auto s = simple_reflection(d, i);
            auto alpha = simple_root(d, i);
            WeightVec neg(alpha);
            for (auto& c : neg) c = -c;
            CHECK(act_on_weight(s, alpha) == neg);        // s_i(alpha_i) = -alpha_i
            CHECK(mat_mul(s.on_weights, s.on_weights) == identity_mat(d.rank));
            // s_i(rho) = rho - alpha_i
            WeightVec sr = act_on_weight(s, d.rho);
            for (int k = 0; k < d.rank; ++k) CHECK(sr[k] == d.rho[k] - alpha[k]);
        }
    }
}

TEST_CASE("pairing is Weyl-invariant and the Gram form is preserved") {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<long long> coord(-5, 5);
    for (auto name : {"A2*1", "C2*2", "G2*1", "A1*2+A1*3"}) {
        auto d = datum(name);
        auto wl = weyl_elements(d);
        for (int trial = 0; trial < 20; ++trial) {
            WeightVec lam(d.rank);
            CoweightQ xi(d.rank);
            for (int i = 0; i < d.rank; ++i) {
                lam[i] = coord(rng);
                xi[i] = Rational(coord(rng), 3);
            }
            const auto& w = wl[trial % wl.size()];
            CHECK(pairing(act_on_weight(w, lam), act_on_coweight(w, xi)) == pairing(lam, xi));
            auto wxi = act_on_coweight(w, xi);
            CHECK(inner_product(d, wxi, wxi) == inner_product(d, xi, xi));
        }
        for (const auto& w : wl) {
            CHECK(mat_mul(transpose(w.on_coweights), mat_mul(d.gram, w.on_coweights)) == d.gram);
        }
    }
}

TEST_CASE("coroots of positive roots") {
    auto d = datum("C2*1");
    // simple coroots are unit vectors in coroot coordinates
    int found = 0;
    for (size_t b = 0; b < d.positive_roots.size(); ++b) {
        if (d.positive_roots[b] == simple_root(d, 0)) {
            CHECK(d.positive_coroots[b] == CoweightQ{Rational(1), Rational(0)});
            ++found;
        }
        if (d.positive_roots[b] == simple_root(d, 1)) {
            CHECK(d.positive_coroots[b] == CoweightQ{Rational(0), Rational(1)});
            ++found;
        }
        // <beta, beta^vee> = 2 for every root
        CHECK(pairing(d.positive_roots[b], d.positive_coroots[b]) == Rational(2));
        // <rho, beta^vee> = 1 exactly for simple roots
    }
    CHECK(found == 2);
}

TEST_CASE("dual Coxeter number equals 1 + <rho, highest coroot>") {
    for (auto name : {"A1*1", "A2*1", "A3*1", "A4*1", "C2*1", "G2*1"}) {
        auto d = datum(name);
        RatMat cinv = rat_inverse(to_rational(d.cartan));
        Rational best_h(-1);
        size_t best = 0;
        for (size_t b = 0; b < d.positive_roots.size(); ++b) {
            RatVec e = rat_mat_vec(cinv, RatVec(d.positive_roots[b].begin(),
                                                d.positive_roots[b].end()));
            Rational h(0);
            for (auto& c : e) h += c;
            if (h > best_h) { best_h = h; best = b; }
        }
        Rational hv = Rational(1) + pairing(d.rho, d.positive_coroots[best]);
        CHECK(hv == Rational(d.dual_coxeter[0]));
    }
}

TEST_CASE("weight/coweight conversion under the scaled form") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long long> coord(-4, 4);
    for (auto name : {"A1*3", "A2*2", "C2*1", "A1*2+A1*3"}) {
        auto d = datum(name);
        for (int trial = 0; trial < 10; ++trial) {
            IntVec eta(d.rank);
            for (auto& c : eta) c = coord(rng);
            WeightVec w = weight_of_coweight(d, eta);
            // the defining identity <weight(eta), xi> = (eta, xi)_scaled
            CoweightQ xi(d.rank);
            for (auto& c : xi) c = Rational(coord(rng), 2);
            CoweightQ etaq(eta.begin(), eta.end());
            CHECK(pairing(w, xi) == inner_product(d, etaq, xi));
            // and the inverse map takes it back
            CHECK(coweight_of_weight(d, w) == etaq);
        }
    }
}

TEST_CASE("Weyl dimension formula on known representations") {
    auto a1 = datum("A1*1");
    for (long long k = 0; k <= 6; ++k)
        CHECK(weyl_dimension(a1, {k}) == Rational(k + 1));
    auto a2 = datum("A2*1");
    CHECK(weyl_dimension(a2, {1, 0}) == Rational(3));
    CHECK(weyl_dimension(a2, {1, 1}) == Rational(8));
    CHECK(weyl_dimension(a2, {3, 0}) == Rational(10));
    auto a3 = datum("A3*1");
    CHECK(weyl_dimension(a3, {1, 0, 0}) == Rational(4));
    CHECK(weyl_dimension(a3, {0, 1, 0}) == Rational(6));
    CHECK(weyl_dimension(a3, {1, 0, 1}) == Rational(15));
    auto c2 = datum("C2*1");
    CHECK(weyl_dimension(c2, {1, 0}) == Rational(4));
    CHECK(weyl_dimension(c2, {0, 1}) == Rational(5));
    auto g2 = datum("G2*1");
    CHECK(weyl_dimension(g2, {1, 0}) == Rational(7));
    CHECK(weyl_dimension(g2, {0, 1}) == Rational(14));
}

TEST_CASE("rational arithmetic basics") {
    CHECK(Rational(6, -4) == Rational(-3, 2));
    CHECK(Rational(-7, 3).floor() == -3);
    CHECK(Rational(-7, 3).frac() == Rational(2, 3));
    CHECK(Rational::parse("-0.25") == Rational(-1, 4));
    CHECK(Rational::parse("3/6") == Rational(1, 2));
    CHECK(Rational::parse("7") == Rational(7));
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    GaussianRational i(Rational(0), Rational(1));
    CHECK((i * i) == GaussianRational(Rational(-1)));
    CHECK((GaussianRational(Rational(1)) / i) == GaussianRational(Rational(0), Rational(-1)));
}

TEST_CASE("smith form diagonalizes with unimodular transforms") {
    IntMat b{{4, -2}, {-2, 2}};
    auto f = smith_normal_form(b);
    CHECK(mat_mul(f.u, mat_mul(b, f.v)) == f.s);
    long long prod = 1;
    for (size_t i = 0; i < f.s.size(); ++i) {
        prod *= f.s[i][i];
        for (size_t j = 0; j < f.s.size(); ++j)
            if (i != j) CHECK(f.s[i][j] == 0);
    }
    CHECK(prod == int_det(b));
    CHECK(std::abs(int_det(f.u)) == 1);
    CHECK(std::abs(int_det(f.v)) == 1);
}
