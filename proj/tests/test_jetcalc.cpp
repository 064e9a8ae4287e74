#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "loopidx/jetcalc.hpp"

#include <random>

using namespace loopidx;
using namespace loopidx::jetcalc;
using namespace loopidx::rootsys;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
const Cpx kI{0.0, 1.0};

RootDatum datum(const std::string& s) { return build_root_datum(LieSpec::parse(s)); }

VectorFieldSeries random_field(const RootDatum& d, std::mt19937_64& rng, int terms,
                               int max_order, long long bound, double amp = 1.0) {
    std::uniform_int_distribution<long long> coord(-bound, bound);
    std::uniform_int_distribution<int> ord(0, max_order);
    std::uniform_real_distribution<double> u(-amp, amp);
    VectorFieldSeries v;
    v.rank = d.rank;
    v.orders.resize(max_order + 1);
    for (int t = 0; t < terms; ++t) {
        WeightVec w(d.rank);
        for (auto& x : w) x = coord(rng);
        CoweightC vec(d.rank);
        for (auto& x : vec) x = Cpx(u(rng), u(rng));
        v.add_term(ord(rng), w, vec);
    }
    return v;
}

CoweightC random_base(const RootDatum& d, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    CoweightC b(d.rank);
    for (auto& x : b) x = u(rng);
    return b;
}

// direct pointwise value of v_j at exp(xi)
CoweightC field_value(const RootDatum& d, const VectorFieldSeries& v, int j,
                      const CoweightC& xi) {
    CoweightC out(d.rank, Cpx(0));
    if (j > v.order()) return out;
    for (auto& [lam, vec] : v.orders[j]) {
        Cpx ph = std::exp(kI * kTwoPi * pairing(lam, xi));
        for (int i = 0; i < d.rank; ++i) out[i] += vec[i] * ph;
    }
    return out;
}

// directional derivative of v_j along zeta at exp(xi)
CoweightC field_derivative(const RootDatum& d, const VectorFieldSeries& v, int j,
                           const CoweightC& xi, const CoweightC& zeta) {
    CoweightC out(d.rank, Cpx(0));
    if (j > v.order()) return out;
    for (auto& [lam, vec] : v.orders[j]) {
        Cpx ph = std::exp(kI * kTwoPi * pairing(lam, xi)) * kI * kTwoPi * pairing(lam, zeta);
        for (int i = 0; i < d.rank; ++i) out[i] += vec[i] * ph;
    }
    return out;
}

} // namespace

TEST_CASE("series primitives") {
    int N = 6;
    CSeries x = series_zero(N);
    x[1] = Cpx(0.3, -0.2);
    x[2] = Cpx(-0.1, 0.05);
    auto e = series_exp(x, N);
    CSeries nx = x;
    for (auto& c : nx) c = -c;
    auto prod = series_mul(e, series_exp(nx, N), N);
    CHECK(std::abs(prod[0] - 1.0) < 1e-12);
    for (int i = 1; i <= N; ++i) CHECK(std::abs(prod[i]) < 1e-12);

    CSeries a = series_const(2.0, N);
    a[1] = 0.7;
    a[3] = Cpx(0, -0.4);
    auto inv = series_inverse(a, N);
    auto one = series_mul(a, inv, N);
    CHECK(std::abs(one[0] - 1.0) < 1e-12);
    for (int i = 1; i <= N; ++i) CHECK(std::abs(one[i]) < 1e-12);

    auto p3 = series_pow(a, 3, N);
    auto p3m = series_mul(a, series_mul(a, a, N), N);
    for (int i = 0; i <= N; ++i) CHECK(std::abs(p3[i] - p3m[i]) < 1e-12);
    auto pm2 = series_pow(a, -2, N);
    auto pm2m = series_mul(inv, inv, N);
    for (int i = 0; i <= N; ++i) CHECK(std::abs(pm2[i] - pm2m[i]) < 1e-12);
}

TEST_CASE("series determinant against cofactor expansion") {
    int N = 4;
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    auto rnd = [&] {
        CSeries s(N + 1);
        for (auto& c : s) c = Cpx(u(rng), u(rng));
        return s;
    };
    std::vector<std::vector<CSeries>> m(2, std::vector<CSeries>(2));
    for (auto& row : m)
        for (auto& e : row) e = rnd();
    auto det = series_det(m, N);
    auto ref = series_add(series_mul(m[0][0], m[1][1], N),
                          [&] {
                              auto s = series_mul(m[0][1], m[1][0], N);
                              for (auto& c : s) c = -c;
                              return s;
                          }());
    for (int i = 0; i <= N; ++i) CHECK(std::abs(det[i] - ref[i]) < 1e-12);

    std::vector<std::vector<CSeries>> m3(3, std::vector<CSeries>(3));
    for (auto& row : m3)
        for (auto& e : row) e = rnd();
    auto det3 = series_det(m3, N);
    // Laplace expansion along the first row
    auto minor_det = [&](int col) {
        std::vector<std::vector<CSeries>> sub(2, std::vector<CSeries>(2));
        for (int i = 1; i < 3; ++i) {
            int cc = 0;
            for (int j = 0; j < 3; ++j) {
                if (j == col) continue;
                sub[i - 1][cc++] = m3[i][j];
            }
        }
        return series_det(sub, N);
    };
    CSeries ref3 = series_zero(N);
    for (int col = 0; col < 3; ++col) {
        auto t = series_mul(m3[0][col], minor_det(col), N);
        for (int i = 0; i <= N; ++i) ref3[i] += (col % 2 ? -1.0 : 1.0) * t[i];
    }
    for (int i = 0; i <= N; ++i) CHECK(std::abs(det3[i] - ref3[i]) < 1e-12);
}

TEST_CASE("field evaluation matches the pointwise oracle at order zero") {
    auto d = datum("A2*2");
    std::mt19937_64 rng(8);
    auto v = random_field(d, rng, 6, 2, 2);
    auto base = random_base(d, rng);
    auto jet = make_jet(base, 4);
    auto e = evaluate_field_at_jet(d, v, jet, 4);
    // with a constant jet the order-j value is just v_j at the base point
    for (int j = 0; j <= 2; ++j) {
        auto want = field_value(d, v, j, base);
        for (int i = 0; i < d.rank; ++i) CHECK(std::abs(e[j][i] - want[i]) < 1e-12);
    }
}

TEST_CASE("fixed-point solver: closed form of the first two orders") {
    std::mt19937_64 rng(123);
    for (auto name : {"A1*1", "A1*3", "A2*2", "A1*2+A1*3"}) {
        auto d = datum(name);
        for (int trial = 0; trial < 8; ++trial) {
            auto v = random_field(d, rng, 5, 3, 2);
            auto g = random_base(d, rng);
            auto jet = solve_fixed_point(d, v, g, 4);
            for (int i = 0; i < d.rank; ++i) CHECK(std::abs(jet.plus[0][i]) == 0.0);

            auto v0 = field_value(d, v, 0, g);
            auto v1 = field_value(d, v, 1, g);
            auto lv0 = ell_inverse(d, v0);
            auto dv = field_derivative(d, v, 0, g, lv0);
            for (int i = 0; i < d.rank; ++i) {
                // order 1: -ell^{-1} v_0(g)
                CHECK(std::abs(jet.plus[1][i] + lv0[i]) < 1e-10);
                // order 2: -(ell^{-1} v_1(g) - ell^{-1} d_{ell^{-1}v_0(g)} v_0(g))
                Cpx want = -(ell_inverse(d, v1)[i] - ell_inverse(d, dv)[i]);
                CHECK(std::abs(jet.plus[2][i] - want) < 1e-10);
            }
        }
    }
}

TEST_CASE("solver functoriality under the Weyl group for invariant fields") {
    auto d = datum("A2*1");
    auto wl = weyl_elements(d);
    std::mt19937_64 rng(55);
    auto v = symmetrize_field(d, wl, random_field(d, rng, 3, 1, 2, 0.3));
    auto g = random_base(d, rng);
    auto jet = solve_fixed_point(d, v, g, 5);
    for (auto& w : wl) {
        auto moved = solve_fixed_point(d, v, act_on_coweight(w, g), 5);
        CHECK(jet_distance(moved, act_on_jet(w, jet)) < 1e-9);
    }
}

TEST_CASE("jacobian determinant starts at one and matches finite differences") {
    auto d = datum("A2*1");
    std::mt19937_64 rng(77);
    auto v = random_field(d, rng, 5, 2, 2, 0.6);
    auto g = random_base(d, rng);
    int N = 5;
    auto jet = solve_fixed_point(d, v, g, N);
    auto det = flow_jacobian_det(d, v, jet, N);
    CHECK(std::abs(det[0] - 1.0) < 1e-12);

    // numeric Jacobian of xi -> xi + t ell^{-1} v_t(exp xi) at the series point
    for (double t : {1e-3, 1e-4}) {
        CoweightC xi(d.rank, Cpx(0));
        for (int k = 0; k <= N; ++k) {
            double tp = std::pow(t, k);
            for (int i = 0; i < d.rank; ++i)
                xi[i] += tp * (k == 0 ? jet.base[i] : jet.plus[k][i]);
        }
        auto phi = [&](const CoweightC& x) {
            CoweightC out = x;
            for (int j = 0; j <= v.order(); ++j) {
                auto val = ell_inverse(d, field_value(d, v, j, x));
                double tp = std::pow(t, j + 1);
                for (int i = 0; i < d.rank; ++i) out[i] += tp * val[i];
            }
            return out;
        };
        double h = 1e-6;
        std::vector<std::vector<Cpx>> jac(d.rank, std::vector<Cpx>(d.rank));
        for (int c = 0; c < d.rank; ++c) {
            CoweightC xp = xi, xm = xi;
            xp[c] += h;
            xm[c] -= h;
            auto fp = phi(xp), fm = phi(xm);
            for (int r = 0; r < d.rank; ++r) jac[r][c] = (fp[r] - fm[r]) / (2 * h);
        }
        Cpx num_det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        Cpx ser_det = 0;
        for (int k = 0; k <= N; ++k) ser_det += det[k] * std::pow(t, k);
        CHECK(std::abs(num_det - ser_det) / std::abs(ser_det) < 1e-5);
    }
}

TEST_CASE("symbolic inverse starts at minus the scaled field") {
    auto d = datum("A1*2");
    VectorFieldSeries v;
    v.rank = 1;
    v.add_term(0, {2}, {Cpx(0.5, 0.25)});
    v.add_term(0, {-1}, {Cpx(-0.125, 0)});
    v.add_term(1, {1}, {Cpx(0, 0.3)});
    auto psi = invert_flow(d, v, 3);
    CHECK(psi.orders[0].size() == 2);
    CHECK(std::abs(psi.orders[0].at(WeightVec{2})[0] - Cpx(-0.25, -0.125)) < 1e-12);
    CHECK(std::abs(psi.orders[0].at(WeightVec{-1})[0] - Cpx(0.0625, 0)) < 1e-12);
}

TEST_CASE("flow composition is the identity in both orders") {
    std::mt19937_64 rng(99);
    int N = 5;
    for (auto name : {"A1*1", "A1*2", "A2*1"}) {
        auto d = datum(name);
        for (int trial = 0; trial < 5; ++trial) {
            auto v = random_field(d, rng, 4, 2, 2, 0.3);
            auto psi = invert_flow(d, v, N);
            for (int pt = 0; pt < 4; ++pt) {
                auto u0 = make_jet(random_base(d, rng), N);
                // Phi after Psi
                auto mid = apply_flow(d, psi, u0, N, false);
                auto back = apply_flow(d, v, mid, N, true);
                CHECK(jet_distance(back, u0) < 1e-9);
                // Psi after Phi
                auto fwd = apply_flow(d, v, u0, N, true);
                auto inv = apply_flow(d, psi, fwd, N, false);
                CHECK(jet_distance(inv, u0) < 1e-9);
            }
        }
    }
}

TEST_CASE("order caps are enforced") {
    auto d = datum("A1*1");
    VectorFieldSeries v;
    v.rank = 1;
    v.add_term(0, {1}, {Cpx(1, 0)});
    CHECK_THROWS_AS((void)solve_fixed_point(d, v, CoweightQ{Rational(1, 3)}, 13),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)invert_flow(d, v, 42), std::invalid_argument);
}
