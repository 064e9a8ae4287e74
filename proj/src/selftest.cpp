#include "loopidx/selftest.hpp"

#include "loopidx/jsonio.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace loopidx::selftest {

using namespace rootsys;
using namespace charring;
using namespace jetcalc;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
const Cpx kI{0.0, 1.0};

RootDatum datum(const std::string& s) { return build_root_datum(LieSpec::parse(s)); }

} // namespace

VectorFieldSeries random_field(const RootDatum& d, std::mt19937_64& rng, int terms,
                               int max_order, long long weight_bound, double amplitude) {
    std::uniform_int_distribution<long long> coord(-weight_bound, weight_bound);
    std::uniform_int_distribution<int> ord(0, max_order);
    std::uniform_real_distribution<double> u(-amplitude, amplitude);
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

LaurentPoly random_poly(const RootDatum& d, std::mt19937_64& rng, int terms,
                        long long weight_bound, double amplitude) {
    std::uniform_int_distribution<long long> coord(-weight_bound, weight_bound);
    std::uniform_real_distribution<double> u(-amplitude, amplitude);
    LaurentPoly p;
    for (int t = 0; t < terms; ++t) {
        WeightVec w(d.rank);
        for (auto& x : w) x = coord(rng);
        p.add_term(w, Cpx(u(rng), u(rng)));
    }
    return p;
}

CoweightC field_value(const RootDatum& d, const VectorFieldSeries& v, int j,
                      const CoweightC& xi) {
    CoweightC out(d.rank, Cpx(0));
    if (j > v.order()) return out;
    for (const auto& [lam, vec] : v.orders[j]) {
        Cpx ph = std::exp(kI * kTwoPi * pairing(lam, xi));
        for (int i = 0; i < d.rank; ++i) out[i] += vec[i] * ph;
    }
    return out;
}

CoweightC field_derivative(const RootDatum& d, const VectorFieldSeries& v, int j,
                           const CoweightC& xi, const CoweightC& zeta) {
    CoweightC out(d.rank, Cpx(0));
    if (j > v.order()) return out;
    for (const auto& [lam, vec] : v.orders[j]) {
        Cpx ph = std::exp(kI * kTwoPi * pairing(lam, xi)) * kI * kTwoPi * pairing(lam, zeta);
        for (int i = 0; i < d.rank; ++i) out[i] += vec[i] * ph;
    }
    return out;
}

double order2_closed_form_deviation(const RootDatum& d, const VectorFieldSeries& v,
                                    const CoweightC& base) {
    TorusJet jet = solve_fixed_point(d, v, base, 2);
    CoweightC lv0 = ell_inverse(d, field_value(d, v, 0, base));
    CoweightC v1 = ell_inverse(d, field_value(d, v, 1, base));
    CoweightC dv = ell_inverse(d, field_derivative(d, v, 0, base, lv0));
    double dev = 0;
    for (int i = 0; i < d.rank; ++i) {
        dev = std::max(dev, std::abs(jet.plus[1][i] + lv0[i]));
        dev = std::max(dev, std::abs(jet.plus[2][i] + v1[i] - dv[i]));
    }
    return dev;
}

double jacobian_fd_relative_deviation(const RootDatum& d, const VectorFieldSeries& v,
                                      const TorusJet& jet, int N, double t) {
    // realize the series point xi(t) and the map xi -> xi + t ell^{-1} v_t(exp xi)
    CoweightC xi(d.rank, Cpx(0));
    for (int k = 0; k <= N; ++k) {
        double tp = std::pow(t, k);
        for (int i = 0; i < d.rank; ++i)
            xi[i] += tp * (k == 0 ? jet.base[i] : jet.plus[k][i]);
    }
    auto phi = [&](const CoweightC& x) {
        CoweightC out = x;
        for (int j = 0; j <= v.order(); ++j) {
            CoweightC val = ell_inverse(d, field_value(d, v, j, x));
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
        CoweightC fp = phi(xp), fm = phi(xm);
        for (int r = 0; r < d.rank; ++r) jac[r][c] = (fp[r] - fm[r]) / (2 * h);
    }
    // determinant by Gaussian elimination with partial pivoting
    Cpx num_det = 1.0;
    for (int c = 0; c < d.rank; ++c) {
        int piv = c;
        for (int r = c + 1; r < d.rank; ++r)
            if (std::abs(jac[r][c]) > std::abs(jac[piv][c])) piv = r;
        if (piv != c) {
            std::swap(jac[piv], jac[c]);
            num_det = -num_det;
        }
        num_det *= jac[c][c];
        for (int r = c + 1; r < d.rank; ++r) {
            Cpx f = jac[r][c] / jac[c][c];
            for (int cc = c; cc < d.rank; ++cc) jac[r][cc] -= f * jac[c][cc];
        }
    }
    CSeries det = flow_jacobian_det(d, v, jet, N);
    Cpx ser_det = 0.0;
    for (int k = 0; k <= N; ++k) ser_det += det[k] * std::pow(t, k);
    return std::abs(num_det - ser_det) / std::abs(ser_det);
}

WindowedMultiplicity poly_table(const LaurentPoly& p, int rank) {
    Window win;
    win.lo.assign(rank, 0);
    win.hi.assign(rank, 0);
    for (const auto& [w, c] : p.terms()) {
        (void)c;
        for (int i = 0; i < rank; ++i) {
            win.lo[i] = std::min(win.lo[i], w[i]);
            win.hi[i] = std::max(win.hi[i], w[i]);
        }
    }
    WindowedMultiplicity m;
    m.window = win;
    for (const auto& [w, c] : p.terms()) m.add(w, c);
    return m;
}

SelftestResult run_selftest(unsigned long seed, std::ostream& os) {
    SelftestResult res;
    std::mt19937_64 rng(seed);

    auto prop = [&](const std::string& name, auto&& fn) {
        ++res.checks;
        bool ok = false;
        std::string note;
        try {
            ok = fn();
        } catch (const std::exception& e) {
            note = e.what();
        }
        if (!ok) ++res.failures;
        os << (ok ? "[ok]   " : "[FAIL] ") << name;
        if (!ok && !note.empty()) os << "  (" << note << ")";
        os << "\n";
    };

    prop("root data: exact gram inverse and enumerated Weyl order", [&] {
        for (const char* g : {"A1*2", "A2*1", "A1*2+A1*3", "C2*1", "G2*1"}) {
            RootDatum d = datum(g);
            for (int i = 0; i < d.rank; ++i)
                for (int j = 0; j < d.rank; ++j) {
                    Rational s(0);
                    for (int k = 0; k < d.rank; ++k)
                        s += Rational(d.gram[i][k]) * d.gram_inv[k][j];
                    if (s != Rational(i == j ? 1 : 0)) return false;
                    if (d.gram[i][j] != d.gram[j][i]) return false;
                }
            if (weyl_elements(d).size() != d.weyl_order) return false;
        }
        return true;
    });

    prop("characters: division undoes the alternating sum, dimensions match", [&] {
        for (const char* g : {"A1*1", "A2*1"}) {
            RootDatum d = datum(g);
            auto wl = weyl_elements(d);
            std::uniform_int_distribution<long long> lc(0, 3);
            WeightVec lam(d.rank);
            for (auto& x : lam) x = lc(rng);
            auto chi = irreducible_character<Cpx>(d, wl, lam);
            WeightVec lr = lam;
            for (int i = 0; i < d.rank; ++i) lr[i] += 1;
            if (!(chi * weyl_denominator<Cpx>(d, wl) == weyl_antisymmetrize<Cpx>(wl, lr)))
                return false;
            // Weyl dimension through the coroot pairings
            Rational dim(1);
            for (const auto& av : d.positive_coroots)
                dim = dim * (pairing(lr, av) / pairing(d.rho, av));
            Cpx total = coefficient_sum(chi);
            if (std::abs(total - Cpx(dim.to_double())) > 1e-9) return false;
            auto table = dirac_induction(d, wl, poly_table(chi * weyl_denominator<Cpx>(d, wl), d.rank));
            if (table.size() != 1 || table.begin()->first != lam) return false;
            if (std::abs(table.begin()->second - 1.0) > 1e-12) return false;
        }
        return true;
    });

    prop("level subgroup: order, closure, and canonical forms", [&] {
        for (const char* g : {"A1*3", "A2*2"}) {
            RootDatum d = datum(g);
            auto els = tlevel::enumerate_tlevel(d);
            if ((long long)els.size() != tlevel::tlevel_order(d)) return false;
            std::uniform_int_distribution<size_t> pick(0, els.size() - 1);
            for (int t = 0; t < 8; ++t) {
                const auto& a = els[pick(rng)].xi;
                const auto& b = els[pick(rng)].xi;
                CoweightQ sum(d.rank);
                for (int i = 0; i < d.rank; ++i) sum[i] = a[i] + b[i];
                if (!tlevel::is_member(d, sum)) return false;
                CoweightQ canon = tlevel::canonicalize(d, sum).xi;
                if (tlevel::canonicalize(d, canon).xi != canon) return false;
            }
        }
        return true;
    });

    prop("flow: symbolic inverse composes to the identity", [&] {
        for (const char* g : {"A1*2", "A2*1"}) {
            RootDatum d = datum(g);
            auto v = random_field(d, rng, 3, 2, 2, 0.3);
            auto psi = invert_flow(d, v, 4);
            for (int pt = 0; pt < 3; ++pt) {
                TorusJet u0 = make_jet(random_base(d, rng), 4);
                TorusJet mid = apply_flow(d, psi, u0, 4, false);
                if (jet_distance(apply_flow(d, v, mid, 4, true), u0) > 1e-9) return false;
                TorusJet fwd = apply_flow(d, v, u0, 4, true);
                if (jet_distance(apply_flow(d, psi, fwd, 4, false), u0) > 1e-9) return false;
            }
        }
        return true;
    });

    prop("fixed points: first two solved orders match the closed form", [&] {
        for (const char* g : {"A1*1", "A2*2"}) {
            RootDatum d = datum(g);
            auto v = random_field(d, rng, 4, 2, 2, 0.5);
            if (order2_closed_form_deviation(d, v, random_base(d, rng)) > 1e-10)
                return false;
        }
        return true;
    });

    prop("jacobian: unit constant term and finite-difference agreement", [&] {
        RootDatum d = datum("A2*1");
        auto v = random_field(d, rng, 4, 2, 2, 0.5);
        TorusJet jet = solve_fixed_point(d, v, random_base(d, rng), 5);
        CSeries det = flow_jacobian_det(d, v, jet, 5);
        if (std::abs(det[0] - 1.0) > 1e-12) return false;
        return jacobian_fd_relative_deviation(d, v, jet, 5, 1e-3) < 1e-5;
    });

    prop("lattice summation: direct and fixed-point sides agree", [&] {
        for (const char* g : {"A1*2", "A2*1"}) {
            RootDatum d = datum(g);
            auto v = random_field(d, rng, 2, 1, 2, 0.4);
            auto f = random_poly(d, rng, 2, 2, 0.5);
            if (!poisson::poisson_check(d, v, f, 3, 1e-8).pass) return false;
        }
        return true;
    });

    prop("assembly: antisymmetric, twist-invariant, and tamper-evident", [&] {
        RootDatum d = datum("A1*2");
        auto wl = weyl_elements(d);
        auto v = symmetrize_field(d, wl, random_field(d, rng, 2, 1, 2, 0.3));
        std::vector<std::pair<CoweightQ, locindex::IntegrandDatum>> data{
            {{Rational(1, 4)}, locindex::constant_datum(1, 1.0)}};
        auto dist = locindex::assemble_fixed_point_index(d, data, v, 4,
                                                         locindex::AssemblyMode::T);
        if (locindex::weyl_antisymmetry_deviation(d, wl, dist) > 1e-9) return false;
        if (!locindex::check_twisted_invariance(d, dist, v, {1}, 4).pass) return false;
        auto broken = dist;
        broken.atoms[0].jet.base[0] += 0.05;
        return !locindex::check_twisted_invariance(d, broken, v, {1}, 4).pass;
    });

    prop("toy model: direct enumeration equals the pipeline", [&] {
        RootDatum d = datum("A1*2");
        std::uniform_int_distribution<long long> lc(0, 2);
        WeightVec lam{lc(rng)};
        Window win = Window::cube(1, 8);
        auto a = models::coadjoint_toy_index(d, lam, win);
        auto b = models::coadjoint_toy_index_by_contributions(d, lam, win);
        return max_abs_diff(a, b) == 0.0;
    });

    prop("verlinde: both routes hit the closed-form count", [&] {
        std::uniform_int_distribution<int> kk(0, 6), hh(1, 3);
        int k = kk(rng), h = hh(rng);
        auto p = models::make_verlinde_params("A1", k, h);
        Cpx direct = models::verlinde_fixed_point(p);
        Cpx assembled = models::verlinde_assembled(p);
        double oracle = models::verlinde_trig_oracle(p);
        return std::abs(direct - assembled) < 1e-8 && std::abs(direct - oracle) < 1e-6 &&
               direct.real() > 0.5;
    });

    prop("wire formats: emitted values re-parse verbatim", [&] {
        RootDatum d = datum("A1*2");
        auto v = random_field(d, rng, 3, 2, 2, 0.5);
        auto back = jsonio::json_field(jsonio::json::parse(jsonio::field_json(v).dump()));
        if (!(back.rank == v.rank && back.orders == v.orders)) return false;
        auto f = random_poly(d, rng, 3, 3, 1.0);
        return jsonio::json_laurent(jsonio::json::parse(jsonio::laurent_json(f).dump())) == f;
    });

    return res;
}

} // namespace loopidx::selftest
