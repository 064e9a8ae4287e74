#include "loopidx/locindex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>
#include <stdexcept>

namespace loopidx::locindex {

using charring::GradedLexLess;
using jetcalc::Cpx;
using tlevel::TLevelElement;

namespace {

Rational window_min_pairing(const Window& win, const CoweightQ& beta) {
    Rational m(0);
    for (size_t i = 0; i < beta.size(); ++i)
        m += beta[i] * Rational(beta[i] < Rational(0) ? win.hi[i] : win.lo[i]);
    return m;
}

CSeries scaled(CSeries s, Cpx c) {
    for (auto& z : s) z *= c;
    return s;
}

CoweightQ frac_coords(CoweightQ x) {
    for (auto& c : x) c = c.frac();
    return x;
}

VectorFieldSeries act_on_field(const WeylElement& w, const VectorFieldSeries& v) {
    VectorFieldSeries out;
    out.rank = v.rank;
    for (int j = 0; j < (int)v.orders.size(); ++j)
        for (const auto& [lam, vec] : v.orders[j])
            out.add_term(j, rootsys::act_on_weight(w, lam),
                         rootsys::act_on_coweight<Cpx>(w, vec));
    return out;
}

} // namespace

Rational support_bound(const FixedPointContribution& c) {
    Rational bound = rootsys::pairing(c.mu0, c.beta);
    for (const auto& alpha : c.normal_weights) {
        Rational p = rootsys::pairing(alpha, c.beta);
        if (p < Rational(0)) bound += p; // mandatory first step of a flipped factor
    }
    bool first = true;
    Rational best(0);
    for (const auto& [lam, coef] : c.e_weights.terms()) {
        (void)coef;
        Rational p = rootsys::pairing(lam, c.beta);
        if (first || best < p) best = p;
        first = false;
    }
    if (!first) bound += best;
    return bound;
}

bool support_meets_window(const FixedPointContribution& c, const Window& win) {
    if (c.e_weights.empty()) return false;
    if (c.normal_weights.empty()) {
        // pure point support: exact per-coordinate box test
        for (const auto& [lam, coef] : c.e_weights.terms()) {
            (void)coef;
            WeightVec mu(c.mu0);
            for (size_t i = 0; i < mu.size(); ++i) mu[i] += lam[i];
            if (win.contains(mu)) return true;
        }
        return false;
    }
    // cone support, bounded above along beta
    return !(support_bound(c) < window_min_pairing(win, c.beta));
}

WindowedMultiplicity nonabelian_contribution(const RootDatum& d, const FixedPointContribution& c,
                                             const Window& win) {
    (void)d;
    int flips = 0;
    std::vector<Rational> pairings;
    pairings.reserve(c.normal_weights.size());
    for (const auto& alpha : c.normal_weights) {
        Rational p = rootsys::pairing(alpha, c.beta);
        if (p.is_zero())
            throw std::domain_error("normal weight is not polarized by the localization point");
        if (p < Rational(0)) ++flips;
        pairings.push_back(p);
    }
    Cpx total_sign = Cpx(c.sign * (flips % 2 ? -1 : 1), 0.0);

    Rational wmin = window_min_pairing(win, c.beta);
    using TermMap = std::map<WeightVec, Cpx, GradedLexLess>;
    TermMap cur;
    for (const auto& [lam, coef] : c.e_weights.terms()) {
        WeightVec mu(c.mu0);
        for (size_t i = 0; i < mu.size(); ++i) mu[i] += lam[i];
        if (rootsys::pairing(mu, c.beta) < wmin) continue; // later steps only decrease
        cur[mu] += total_sign * coef;
    }

    for (size_t j = 0; j < c.normal_weights.size(); ++j) {
        const WeightVec& alpha = c.normal_weights[j];
        bool positive = Rational(0) < pairings[j];
        WeightVec step(alpha);
        if (positive)
            for (auto& x : step) x = -x;
        Rational sp = positive ? -pairings[j] : pairings[j]; // strictly negative
        int n0 = positive ? 0 : 1;
        TermMap next;
        for (const auto& [mu, coef] : cur) {
            WeightVec w(mu);
            Rational pr = rootsys::pairing(mu, c.beta);
            for (int n = 0; n < n0; ++n) {
                for (size_t i = 0; i < w.size(); ++i) w[i] += step[i];
                pr += sp;
            }
            while (!(pr < wmin)) {
                next[w] += coef;
                for (size_t i = 0; i < w.size(); ++i) w[i] += step[i];
                pr += sp;
            }
        }
        cur.swap(next);
    }

    WindowedMultiplicity out;
    out.window = win;
    Rational cb = support_bound(c);
    for (const auto& [mu, coef] : cur) {
        if (cb < rootsys::pairing(mu, c.beta))
            throw std::logic_error("expansion escaped its certified half-space");
        if (win.contains(mu)) out.add(mu, coef);
    }
    return out;
}

WindowedMultiplicity nonabelian_sum(const RootDatum& d,
                                    const std::vector<FixedPointContribution>& cs,
                                    const Window& win, size_t* skipped) {
    WindowedMultiplicity out;
    out.window = win;
    size_t miss = 0;
    for (const auto& c : cs) {
        if (!support_meets_window(c, win)) {
            ++miss;
            continue;
        }
        WindowedMultiplicity part = nonabelian_contribution(d, c, win);
        for (const auto& [w, v] : part.values) out.add(w, v);
    }
    if (skipped) *skipped = miss;
    return out;
}

std::vector<FixedPointContribution> expand_lattice_translates(const RootDatum& d,
                                                              const FixedPointContribution& base,
                                                              const Window& win,
                                                              long long shell_cap) {
    if (!base.normal_weights.empty())
        throw std::invalid_argument(
            "translated family with normal weights is not admissible: its cone "
            "support re-enters arbitrarily large windows");
    if ((int)base.beta.size() != d.rank || (int)base.mu0.size() != d.rank)
        throw std::invalid_argument("contribution rank mismatch");

    // |eta|_inf <= ||gram_inv||_inf * |gram*eta|_inf, and a translate meeting
    // the window forces every coordinate of gram*eta into a bounded interval.
    Rational norm(0);
    for (int i = 0; i < d.rank; ++i) {
        Rational row(0);
        for (int j = 0; j < d.rank; ++j)
            row += d.gram_inv[i][j] < Rational(0) ? -d.gram_inv[i][j] : d.gram_inv[i][j];
        if (norm < row) norm = row;
    }
    long long coord_bound = 0;
    for (int i = 0; i < d.rank; ++i) {
        long long m = std::max(std::llabs(win.lo[i]), std::llabs(win.hi[i])) +
                      std::llabs(base.mu0[i]);
        long long lam_max = 0;
        for (const auto& [lam, coef] : base.e_weights.terms()) {
            (void)coef;
            lam_max = std::max(lam_max, std::llabs(lam[i]));
        }
        coord_bound = std::max(coord_bound, m + lam_max);
    }
    Rational r_stop_q = norm * Rational(coord_bound);
    long long r_stop = r_stop_q.floor() + 1;
    if (r_stop > shell_cap)
        throw std::length_error("translate enumeration radius exceeds the cap");

    std::vector<FixedPointContribution> out;
    IntVec eta(d.rank, -r_stop);
    for (;;) {
        FixedPointContribution t = base;
        IntVec shift = mat_vec(d.gram, eta);
        for (int i = 0; i < d.rank; ++i) {
            t.mu0[i] += shift[i];
            t.beta[i] += Rational(eta[i]);
        }
        if (support_meets_window(t, win)) out.push_back(std::move(t));
        int pos = 0;
        while (pos < d.rank) {
            if (++eta[pos] <= r_stop) break;
            eta[pos] = -r_stop;
            ++pos;
        }
        if (pos >= d.rank) break;
    }
    return out;
}

IntegrandDatum constant_datum(int rank, Cpx value) {
    IntegrandDatum I;
    I.numerator = LaurentPoly::constant(rank, value);
    return I;
}

CSeries integrand_eval(const IntegrandDatum& I, const TorusJet& jet, int N) {
    jetcalc::check_order(N);
    int rank = (int)jet.base.size();
    CSeries num = charring::evaluate_at_jet(I.numerator, jet, N);
    CSeries den = jetcalc::series_const(1.0, N);
    for (const auto& [alpha, mult] : I.denominator_factors) {
        LaurentPoly p = LaurentPoly::constant(rank, 1.0);
        WeightVec neg(alpha);
        for (auto& x : neg) x = -x;
        p.add_term(neg, Cpx(-1.0, 0.0));
        CSeries s = charring::evaluate_at_jet(p, jet, N);
        if (std::abs(s[0]) < 1e-9)
            throw std::domain_error("denominator factor vanishes at the base point");
        den = jetcalc::series_mul(den, jetcalc::series_pow(s, mult, N), N);
    }
    CSeries q = jetcalc::series_div(num, den, N);
    return jetcalc::series_pow(q, I.exponent, N);
}

DeltaJetDistribution assemble_fixed_point_index(
    const RootDatum& d, const std::vector<std::pair<CoweightQ, IntegrandDatum>>& data,
    const VectorFieldSeries& v, int N, AssemblyMode mode) {
    jetcalc::check_order(N);
    DeltaJetDistribution out;
    out.order = N;
    if (data.empty()) return out;

    auto wl = rootsys::weyl_elements(d);
    if (mode == AssemblyMode::G && !is_weyl_invariant_field(d, wl, v))
        throw std::invalid_argument("one-atom-per-orbit assembly needs a Weyl-invariant field");
    double torder = double(tlevel::tlevel_order(d));
    LaurentPoly J = charring::weyl_denominator<Cpx>(d, wl);
    Cpx mode_g_sign = (d.positive_roots.size() % 2) ? Cpx(-1.0) : Cpx(1.0);

    std::set<CoweightQ> seen;
    for (const auto& [key, I] : data) {
        TLevelElement g = tlevel::canonicalize(d, key);
        if (!tlevel::is_regular(d, g.xi))
            throw std::domain_error("fixed-point datum keyed by a non-regular base point");
        if (!seen.insert(g.xi).second)
            throw std::invalid_argument("duplicate base point in fixed-point data");

        TorusJet jet = jetcalc::solve_fixed_point(d, v, g.xi, N);
        CSeries ival = integrand_eval(I, jet, N);
        CSeries det = jetcalc::flow_jacobian_det(d, v, jet, N);
        CSeries coeff = scaled(jetcalc::series_div(ival, det, N), Cpx(1.0 / torder));

        if (mode == AssemblyMode::T) {
            for (const auto& w : wl) {
                CoweightQ b = frac_coords(rootsys::act_on_coweight<Rational>(w, g.xi));
                TorusJet jw = jetcalc::act_on_jet(w, jet);
                for (int i = 0; i < d.rank; ++i) jw.base[i] = Cpx(b[i].to_double(), 0.0);
                out.atoms.push_back({b, std::move(jw), scaled(coeff, Cpx(w.sign(), 0.0))});
            }
        } else {
            CSeries Js = charring::evaluate_at_jet(J, jet, N);
            out.atoms.push_back({g.xi, jet, scaled(jetcalc::series_mul(Js, coeff, N), mode_g_sign)});
        }
    }

    std::sort(out.atoms.begin(), out.atoms.end(),
              [](const DeltaAtom& a, const DeltaAtom& b) { return a.base < b.base; });
    for (size_t i = 1; i < out.atoms.size(); ++i)
        if (out.atoms[i - 1].base == out.atoms[i].base)
            throw std::logic_error("atom bases collide (two keys share a Weyl orbit?)");
    return out;
}

CSeries pair_with_character(const DeltaJetDistribution& dist, const LaurentPoly& f, int N) {
    CSeries out = jetcalc::series_zero(N);
    for (const auto& atom : dist.atoms) {
        CSeries fv = charring::evaluate_at_jet(f, atom.jet, N);
        out = jetcalc::series_add(out, jetcalc::series_mul(fv, atom.coeff, N));
    }
    return jetcalc::series_resize(out, N, Cpx(0));
}

CSeries pair_with_poly_series(const DeltaJetDistribution& dist,
                              const std::vector<LaurentPoly>& ps, int N) {
    CSeries out = jetcalc::series_zero(N);
    for (int k = 0; k <= N && k < (int)ps.size(); ++k) {
        if (ps[k].empty()) continue;
        CSeries part = pair_with_character(dist, ps[k], N - k);
        for (int j = 0; j + k <= N && j < (int)part.size(); ++j) out[j + k] += part[j];
    }
    return out;
}

DeviationReport check_twisted_invariance(const RootDatum& d, const DeltaJetDistribution& dist,
                                         const VectorFieldSeries& v, const IntVec& eta, int N,
                                         double tol, long long panel_radius) {
    auto mult = poisson::eta_multiplier_series(d, v, eta, N);
    Window panel = Window::cube(d.rank, panel_radius);
    DeviationReport rep;
    rep.tol = tol;
    WeightVec lam = panel.lo;
    for (bool more = true; more; more = panel.next(lam)) {
        LaurentPoly f = LaurentPoly::monomial(lam, 1.0);
        CSeries plain = pair_with_character(dist, f, N);
        std::vector<LaurentPoly> ps(mult.size());
        for (size_t k = 0; k < mult.size(); ++k) ps[k] = f * mult[k];
        CSeries twisted = pair_with_poly_series(dist, ps, N);
        for (int k = 0; k <= N; ++k)
            rep.max_deviation = std::max(rep.max_deviation, std::abs(twisted[k] - plain[k]));
    }
    rep.pass = rep.max_deviation < tol;
    return rep;
}

double weyl_antisymmetry_deviation(const RootDatum& d, const std::vector<WeylElement>& wl,
                                   const DeltaJetDistribution& dist) {
    (void)d;
    std::map<CoweightQ, size_t> index_of;
    for (size_t i = 0; i < dist.atoms.size(); ++i) index_of[dist.atoms[i].base] = i;
    double dev = 0.0;
    CSeries zero = jetcalc::series_zero(dist.order);
    for (const auto& atom : dist.atoms)
        for (const auto& w : wl) {
            CoweightQ b = frac_coords(rootsys::act_on_coweight<Rational>(w, atom.base));
            auto it = index_of.find(b);
            const CSeries& got = it == index_of.end() ? zero : dist.atoms[it->second].coeff;
            for (int k = 0; k <= dist.order; ++k) {
                Cpx expect = double(w.sign()) * atom.coeff[k];
                dev = std::max(dev, std::abs(got[k] - expect));
            }
        }
    return dev;
}

bool is_weyl_invariant_field(const RootDatum& d, const std::vector<WeylElement>& wl,
                             const VectorFieldSeries& v, double tol) {
    (void)d;
    for (const auto& w : wl) {
        VectorFieldSeries moved = act_on_field(w, v);
        size_t orders = std::max(moved.orders.size(), v.orders.size());
        for (size_t j = 0; j < orders; ++j) {
            std::set<WeightVec> keys;
            if (j < v.orders.size())
                for (const auto& [lam, vec] : v.orders[j]) keys.insert(lam);
            if (j < moved.orders.size())
                for (const auto& [lam, vec] : moved.orders[j]) keys.insert(lam);
            for (const auto& lam : keys) {
                rootsys::CoweightC a(v.rank, Cpx(0)), b(v.rank, Cpx(0));
                if (j < v.orders.size()) {
                    auto it = v.orders[j].find(lam);
                    if (it != v.orders[j].end()) a = it->second;
                }
                if (j < moved.orders.size()) {
                    auto it = moved.orders[j].find(lam);
                    if (it != moved.orders[j].end()) b = it->second;
                }
                for (int i = 0; i < v.rank; ++i)
                    if (std::abs(a[i] - b[i]) > tol) return false;
            }
        }
    }
    return true;
}

} // namespace loopidx::locindex
