#include "loopidx/poisson.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <stdexcept>
#include <thread>

namespace loopidx::poisson {

using jetcalc::Cpx;
using jetcalc::TorusJet;
using rootsys::WeightVec;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
const Cpx kTwoPiI(0.0, kTwoPi);

// exp of a t-series with character-ring coefficients; requires a vanishing
// constant order so each output order is a finite sum.
std::vector<LaurentPoly> exp_poly_series(const std::vector<LaurentPoly>& x, int rank, int N) {
    if (!x.empty() && !x[0].empty())
        throw std::invalid_argument("series exponential needs a vanishing constant order");
    std::vector<LaurentPoly> out(N + 1), pw(N + 1);
    out[0] = LaurentPoly::constant(rank, 1.0);
    pw[0] = LaurentPoly::constant(rank, 1.0);
    double fact = 1.0;
    for (int k = 1; k <= N; ++k) {
        std::vector<LaurentPoly> nxt(N + 1);
        for (int i = 0; i + 1 <= N; ++i) {
            if (pw[i].empty()) continue;
            for (int j = 1; i + j <= N && j < (int)x.size(); ++j)
                if (!x[j].empty()) nxt[i + j] += pw[i] * x[j];
        }
        pw = std::move(nxt);
        fact *= k;
        for (int i = k; i <= N; ++i)
            if (!pw[i].empty()) out[i] += Cpx(1.0 / fact) * pw[i];
    }
    return out;
}

int thread_count() {
    const char* s = std::getenv("LOOPIDX_THREADS");
    if (!s) return 1;
    int n = std::atoi(s);
    return n < 1 ? 1 : n;
}

// Runs fn(i) for i in [0, n).  Each item writes only its own slot, so the
// result is identical for any thread count; reductions stay sequential.
template <class Fn>
void parallel_items(size_t n, Fn&& fn) {
    size_t nt = std::min<size_t>((size_t)thread_count(), n ? n : 1);
    if (nt <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (size_t t = 0; t < nt; ++t)
        pool.emplace_back([&, t] {
            for (size_t i = t; i < n; i += nt) fn(i);
        });
    for (auto& th : pool) th.join();
}

} // namespace

std::vector<IntVec> lhs_candidates(const RootDatum& d, const VectorFieldSeries& v,
                                   const LaurentPoly& f, int N, size_t cap) {
    jetcalc::check_order(N);
    std::set<IntVec> base;
    base.insert(IntVec(d.rank, 0));
    for (const auto& lvl : v.orders)
        for (const auto& [w, vec] : lvl) base.insert(w);

    std::set<IntVec> sumset{IntVec(d.rank, 0)};
    for (int k = 0; k < N; ++k) {
        std::set<IntVec> next;
        for (const auto& s : sumset)
            for (const auto& b : base) {
                IntVec t(s);
                for (int i = 0; i < d.rank; ++i) t[i] += b[i];
                next.insert(std::move(t));
                if (next.size() > cap)
                    throw std::length_error("lattice candidate set exceeds the cap");
            }
        sumset.swap(next);
    }

    std::set<IntVec> etas;
    for (const auto& [wf, c] : f.terms()) {
        (void)c;
        for (const auto& s : sumset) {
            IntVec target(d.rank);
            for (int i = 0; i < d.rank; ++i) target[i] = -(wf[i] + s[i]);
            IntVec eta(d.rank);
            bool integral = true;
            for (int i = 0; i < d.rank && integral; ++i) {
                Rational e(0);
                for (int j = 0; j < d.rank; ++j) e += d.gram_inv[i][j] * Rational(target[j]);
                if (!e.is_integer()) integral = false;
                else eta[i] = e.num();
            }
            if (integral) etas.insert(std::move(eta));
        }
    }
    return std::vector<IntVec>(etas.begin(), etas.end());
}

std::vector<LaurentPoly> eta_multiplier_series(const RootDatum& d, const VectorFieldSeries& v,
                                               const IntVec& eta, int N) {
    jetcalc::check_order(N);
    IntVec b = mat_vec(d.gram_basic, eta); // unscaled-form weight of eta
    std::vector<LaurentPoly> x(N + 1);
    for (int m = 0; m < (int)v.orders.size() && m + 1 <= N; ++m)
        for (const auto& [lam, vec] : v.orders[m]) {
            Cpx c = 0.0;
            for (int i = 0; i < d.rank; ++i) c += double(b[i]) * vec[i];
            if (std::abs(c) > 0.0) x[m + 1].add_term(lam, kTwoPiI * c);
        }
    auto out = exp_poly_series(x, d.rank, N);
    LaurentPoly shift = LaurentPoly::monomial(mat_vec(d.gram, eta), 1.0);
    for (auto& p : out) p = p * shift;
    return out;
}

CSeries poisson_lhs(const RootDatum& d, const VectorFieldSeries& v, const LaurentPoly& f, int N,
                    size_t* eta_count, size_t cap) {
    jetcalc::check_order(N);
    CSeries out = jetcalc::series_zero(N);
    if (f.empty()) {
        if (eta_count) *eta_count = 0;
        return out;
    }
    auto etas = lhs_candidates(d, v, f, N, cap);
    if (eta_count) *eta_count = etas.size();
    std::vector<CSeries> part(etas.size());
    parallel_items(etas.size(), [&](size_t i) {
        auto mult = eta_multiplier_series(d, v, etas[i], N);
        CSeries s = jetcalc::series_zero(N);
        for (int k = 0; k <= N; ++k) {
            Cpx acc = 0.0;
            for (const auto& [w, c] : mult[k].terms()) {
                WeightVec neg(w);
                for (auto& z : neg) z = -z;
                acc += c * f.coeff(neg);
            }
            s[k] = acc;
        }
        part[i] = std::move(s);
    });
    for (const auto& p : part) out = jetcalc::series_add(out, p);
    return jetcalc::series_resize(out, N, Cpx(0));
}

CSeries poisson_rhs(const RootDatum& d, const VectorFieldSeries& v, const LaurentPoly& f, int N) {
    jetcalc::check_order(N);
    auto els = tlevel::enumerate_tlevel(d);
    std::vector<CSeries> part(els.size());
    parallel_items(els.size(), [&](size_t i) {
        TorusJet jet = jetcalc::solve_fixed_point(d, v, els[i].xi, N);
        CSeries num = charring::evaluate_at_jet(f, jet, N);
        CSeries den = jetcalc::flow_jacobian_det(d, v, jet, N);
        part[i] = jetcalc::series_div(num, den, N);
    });
    CSeries out = jetcalc::series_zero(N);
    for (const auto& p : part) out = jetcalc::series_add(out, p);
    double inv = 1.0 / double(els.size());
    for (auto& c : out) c *= inv;
    return jetcalc::series_resize(out, N, Cpx(0));
}

PoissonReport poisson_check(const RootDatum& d, const VectorFieldSeries& v, const LaurentPoly& f,
                            int N, double tol) {
    PoissonReport rep;
    rep.order = N;
    rep.tol = tol;
    rep.lhs = poisson_lhs(d, v, f, N, &rep.eta_count);
    rep.rhs = poisson_rhs(d, v, f, N);
    rep.deviation.resize(N + 1, 0.0);
    for (int k = 0; k <= N; ++k) {
        rep.deviation[k] = std::abs(rep.lhs[k] - rep.rhs[k]);
        rep.max_deviation = std::max(rep.max_deviation, rep.deviation[k]);
    }
    rep.pass = rep.max_deviation < tol;
    return rep;
}

} // namespace loopidx::poisson
