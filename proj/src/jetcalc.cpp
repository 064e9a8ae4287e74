#include "loopidx/jetcalc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace loopidx::jetcalc {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr Cpx kTwoPiI{0.0, kTwoPi};

using charring::LaurentPoly;
using PolySeries = std::vector<LaurentPoly>;

// e^lambda along the jet, as a scalar series.
CSeries character_series(const WeightVec& lambda, const TorusJet& jet, int N) {
    Cpx phase = std::exp(kTwoPiI * rootsys::pairing(lambda, jet.base));
    CSeries x = jet_pairing_series(lambda, jet, N);
    for (auto& v : x) v *= kTwoPiI;
    CSeries e = series_exp(x, N);
    for (auto& v : e) v *= phase;
    return e;
}

PolySeries poly_series_exp(const PolySeries& x, int rank, int N) {
    if (!x.empty() && !x[0].empty())
        throw std::domain_error("symbolic exponential needs a vanishing constant order");
    PolySeries out(N + 1), pow(N + 1);
    out[0] = LaurentPoly::constant(rank, 1.0);
    pow[0] = LaurentPoly::constant(rank, 1.0);
    double fact = 1.0;
    for (int k = 1; k <= N; ++k) {
        pow = series_mul<LaurentPoly>(pow, x, N, LaurentPoly());
        fact *= k;
        Cpx inv(1.0 / fact, 0.0);
        for (int i = 0; i <= N; ++i) out[i] += inv * pow[i];
    }
    return out;
}

// Orders 0..N of v_t(u * exp(t psi_t(u))) in the character ring; order k only
// reads psi_j for j < k, so this drives the inversion recursion.
VectorFieldSeries field_after_symbolic_flow(const RootDatum& d, const VectorFieldSeries& v,
                                            const VectorFieldSeries& psi, int N,
                                            size_t support_cap) {
    VectorFieldSeries out;
    out.rank = d.rank;
    out.orders.resize(N + 1);
    for (int j = 0; j <= std::min(v.order(), N); ++j) {
        for (const auto& [lambda, vec] : v.orders[j]) {
            int M = N - j;
            PolySeries x(M + 1);
            for (int m = 1; m <= M; ++m) {
                if (m - 1 > psi.order()) continue;
                for (const auto& [mu, pvec] : psi.orders[m - 1]) {
                    Cpx c = kTwoPiI * rootsys::pairing(lambda, pvec);
                    if (std::abs(c) > 0) x[m].add_term(mu, c);
                }
            }
            PolySeries e = poly_series_exp(x, d.rank, M);
            for (int m = 0; m <= M; ++m) {
                for (const auto& [mu, c] : e[m].terms()) {
                    WeightVec w(mu);
                    for (int i = 0; i < d.rank; ++i) w[i] += lambda[i];
                    auto [it, fresh] =
                        out.orders[j + m].try_emplace(w, CoweightC(d.rank, Cpx(0)));
                    (void)fresh;
                    for (int i = 0; i < d.rank; ++i) it->second[i] += c * vec[i];
                }
            }
        }
        if (out.term_count() > support_cap)
            throw std::length_error("symbolic flow support exceeded the cap");
    }
    for (auto& ord : out.orders) {
        for (auto it = ord.begin(); it != ord.end();) {
            double m = 0;
            for (auto& c : it->second) m = std::max(m, std::abs(c));
            it = m <= 1e-12 ? ord.erase(it) : std::next(it);
        }
    }
    return out;
}

} // namespace

CSeries series_det(const std::vector<std::vector<CSeries>>& m, int N) {
    int r = (int)m.size();
    if (r > 8) throw std::length_error("series determinant limited to rank 8");
    if (r == 0) return series_const(1.0, N);
    std::vector<int> p(r);
    std::iota(p.begin(), p.end(), 0);
    CSeries out = series_zero(N);
    do {
        int inv = 0;
        for (int i = 0; i < r; ++i)
            for (int j = i + 1; j < r; ++j) inv += p[i] > p[j];
        CSeries prod = series_const(inv % 2 ? -1.0 : 1.0, N);
        for (int i = 0; i < r; ++i) prod = series_mul(prod, m[i][p[i]], N);
        for (int i = 0; i <= N; ++i) out[i] += prod[i];
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

TorusJet make_jet(const rootsys::CoweightC& base, int N) {
    TorusJet j;
    j.base = base;
    j.plus.assign(N + 1, rootsys::CoweightC(base.size(), Cpx(0)));
    return j;
}

TorusJet make_jet(const rootsys::CoweightQ& base, int N) {
    rootsys::CoweightC b(base.size());
    for (size_t i = 0; i < base.size(); ++i) b[i] = base[i].to_double();
    return make_jet(b, N);
}

CSeries jet_pairing_series(const WeightVec& lambda, const TorusJet& jet, int N) {
    CSeries x = series_zero(N);
    for (int k = 1; k <= std::min(N, jet.order()); ++k)
        x[k] = rootsys::pairing(lambda, jet.plus[k]);
    return x;
}

void check_order(int N, int cap) {
    if (N < 0) throw std::invalid_argument("truncation order must be nonnegative");
    if (N > cap)
        throw std::invalid_argument("truncation order " + std::to_string(N) +
                                    " exceeds the cap " + std::to_string(cap));
}

void VectorFieldSeries::add_term(int j, const WeightVec& w, const CoweightC& vec) {
    if ((int)vec.size() != rank || (int)w.size() != rank)
        throw std::invalid_argument("field term dimension mismatch");
    if (j < 0) throw std::invalid_argument("negative series order");
    if (j >= (int)orders.size()) orders.resize(j + 1);
    auto [it, fresh] = orders[j].try_emplace(w, vec);
    if (!fresh)
        for (int i = 0; i < rank; ++i) it->second[i] += vec[i];
}

size_t VectorFieldSeries::term_count() const {
    size_t n = 0;
    for (auto& o : orders) n += o.size();
    return n;
}

CoweightC ell_inverse(const RootDatum& d, CoweightC v) {
    for (int i = 0; i < d.rank; ++i) v[i] /= double(d.level_of_coord[i]);
    return v;
}

VSeries evaluate_field_at_jet(const RootDatum& d, const VectorFieldSeries& v,
                              const TorusJet& jet, int N) {
    VSeries out(N + 1, CoweightC(d.rank, Cpx(0)));
    for (int j = 0; j <= std::min(v.order(), N); ++j) {
        for (const auto& [lambda, vec] : v.orders[j]) {
            CSeries s = character_series(lambda, jet, N - j);
            for (int m = 0; m + j <= N; ++m)
                for (int i = 0; i < d.rank; ++i) out[j + m][i] += vec[i] * s[m];
        }
    }
    return out;
}

TorusJet apply_flow(const RootDatum& d, const VectorFieldSeries& field, const TorusJet& jet,
                    int N, bool apply_ell_inverse) {
    VSeries e = evaluate_field_at_jet(d, field, jet, std::max(0, N - 1));
    TorusJet out = jet;
    out.plus.resize(N + 1, CoweightC(d.rank, Cpx(0)));
    for (int k = 1; k <= N; ++k) {
        CoweightC step = e[k - 1];
        if (apply_ell_inverse) step = ell_inverse(d, step);
        for (int i = 0; i < d.rank; ++i) out.plus[k][i] += step[i];
    }
    return out;
}

TorusJet solve_fixed_point(const RootDatum& d, const VectorFieldSeries& v,
                           const rootsys::CoweightC& base, int N) {
    check_order(N);
    if ((int)base.size() != d.rank) throw std::invalid_argument("base dimension mismatch");
    TorusJet jet = make_jet(base, N);
    for (int k = 1; k <= N; ++k) {
        VSeries e = evaluate_field_at_jet(d, v, jet, k - 1);
        CoweightC step = ell_inverse(d, e[k - 1]);
        for (int i = 0; i < d.rank; ++i) jet.plus[k][i] = -step[i];
    }
    // the defining equation must hold identically through order N
    VSeries e = evaluate_field_at_jet(d, v, jet, N);
    double scale = 1.0 + jet_plus_norm(jet);
    for (int k = 1; k <= N; ++k) {
        CoweightC step = ell_inverse(d, e[k - 1]);
        for (int i = 0; i < d.rank; ++i)
            if (std::abs(jet.plus[k][i] + step[i]) > 1e-9 * scale)
                throw std::logic_error("fixed-point residual failed to vanish");
    }
    return jet;
}

TorusJet solve_fixed_point(const RootDatum& d, const VectorFieldSeries& v,
                           const rootsys::CoweightQ& base, int N) {
    rootsys::CoweightC b(base.size());
    for (size_t i = 0; i < base.size(); ++i) b[i] = base[i].to_double();
    return solve_fixed_point(d, v, b, N);
}

CSeries flow_jacobian_det(const RootDatum& d, const VectorFieldSeries& v, const TorusJet& jet,
                          int N) {
    int r = d.rank;
    std::vector<std::vector<CSeries>> a(r, std::vector<CSeries>(r, series_zero(N)));
    for (int j = 0; j <= std::min(v.order(), N); ++j) {
        for (const auto& [lambda, vec] : v.orders[j]) {
            CSeries s = character_series(lambda, jet, N - j);
            for (int m = 0; m < r; ++m) {
                Cpx vm = vec[m] / double(d.level_of_coord[m]);
                if (std::abs(vm) == 0.0) continue;
                for (int i = 0; i < r; ++i) {
                    Cpx g = vm * kTwoPiI * double(lambda[i]);
                    if (std::abs(g) == 0.0) continue;
                    // the extra factor of t shifts every entry up one order
                    for (int p = 0; p + j + 1 <= N; ++p) a[m][i][p + j + 1] += g * s[p];
                }
            }
        }
    }
    for (int m = 0; m < r; ++m) a[m][m][0] += 1.0;
    return series_det(a, N);
}

VectorFieldSeries invert_flow(const RootDatum& d, const VectorFieldSeries& v, int N,
                              size_t support_cap) {
    check_order(N);
    VectorFieldSeries psi;
    psi.rank = d.rank;
    psi.orders.resize(N + 1);
    for (int k = 0; k <= N; ++k) {
        VectorFieldSeries w = field_after_symbolic_flow(d, v, psi, k, support_cap);
        for (const auto& [mu, vec] : w.orders[k]) {
            CoweightC step = ell_inverse(d, vec);
            for (auto& c : step) c = -c;
            psi.orders[k][mu] = step;
        }
        if (psi.term_count() > support_cap)
            throw std::length_error("inverse flow support exceeded the cap");
    }
    return psi;
}

TorusJet act_on_jet(const rootsys::WeylElement& w, const TorusJet& jet) {
    TorusJet out;
    out.base = rootsys::act_on_coweight(w, jet.base);
    out.plus.reserve(jet.plus.size());
    for (const auto& p : jet.plus) out.plus.push_back(rootsys::act_on_coweight(w, p));
    return out;
}

VectorFieldSeries symmetrize_field(const RootDatum& d,
                                   const std::vector<rootsys::WeylElement>& wl,
                                   const VectorFieldSeries& v) {
    VectorFieldSeries out;
    out.rank = d.rank;
    out.orders.resize(v.orders.size());
    for (const auto& w : wl)
        for (size_t j = 0; j < v.orders.size(); ++j)
            for (const auto& [lambda, vec] : v.orders[j])
                out.add_term((int)j, rootsys::act_on_weight(w, lambda),
                             rootsys::act_on_coweight(w, vec));
    return out;
}

double jet_distance(const TorusJet& a, const TorusJet& b) {
    double m = 0;
    for (size_t i = 0; i < a.base.size(); ++i) m = std::max(m, std::abs(a.base[i] - b.base[i]));
    size_t n = std::max(a.plus.size(), b.plus.size());
    for (size_t k = 0; k < n; ++k)
        for (size_t i = 0; i < a.base.size(); ++i) {
            Cpx av = k < a.plus.size() ? a.plus[k][i] : Cpx(0);
            Cpx bv = k < b.plus.size() ? b.plus[k][i] : Cpx(0);
            m = std::max(m, std::abs(av - bv));
        }
    return m;
}

double jet_plus_norm(const TorusJet& jet) {
    double m = 0;
    for (const auto& p : jet.plus)
        for (const auto& c : p) m = std::max(m, std::abs(c));
    return m;
}

} // namespace loopidx::jetcalc
