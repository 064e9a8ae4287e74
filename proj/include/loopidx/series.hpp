#pragma once

#include "loopidx/rootsys.hpp"

#include <complex>
#include <stdexcept>
#include <vector>

namespace loopidx::jetcalc {

using Cpx = std::complex<double>;

// Truncated power series in the formal variable t: index = power, size = N+1.
using CSeries = std::vector<Cpx>;

inline CSeries series_zero(int N) { return CSeries(N + 1, Cpx(0)); }

inline CSeries series_const(Cpx c, int N) {
    CSeries s(N + 1, Cpx(0));
    s[0] = c;
    return s;
}

template <class T>
std::vector<T> series_resize(std::vector<T> a, int N, const T& zero) {
    a.resize(N + 1, zero);
    return a;
}

template <class T>
std::vector<T> series_add(const std::vector<T>& a, const std::vector<T>& b) {
    std::vector<T> out(std::max(a.size(), b.size()));
    for (size_t i = 0; i < out.size(); ++i) {
        if (i < a.size()) out[i] = out[i] + a[i];
        if (i < b.size()) out[i] = out[i] + b[i];
    }
    return out;
}

template <class T>
std::vector<T> series_mul(const std::vector<T>& a, const std::vector<T>& b, int N, T zero) {
    std::vector<T> out(N + 1, zero);
    for (size_t i = 0; i < a.size() && (int)i <= N; ++i)
        for (size_t j = 0; j < b.size() && (int)(i + j) <= N; ++j)
            out[i + j] = out[i + j] + a[i] * b[j];
    return out;
}

inline CSeries series_mul(const CSeries& a, const CSeries& b, int N) {
    return series_mul<Cpx>(a, b, N, Cpx(0));
}

// Multiply by t^k.
template <class T>
std::vector<T> series_shift(const std::vector<T>& a, int k, int N, T zero) {
    std::vector<T> out(N + 1, zero);
    for (size_t i = 0; i < a.size() && (int)i + k <= N; ++i) out[i + k] = a[i];
    return out;
}

inline CSeries series_exp(const CSeries& x, int N) {
    CSeries head = series_resize(x, N, Cpx(0));
    Cpx x0 = head[0];
    head[0] = 0;
    CSeries out = series_const(std::exp(x0), N);
    CSeries pow = series_const(1.0, N);
    double fact = 1.0;
    for (int k = 1; k <= N; ++k) {
        pow = series_mul(pow, head, N);
        fact *= k;
        for (int i = 0; i <= N; ++i) out[i] += std::exp(x0) * pow[i] / fact;
    }
    return out;
}

inline CSeries series_inverse(const CSeries& a, int N) {
    if (a.empty() || std::abs(a[0]) == 0.0)
        throw std::domain_error("series inverse needs a nonzero constant term");
    CSeries in = series_resize(a, N, Cpx(0));
    CSeries out = series_zero(N);
    out[0] = 1.0 / in[0];
    for (int n = 1; n <= N; ++n) {
        Cpx acc = 0.0;
        for (int k = 1; k <= n; ++k) acc += in[k] * out[n - k];
        out[n] = -acc / in[0];
    }
    return out;
}

inline CSeries series_div(const CSeries& a, const CSeries& b, int N) {
    return series_mul(a, series_inverse(b, N), N);
}

inline CSeries series_pow(const CSeries& a, int e, int N) {
    CSeries base = e >= 0 ? series_resize(a, N, Cpx(0)) : series_inverse(a, N);
    int k = e >= 0 ? e : -e;
    CSeries out = series_const(1.0, N);
    while (k) {
        if (k & 1) out = series_mul(out, base, N);
        base = series_mul(base, base, N);
        k >>= 1;
    }
    return out;
}

// Leibniz determinant of a matrix of scalar series; ranks here are tiny.
CSeries series_det(const std::vector<std::vector<CSeries>>& m, int N);

inline double series_max_abs(const CSeries& a) {
    double m = 0;
    for (auto& c : a) m = std::max(m, std::abs(c));
    return m;
}

// A C[[t]]-point of the complexified torus in exponential coordinates:
// u(t) = exp(base + plus_1 t + plus_2 t^2 + ...).  plus[0] is identically zero.
struct TorusJet {
    rootsys::CoweightC base;
    std::vector<rootsys::CoweightC> plus;  // plus[k] = t^k coefficient

    int order() const { return (int)plus.size() - 1; }
};

TorusJet make_jet(const rootsys::CoweightC& base, int N);
TorusJet make_jet(const rootsys::CoweightQ& base, int N);

// <lambda, plus-part> as a scalar series with zero constant term.
CSeries jet_pairing_series(const rootsys::WeightVec& lambda, const TorusJet& jet, int N);

} // namespace loopidx::jetcalc
