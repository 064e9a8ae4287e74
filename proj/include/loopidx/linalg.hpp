#pragma once

#include "loopidx/rational.hpp"

#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace loopidx {

using IntVec = std::vector<long long>;
using IntMat = std::vector<IntVec>;            // row-major, square unless noted
using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;

inline IntMat identity_mat(int n) {
    IntMat m(n, IntVec(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline IntMat mat_mul(const IntMat& a, const IntMat& b) {
    int n = (int)a.size(), k = (int)b.size(), p = (int)b[0].size();
    IntMat c(n, IntVec(p, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < k; ++j) {
            long long aij = a[i][j];
            if (!aij) continue;
            for (int l = 0; l < p; ++l) c[i][l] += aij * b[j][l];
        }
    return c;
}

inline IntVec mat_vec(const IntMat& a, const IntVec& x) {
    IntVec y(a.size(), 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
    return y;
}

template <class S>
std::vector<S> mat_vec(const IntMat& a, const std::vector<S>& x) {
    std::vector<S> y(a.size(), S(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < x.size(); ++j)
            if (a[i][j]) y[i] += S(a[i][j]) * x[j];
    return y;
}

inline IntMat transpose(const IntMat& a) {
    int n = (int)a.size(), m = (int)a[0].size();
    IntMat t(m, IntVec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) t[j][i] = a[i][j];
    return t;
}

inline RatMat to_rational(const IntMat& a) {
    RatMat r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        r[i] = RatVec(a[i].begin(), a[i].end());
    return r;
}

// Gauss-Jordan over Q; throws on singular input.
inline RatMat rat_inverse(RatMat a) {
    int n = (int)a.size();
    RatMat inv(n, RatVec(n, Rational(0)));
    for (int i = 0; i < n; ++i) inv[i][i] = Rational(1);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (!a[r][col].is_zero()) { piv = r; break; }
        if (piv < 0) throw std::domain_error("singular matrix");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Rational d = a[col][col];
        for (int j = 0; j < n; ++j) { a[col][j] /= d; inv[col][j] /= d; }
        for (int r = 0; r < n; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            Rational f = a[r][col];
            for (int j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

inline RatVec rat_mat_vec(const RatMat& a, const RatVec& x) {
    RatVec y(a.size(), Rational(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
    return y;
}

inline Rational rat_det(RatMat a) {
    int n = (int)a.size();
    Rational det(1);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (!a[r][col].is_zero()) { piv = r; break; }
        if (piv < 0) return Rational(0);
        if (piv != col) { std::swap(a[piv], a[col]); det = -det; }
        det *= a[col][col];
        Rational d = a[col][col];
        for (int r = col + 1; r < n; ++r) {
            if (a[r][col].is_zero()) continue;
            Rational f = a[r][col] / d;
            for (int j = col; j < n; ++j) a[r][j] -= f * a[col][j];
        }
    }
    return det;
}

inline long long int_det(const IntMat& a) {
    Rational d = rat_det(to_rational(a));
    if (!d.is_integer()) throw std::logic_error("integer determinant not integral");
    return d.num();
}

struct SmithForm {
    IntMat u, s, v;  // u * a * v == s, u and v unimodular, s diagonal
};

// Smith-style diagonalization over Z (diagonal entries positive; the
// divisibility chain is not enforced because the quotient enumeration below
// only needs *some* diagonal form with unimodular transforms).
inline SmithForm smith_normal_form(IntMat a) {
    int n = (int)a.size();
    SmithForm f{identity_mat(n), a, identity_mat(n)};
    auto& s = f.s;
    for (int t = 0; t < n; ++t) {
        for (;;) {
            // locate the entry of minimal nonzero magnitude in the trailing block
            int pi = -1, pj = -1;
            long long best = 0;
            for (int i = t; i < n; ++i)
                for (int j = t; j < n; ++j) {
                    long long v = std::llabs(s[i][j]);
                    if (v && (pi < 0 || v < best)) { pi = i; pj = j; best = v; }
                }
            if (pi < 0) throw std::domain_error("singular lattice matrix");
            if (pi != t) { std::swap(s[pi], s[t]); std::swap(f.u[pi], f.u[t]); }
            if (pj != t)
                for (int i = 0; i < n; ++i) {
                    std::swap(s[i][pj], s[i][t]);
                    std::swap(f.v[i][pj], f.v[i][t]);
                }
            bool clean = true;
            for (int i = t + 1; i < n; ++i) {
                long long q = s[i][t] / s[t][t];
                if (q) {
                    for (int j = 0; j < n; ++j) { s[i][j] -= q * s[t][j]; f.u[i][j] -= q * f.u[t][j]; }
                }
                if (s[i][t]) clean = false;
            }
            for (int j = t + 1; j < n; ++j) {
                long long q = s[t][j] / s[t][t];
                if (q) {
                    for (int i = 0; i < n; ++i) { s[i][j] -= q * s[i][t]; f.v[i][j] -= q * f.v[i][t]; }
                }
                if (s[t][j]) clean = false;
            }
            if (clean) break;
        }
        if (s[t][t] < 0) {
            for (int j = 0; j < n; ++j) { s[t][j] = -s[t][j]; f.u[t][j] = -f.u[t][j]; }
        }
    }
    return f;
}

} // namespace loopidx
