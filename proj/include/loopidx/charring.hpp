#pragma once

#include "loopidx/rational.hpp"
#include "loopidx/rootsys.hpp"
#include "loopidx/series.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace loopidx::charring {

using rootsys::RootDatum;
using rootsys::WeightVec;
using rootsys::WeylElement;
using jetcalc::Cpx;

// Deterministic term order: total degree first, then lexicographic.
struct GradedLexLess {
    bool operator()(const WeightVec& a, const WeightVec& b) const {
        long long da = 0, db = 0;
        for (long long c : a) da += c;
        for (long long c : b) db += c;
        if (da != db) return da < db;
        return a < b;
    }
};

template <class C>
struct CoeffOps;

template <>
struct CoeffOps<Cpx> {
    static bool negligible(const Cpx& c) {
        return std::abs(c.real()) <= 1e-12 && std::abs(c.imag()) <= 1e-12;
    }
    static Cpx conj(const Cpx& c) { return std::conj(c); }
    static Cpx to_complex(const Cpx& c) { return c; }
};

template <>
struct CoeffOps<GaussianRational> {
    static bool negligible(const GaussianRational& c) { return c.is_zero(); }
    static GaussianRational conj(const GaussianRational& c) { return c.conj(); }
    static Cpx to_complex(const GaussianRational& c) { return c.to_complex(); }
};

// Finite Laurent combination of torus characters e^lambda; the element
// e^lambda evaluates to exp(2*pi*i<lambda, xi>) at exp(xi).
template <class C>
class LaurentPolyT {
public:
    using TermMap = std::map<WeightVec, C, GradedLexLess>;

    LaurentPolyT() = default;

    static LaurentPolyT monomial(const WeightVec& w, C c) {
        LaurentPolyT p;
        p.add_term(w, c);
        return p;
    }
    static LaurentPolyT constant(int rank, C c) { return monomial(WeightVec(rank, 0), c); }

    void add_term(const WeightVec& w, const C& c) {
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            if (!CoeffOps<C>::negligible(c)) terms_.emplace(w, c);
        } else {
            it->second = it->second + c;
            if (CoeffOps<C>::negligible(it->second)) terms_.erase(it);
        }
    }

    const TermMap& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    C coeff(const WeightVec& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? C(0) : it->second;
    }

    // maximal term in the graded-lex order
    const std::pair<const WeightVec, C>& leading() const {
        if (terms_.empty()) throw std::domain_error("leading term of the zero element");
        return *terms_.rbegin();
    }

    friend LaurentPolyT operator+(const LaurentPolyT& a, const LaurentPolyT& b) {
        LaurentPolyT out = a;
        for (auto& [w, c] : b.terms_) out.add_term(w, c);
        return out;
    }
    friend LaurentPolyT operator-(const LaurentPolyT& a, const LaurentPolyT& b) {
        LaurentPolyT out = a;
        for (auto& [w, c] : b.terms_) out.add_term(w, C(0) - c);
        return out;
    }
    LaurentPolyT operator-() const {
        LaurentPolyT out;
        for (auto& [w, c] : terms_) out.terms_.emplace(w, C(0) - c);
        return out;
    }
    friend LaurentPolyT operator*(const LaurentPolyT& a, const LaurentPolyT& b) {
        LaurentPolyT out;
        for (auto& [wa, ca] : a.terms_)
            for (auto& [wb, cb] : b.terms_) {
                WeightVec w(wa);
                for (size_t i = 0; i < w.size(); ++i) w[i] += wb[i];
                out.add_term(w, ca * cb);
            }
        return out;
    }
    friend LaurentPolyT operator*(const C& s, const LaurentPolyT& p) {
        LaurentPolyT out;
        for (auto& [w, c] : p.terms_) out.add_term(w, s * c);
        return out;
    }
    LaurentPolyT& operator+=(const LaurentPolyT& b) { return *this = *this + b; }
    LaurentPolyT& operator-=(const LaurentPolyT& b) { return *this = *this - b; }
    LaurentPolyT& operator*=(const LaurentPolyT& b) { return *this = *this * b; }

    friend bool operator==(const LaurentPolyT& a, const LaurentPolyT& b) {
        return a.terms_ == b.terms_;
    }

    // conjugation: e^w -> e^{-w}, coefficients conjugated
    LaurentPolyT bar() const {
        LaurentPolyT out;
        for (auto& [w, c] : terms_) {
            WeightVec nw(w);
            for (auto& x : nw) x = -x;
            out.add_term(nw, CoeffOps<C>::conj(c));
        }
        return out;
    }

private:
    TermMap terms_;
};

using LaurentPoly = LaurentPolyT<Cpx>;
using LaurentPolyQ = LaurentPolyT<GaussianRational>;

LaurentPoly to_complex_poly(const LaurentPolyQ& p);

template <class C>
LaurentPolyT<C> act_on_poly(const WeylElement& w, const LaurentPolyT<C>& p) {
    LaurentPolyT<C> out;
    for (auto& [wt, c] : p.terms()) out.add_term(rootsys::act_on_weight(w, wt), c);
    return out;
}

template <class C>
double max_abs_coeff(const LaurentPolyT<C>& p) {
    double m = 0;
    for (auto& [w, c] : p.terms()) m = std::max(m, std::abs(CoeffOps<C>::to_complex(c)));
    return m;
}

// sum_w (-1)^{l(w)} e^{w lambda}
template <class C>
LaurentPolyT<C> weyl_antisymmetrize(const std::vector<WeylElement>& wl, const WeightVec& lambda) {
    LaurentPolyT<C> out;
    for (const auto& w : wl)
        out.add_term(rootsys::act_on_weight(w, lambda), C(w.sign()));
    return out;
}

template <class C>
LaurentPolyT<C> weyl_denominator(const RootDatum& d, const std::vector<WeylElement>& wl) {
    return weyl_antisymmetrize<C>(wl, d.rho);
}

// Exact single-divisor reduction in the character ring.  Every quotient step
// cancels the current graded-lex leading term; a nonzero remainder cannot
// terminate and is reported via the step cap.
template <class C>
LaurentPolyT<C> divide_exact(const LaurentPolyT<C>& num, const LaurentPolyT<C>& den,
                             size_t step_cap = 2000000) {
    if (den.empty()) throw std::domain_error("division by the zero element");
    LaurentPolyT<C> q, r = num;
    const auto& lt_d = den.leading();
    size_t steps = 0;
    while (!r.empty()) {
        if (++steps > step_cap)
            throw std::domain_error("character division does not divide exactly "
                                    "(nonzero remainder or runaway quotient)");
        const auto& lt_r = r.leading();
        WeightVec shift(lt_r.first);
        for (size_t i = 0; i < shift.size(); ++i) shift[i] -= lt_d.first[i];
        C c = lt_r.second / lt_d.second;
        auto mono = LaurentPolyT<C>::monomial(shift, c);
        q += mono;
        r -= mono * den;
    }
    return q;
}

// Character of the irreducible highest-weight representation, through the
// quotient of antisymmetrized exponentials.
template <class C>
LaurentPolyT<C> irreducible_character(const RootDatum& d, const std::vector<WeylElement>& wl,
                                      const WeightVec& lambda) {
    if (!rootsys::is_dominant(lambda))
        throw std::invalid_argument("character requested for a non-dominant weight");
    WeightVec lr(lambda);
    for (int i = 0; i < d.rank; ++i) lr[i] += d.rho[i];
    auto num = weyl_antisymmetrize<C>(wl, lr);
    auto den = weyl_denominator<C>(d, wl);
    return divide_exact(num, den);
}

template <class C>
C coefficient_sum(const LaurentPolyT<C>& p) {
    C s(0);
    for (auto& [w, c] : p.terms()) s = s + c;
    return s;
}

// Axis-aligned box of lattice points.
struct Window {
    IntVec lo, hi;

    int rank() const { return (int)lo.size(); }
    bool contains(const WeightVec& w) const {
        for (size_t i = 0; i < w.size(); ++i)
            if (w[i] < lo[i] || w[i] > hi[i]) return false;
        return true;
    }
    size_t point_count() const {
        size_t n = 1;
        for (size_t i = 0; i < lo.size(); ++i) n *= size_t(hi[i] - lo[i] + 1);
        return n;
    }
    // odometer iteration; start with w = lo, returns false after the last point
    bool next(WeightVec& w) const {
        for (size_t i = 0; i < w.size(); ++i) {
            if (w[i] < hi[i]) { ++w[i]; return true; }
            w[i] = lo[i];
        }
        return false;
    }
    static Window cube(int rank, long long radius) {
        return Window{IntVec(rank, -radius), IntVec(rank, radius)};
    }
};

// Multiplicity function supported on a window; absent points are zero.
template <class C>
struct WindowedMultiplicityT {
    Window window;
    std::map<WeightVec, C, GradedLexLess> values;

    C get(const WeightVec& w) const {
        auto it = values.find(w);
        return it == values.end() ? C(0) : it->second;
    }
    void add(const WeightVec& w, const C& c) {
        if (!window.contains(w))
            throw std::out_of_range("windowed multiplicity write outside its window");
        auto it = values.find(w);
        if (it == values.end()) {
            if (!CoeffOps<C>::negligible(c)) values.emplace(w, c);
        } else {
            it->second = it->second + c;
            if (CoeffOps<C>::negligible(it->second)) values.erase(it);
        }
    }
    friend bool operator==(const WindowedMultiplicityT& a, const WindowedMultiplicityT& b) {
        return a.window.lo == b.window.lo && a.window.hi == b.window.hi && a.values == b.values;
    }
};

using WindowedMultiplicity = WindowedMultiplicityT<Cpx>;
using WindowedMultiplicityQ = WindowedMultiplicityT<GaussianRational>;

template <class C>
WindowedMultiplicityT<C> restrict_to_window(const LaurentPolyT<C>& p, const Window& win) {
    WindowedMultiplicityT<C> out;
    out.window = win;
    for (auto& [w, c] : p.terms())
        if (win.contains(w)) out.values.emplace(w, c);
    return out;
}

template <class C>
double max_abs_diff(const WindowedMultiplicityT<C>& a, const WindowedMultiplicityT<C>& b) {
    double m = 0;
    for (auto& [w, c] : a.values)
        m = std::max(m, std::abs(CoeffOps<C>::to_complex(c) - CoeffOps<C>::to_complex(b.get(w))));
    for (auto& [w, c] : b.values)
        m = std::max(m, std::abs(CoeffOps<C>::to_complex(c) - CoeffOps<C>::to_complex(a.get(w))));
    return m;
}

// Inverts "multiply by the Weyl numerator": reads off lambda -> m(lambda+rho)
// on the sub-window where the whole W-orbit of lambda+rho is visible.
// Checks antisymmetry of m wherever the orbit fits; throws if the window
// contains no usable dominant point or if antisymmetry fails beyond tol.
template <class C>
std::map<WeightVec, C, GradedLexLess> dirac_induction(const RootDatum& d,
                                                      const std::vector<WeylElement>& wl,
                                                      const WindowedMultiplicityT<C>& m,
                                                      double tol = 1e-9) {
    std::map<WeightVec, C, GradedLexLess> out;
    bool any_usable = false;
    WeightVec mu = m.window.lo;
    // iterate every strictly dominant mu = lambda + rho in the window
    for (bool more = true; more; more = m.window.next(mu)) {
        bool strict = true;
        for (long long c : mu) strict = strict && c >= 1;
        if (!strict) continue;
        bool orbit_fits = true;
        for (const auto& w : wl)
            orbit_fits = orbit_fits && m.window.contains(rootsys::act_on_weight(w, mu));
        if (!orbit_fits) continue;
        any_usable = true;
        C base = m.get(mu);
        for (const auto& w : wl) {
            C expect = w.sign() > 0 ? base : C(0) - base;
            C got = m.get(rootsys::act_on_weight(w, mu));
            if (std::abs(CoeffOps<C>::to_complex(got) - CoeffOps<C>::to_complex(expect)) > tol)
                throw std::domain_error("windowed multiplicity is not Weyl-antisymmetric");
        }
        if (!CoeffOps<C>::negligible(base)) {
            WeightVec lambda(mu);
            for (int i = 0; i < d.rank; ++i) lambda[i] -= d.rho[i];
            out.emplace(lambda, base);
        }
    }
    if (!any_usable)
        throw std::domain_error("window too small: no dominant orbit fits inside it");
    return out;
}

// Deviation of m from Weyl antisymmetry over all pairs visible in the window.
template <class C>
double weyl_antisymmetry_deviation(const std::vector<WeylElement>& wl,
                                   const WindowedMultiplicityT<C>& m) {
    double dev = 0;
    WeightVec mu = m.window.lo;
    for (bool more = true; more; more = m.window.next(mu)) {
        Cpx base = CoeffOps<C>::to_complex(m.get(mu));
        for (const auto& w : wl) {
            WeightVec img = rootsys::act_on_weight(w, mu);
            if (!m.window.contains(img)) continue;
            Cpx got = CoeffOps<C>::to_complex(m.get(img));
            dev = std::max(dev, std::abs(got - double(w.sign()) * base));
        }
    }
    return dev;
}

// Value of p at the jet u(t): a truncated scalar series.
jetcalc::CSeries evaluate_at_jet(const LaurentPoly& p, const jetcalc::TorusJet& jet, int N);

} // namespace loopidx::charring
