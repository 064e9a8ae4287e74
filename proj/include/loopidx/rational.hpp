#pragma once

#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace loopidx {

// Exact rational scalar on 64-bit numerator/denominator with 128-bit
// intermediates.  All lattice data handled by this project is tiny (weight
// coordinates, levels, window radii), so 64 bits is generous; if a computation
// ever leaves that range the request is out of contract and we throw rather
// than wrap.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    // Largest integer <= *this.
    long long floor() const {
        if (num_ >= 0) return num_ / den_;
        return -((-num_ + den_ - 1) / den_);
    }

    // Fractional part in [0, 1); the canonical representative mod 1.
    Rational frac() const { return *this - Rational(floor()); }

    double to_double() const { return double(num_) / double(den_); }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    // Accepts "p", "p/q", and plain decimal strings like "-0.25".
    static Rational parse(const std::string& s);

    friend Rational operator+(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                    i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                    i128(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }
    Rational operator-() const { Rational r; r.num_ = -num_; r.den_ = den_; return r; }
    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }
    Rational& operator*=(const Rational& b) { return *this = *this * b; }
    Rational& operator/=(const Rational& b) { return *this = *this / b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

private:
    using i128 = __int128;

    static long long clamp(i128 v) {
        if (v > i128(INT64_MAX) || v < i128(INT64_MIN))
            throw std::overflow_error("rational arithmetic exceeded 64-bit range");
        return (long long)v;
    }

    static Rational make(i128 n, i128 d) {
        if (d == 0) throw std::domain_error("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        i128 an = n < 0 ? -n : n;
        i128 g = gcd128(an, d);
        if (g > 1) { n /= g; d /= g; }
        Rational r;
        r.num_ = clamp(n);
        r.den_ = clamp(d);
        return r;
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b) { i128 t = a % b; a = b; b = t; }
        return a < 0 ? -a : a;
    }

    void normalize() { *this = make(num_, den_); }

    long long num_;
    long long den_;
};

inline Rational Rational::parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        long long n = std::stoll(s.substr(0, slash));
        long long d = std::stoll(s.substr(slash + 1));
        return Rational(n, d);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(std::stoll(s));
    std::string head = s.substr(0, dot), tail = s.substr(dot + 1);
    bool neg = !head.empty() && head[0] == '-';
    long long ip = head.empty() || head == "-" || head == "+" ? 0 : std::stoll(head);
    if (tail.size() > 18) throw std::invalid_argument("decimal literal too long: " + s);
    long long den = 1;
    for (size_t i = 0; i < tail.size(); ++i) den *= 10;
    long long fp = tail.empty() ? 0 : std::stoll(tail);
    Rational r = Rational(ip < 0 ? -ip : ip) + Rational(fp, den);
    return (neg || ip < 0) ? -r : r;
}

// Element of Q(i); the exact coefficient ring for character identities.  The
// values that actually occur in exact mode are integers and small rationals,
// but division (used by the character quotient) needs the full field.
struct GaussianRational {
    Rational re, im;

    GaussianRational() {}
    GaussianRational(long long n) : re(n) {}
    GaussianRational(Rational r) : re(r) {}
    GaussianRational(Rational r, Rational i) : re(r), im(i) {}

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    GaussianRational conj() const { return {re, -im}; }

    std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    GaussianRational operator-() const { return {-re, -im}; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        Rational n2 = b.re * b.re + b.im * b.im;
        if (n2.is_zero()) throw std::domain_error("gaussian-rational division by zero");
        GaussianRational num = a * b.conj();
        return {num.re / n2, num.im / n2};
    }
    GaussianRational& operator+=(const GaussianRational& b) { return *this = *this + b; }
    GaussianRational& operator-=(const GaussianRational& b) { return *this = *this - b; }
    GaussianRational& operator*=(const GaussianRational& b) { return *this = *this * b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    std::string str() const {
        if (im.is_zero()) return re.str();
        return re.str() + (im > Rational(0) ? "+" : "") + im.str() + "i";
    }
};

} // namespace loopidx
