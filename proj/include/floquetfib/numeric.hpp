#pragma once

/**
 * @file numeric.hpp
 * @brief Complex scalars over two backends.
 *
 * `Scalar` is either an exact Gaussian rational (arbitrary precision real and
 * imaginary parts, via GMP) or a binary64 complex number. Arithmetic never
 * mixes backends: combining an exact and a float operand throws
 * BackendMismatch. Conversions are explicit (`to_float()`).
 *
 * The float backend never returns NaN: any NaN-producing operation throws.
 */

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cfloat>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "floquetfib/error.hpp"

namespace floquetfib {

enum class Backend { Exact, Float };

inline std::string_view backend_name(Backend b) { return b == Backend::Exact ? "exact" : "float"; }

inline Backend parse_backend(std::string_view s) {
    if (s == "exact") return Backend::Exact;
    if (s == "float") return Backend::Float;
    throw Error(ErrorCode::ParseError, "unknown backend '" + std::string(s) + "'");
}

/// Comparison policy for the float backend. Exact comparisons ignore it.
struct Tolerance {
    double abs_eps = 1e-9;
    double rel_eps = 1e-9;

    bool close(double diff, double scale) const { return diff <= abs_eps + rel_eps * scale; }
};

// --------------------------------------------------------------------------
// Rational helpers
// --------------------------------------------------------------------------

namespace detail {

inline mpq_class make_rational(mpz_class num, mpz_class den = 1) {
    if (den == 0) throw Error(ErrorCode::DivisionByZero, "rational with zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

/// Square root of a non-negative rational if it is a perfect square.
inline bool rational_sqrt(const mpq_class& q, mpq_class& out) {
    if (sgn(q) < 0) return false;
    const mpz_class& num = q.get_num();
    const mpz_class& den = q.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return false;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    out = make_rational(rn, rd);
    return true;
}

}  // namespace detail

/// Parses "p/q", an integer, or a decimal with optional exponent ("-1.25e-3")
/// into an exact rational.
inline mpq_class parse_rational(std::string_view text) {
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    if (s.empty()) throw Error(ErrorCode::ParseError, "empty rational");
    auto bad = [&] { return Error(ErrorCode::ParseError, "malformed rational '" + std::string(text) + "'"); };

    if (auto slash = s.find('/'); slash != std::string::npos) {
        mpz_class num, den;
        if (num.set_str(s.substr(0, slash), 10) != 0 || den.set_str(s.substr(slash + 1), 10) != 0) throw bad();
        if (den == 0) throw Error(ErrorCode::DivisionByZero, "rational with zero denominator");
        return detail::make_rational(num, den);
    }

    std::size_t pos = 0;
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
    std::string digits;
    long frac_digits = 0;
    bool seen_point = false;
    for (; pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.'); ++pos) {
        if (s[pos] == '.') {
            if (seen_point) throw bad();
            seen_point = true;
        } else {
            digits.push_back(s[pos]);
            if (seen_point) ++frac_digits;
        }
    }
    if (digits.empty()) throw bad();
    long exponent = 0;
    if (pos < s.size()) {
        if (s[pos] != 'e' && s[pos] != 'E') throw bad();
        try {
            std::size_t used = 0;
            exponent = std::stol(s.substr(pos + 1), &used);
            if (used != s.size() - pos - 1) throw bad();
        } catch (const std::logic_error&) {
            throw bad();
        }
    }
    mpz_class mantissa(digits, 10);
    if (negative) mantissa = -mantissa;
    long shift = exponent - frac_digits;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    return shift < 0 ? detail::make_rational(mantissa, scale) : detail::make_rational(mantissa * scale);
}

/// Canonical "p/q" (or "p" for integers).
inline std::string rational_string(const mpq_class& q) { return q.get_str(); }

// --------------------------------------------------------------------------
// GaussianRational
// --------------------------------------------------------------------------

class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }

    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

    friend GaussianRational operator+(const GaussianRational& x, const GaussianRational& y) {
        return {mpq_class(x.re_ + y.re_), mpq_class(x.im_ + y.im_)};
    }
    friend GaussianRational operator-(const GaussianRational& x, const GaussianRational& y) {
        return {mpq_class(x.re_ - y.re_), mpq_class(x.im_ - y.im_)};
    }
    friend GaussianRational operator*(const GaussianRational& x, const GaussianRational& y) {
        if (sgn(x.im_) == 0 && sgn(y.im_) == 0) return {mpq_class(x.re_ * y.re_), mpq_class(0)};
        return {mpq_class(x.re_ * y.re_ - x.im_ * y.im_), mpq_class(x.re_ * y.im_ + x.im_ * y.re_)};
    }
    friend GaussianRational operator/(const GaussianRational& x, const GaussianRational& y) {
        if (y.is_zero()) throw Error(ErrorCode::DivisionByZero, "exact division by zero");
        if (sgn(y.im_) == 0) return {mpq_class(x.re_ / y.re_), mpq_class(x.im_ / y.re_)};
        mpq_class norm = y.re_ * y.re_ + y.im_ * y.im_;
        return {mpq_class((x.re_ * y.re_ + x.im_ * y.im_) / norm), mpq_class((x.im_ * y.re_ - x.re_ * y.im_) / norm)};
    }
    GaussianRational operator-() const { return {mpq_class(-re_), mpq_class(-im_)}; }

    friend bool operator==(const GaussianRational& x, const GaussianRational& y) {
        return x.re_ == y.re_ && x.im_ == y.im_;
    }

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

// --------------------------------------------------------------------------
// Scalar
// --------------------------------------------------------------------------

class Scalar {
public:
    using Complex = std::complex<double>;

    Scalar() : value_(GaussianRational{}) {}

    static Scalar exact(const mpq_class& re, const mpq_class& im = 0) { return Scalar(GaussianRational(re, im)); }
    static Scalar exact(long re) { return exact(mpq_class(re)); }
    static Scalar rational(long num, long den) { return exact(detail::make_rational(num, den)); }
    static Scalar floating(double re, double im = 0.0) { return Scalar(Complex(re, im)); }
    static Scalar floating(Complex z) { return Scalar(z); }

    static Scalar from_int(long v, Backend b) { return b == Backend::Exact ? exact(v) : floating(double(v)); }
    static Scalar zero(Backend b) { return from_int(0, b); }
    static Scalar one(Backend b) { return from_int(1, b); }

    Backend backend() const { return std::holds_alternative<GaussianRational>(value_) ? Backend::Exact : Backend::Float; }
    bool is_exact() const { return backend() == Backend::Exact; }

    /// True when this value descends from an irrational square root of an
    /// exact input and was therefore computed on the float backend.
    bool downgraded() const { return downgraded_; }
    Scalar with_downgrade_flag(bool flag) const {
        Scalar s = *this;
        s.downgraded_ = flag;
        return s;
    }

    const GaussianRational& exact_value() const {
        if (!is_exact()) throw Error(ErrorCode::BackendMismatch, "exact value requested from a float scalar");
        return std::get<GaussianRational>(value_);
    }

    Complex to_complex() const {
        if (is_exact()) return std::get<GaussianRational>(value_).to_complex();
        return std::get<Complex>(value_);
    }

    Scalar to_float() const {
        Scalar s(to_complex());
        s.downgraded_ = downgraded_;
        return s;
    }

    Scalar to_backend(Backend b) const {
        if (b == backend()) return *this;
        if (b == Backend::Float) return to_float();
        throw Error(ErrorCode::BackendMismatch, "cannot promote a float scalar to the exact backend");
    }

    double real() const { return to_complex().real(); }
    double imag() const { return to_complex().imag(); }
    double abs() const { return std::abs(to_complex()); }

    bool is_zero() const {
        if (is_exact()) return exact_value().is_zero();
        return std::get<Complex>(value_) == Complex(0.0, 0.0);
    }
    bool is_real() const {
        if (is_exact()) return sgn(exact_value().im()) == 0;
        return std::get<Complex>(value_).imag() == 0.0;
    }

    Scalar conj() const {
        if (is_exact()) return Scalar(GaussianRational(exact_value().re(), mpq_class(-exact_value().im())), downgraded_);
        return Scalar(std::conj(std::get<Complex>(value_)), downgraded_);
    }

    friend Scalar operator+(const Scalar& x, const Scalar& y) {
        return binary(x, y, [](const auto& a, const auto& b) { return a + b; });
    }
    friend Scalar operator-(const Scalar& x, const Scalar& y) {
        return binary(x, y, [](const auto& a, const auto& b) { return a - b; });
    }
    friend Scalar operator*(const Scalar& x, const Scalar& y) {
        return binary(x, y, [](const auto& a, const auto& b) { return a * b; });
    }
    friend Scalar operator/(const Scalar& x, const Scalar& y) {
        if (!y.is_exact() && y.backend() == x.backend() && y.abs() < DBL_MIN)
            throw Error(ErrorCode::DivisionByZero, "float division by a value below the underflow guard");
        return binary(x, y, [](const auto& a, const auto& b) { return a / b; });
    }
    Scalar operator-() const {
        if (is_exact()) return Scalar(-exact_value(), downgraded_);
        return Scalar(-std::get<Complex>(value_), downgraded_);
    }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    /// Structural equality: same backend and identical value.
    friend bool operator==(const Scalar& x, const Scalar& y) {
        if (x.backend() != y.backend()) return false;
        if (x.is_exact()) return x.exact_value() == y.exact_value();
        return std::get<Complex>(x.value_) == std::get<Complex>(y.value_);
    }

private:
    explicit Scalar(GaussianRational v, bool downgraded = false) : value_(std::move(v)), downgraded_(downgraded) {}
    explicit Scalar(Complex v, bool downgraded = false) : value_(v), downgraded_(downgraded) {
        if (std::isnan(v.real()) || std::isnan(v.imag())) throw Error(ErrorCode::NanProduced, "float operation produced NaN");
    }

    template <class Op>
    static Scalar binary(const Scalar& x, const Scalar& y, Op op) {
        if (x.backend() != y.backend())
            throw Error(ErrorCode::BackendMismatch, "cannot combine exact and float scalars");
        bool flag = x.downgraded_ || y.downgraded_;
        if (x.is_exact()) return Scalar(op(x.exact_value(), y.exact_value()), flag);
        return Scalar(op(std::get<Complex>(x.value_), std::get<Complex>(y.value_)), flag);
    }

    std::variant<GaussianRational, Complex> value_;
    bool downgraded_ = false;
};

inline Scalar operator*(long k, const Scalar& x) { return Scalar::from_int(k, x.backend()) * x; }

/// x^n by binary exponentiation.
inline Scalar pow(const Scalar& x, std::uint64_t n) {
    Scalar result = Scalar::one(x.backend()).with_downgrade_flag(x.downgraded());
    Scalar base = x;
    while (n > 0) {
        if (n & 1U) result *= base;
        n >>= 1U;
        if (n > 0) base *= base;
    }
    return result;
}

/**
 * Principal square root: branch cut on the negative real axis, result has
 * non-negative real part and non-negative imaginary part when the real part
 * is zero. Exact inputs stay exact only when a Gaussian-rational root exists;
 * otherwise the result is a float flagged with `downgraded()`.
 */
inline Scalar sqrt(const Scalar& x) {
    if (x.is_exact()) {
        const auto& g = x.exact_value();
        mpq_class root;
        if (sgn(g.im()) == 0) {
            if (sgn(g.re()) >= 0) {
                if (detail::rational_sqrt(g.re(), root)) return Scalar::exact(root).with_downgrade_flag(x.downgraded());
            } else if (detail::rational_sqrt(mpq_class(-g.re()), root)) {
                return Scalar::exact(mpq_class(0), root).with_downgrade_flag(x.downgraded());
            }
        } else {
            mpq_class modulus;
            if (detail::rational_sqrt(mpq_class(g.re() * g.re() + g.im() * g.im()), modulus)) {
                mpq_class re;
                if (detail::rational_sqrt(mpq_class((modulus + g.re()) / 2), re) && sgn(re) > 0) {
                    mpq_class im = g.im() / (2 * re);
                    return Scalar::exact(re, im).with_downgrade_flag(x.downgraded());
                }
            }
        }
        return sqrt(x.to_float()).with_downgrade_flag(true);
    }
    auto z = x.to_complex();
    z = {z.real(), z.imag() + 0.0};  // drop a negative zero so -4-0i maps to +2i
    auto r = std::sqrt(z);
    if (r.real() == 0.0 && r.imag() < 0.0) r = -r;
    return Scalar::floating(r).with_downgrade_flag(x.downgraded());
}

/// Equality under the comparison policy: structural on two exact values,
/// |x-y| <= abs_eps + rel_eps*max(|x|,|y|) otherwise (compared in binary64).
inline bool approx_equal(const Scalar& x, const Scalar& y, const Tolerance& tol = {}) {
    if (x.is_exact() && y.is_exact()) return x == y;
    auto a = x.to_complex();
    auto b = y.to_complex();
    return tol.close(std::abs(a - b), std::max(std::abs(a), std::abs(b)));
}

inline bool approx_zero(const Scalar& x, const Tolerance& tol = {}) {
    if (x.is_exact()) return x.is_zero();
    return x.abs() <= tol.abs_eps;
}

/// Real within tolerance (structurally real on the exact backend).
inline bool approx_real(const Scalar& x, const Tolerance& tol = {}) {
    if (x.is_exact()) return x.is_real();
    return tol.close(std::abs(x.imag()), std::abs(x.real()));
}

}  // namespace floquetfib
