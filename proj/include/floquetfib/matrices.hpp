#pragma once

/**
 * @file matrices.hpp
 * @brief 2x2 matrices over Scalar and products of Fibonacci matrices.
 *
 * C_n = A_{n-1} ... A_1 A_0 with A_i = [[a_i, 1], [1, 0]]. The closed form
 * expresses C_n through four Omega values at t = 1:
 *
 *   C_n = [[ Omega_n(a_0..a_{n-1}),   Omega_{n-1}(a_1..a_{n-1}) ],
 *          [ Omega_{n-1}(a_0..a_{n-2}), Omega_{n-2}(a_1..a_{n-2}) ]]
 */

#include <algorithm>
#include <cstddef>
#include <utility>

#include "floquetfib/combinatorics.hpp"
#include "floquetfib/numeric.hpp"

namespace floquetfib {

struct Vec2 {
    Scalar first;
    Scalar second;
};

/// Row-major 2x2 matrix; all entries share one backend.
struct Mat2 {
    Scalar e11, e12, e21, e22;

    static Mat2 identity(Backend b) { return {Scalar::one(b), Scalar::zero(b), Scalar::zero(b), Scalar::one(b)}; }
    static Mat2 scalar_multiple(const Scalar& mu) {
        auto z = Scalar::zero(mu.backend());
        return {mu, z, z, mu};
    }

    Backend backend() const { return e11.backend(); }

    Mat2 to_float() const { return {e11.to_float(), e12.to_float(), e21.to_float(), e22.to_float()}; }
    Mat2 to_backend(Backend b) const {
        return {e11.to_backend(b), e12.to_backend(b), e21.to_backend(b), e22.to_backend(b)};
    }

    double max_abs() const { return std::max({e11.abs(), e12.abs(), e21.abs(), e22.abs()}); }

    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.e11 * y.e11 + x.e12 * y.e21, x.e11 * y.e12 + x.e12 * y.e22,
                x.e21 * y.e11 + x.e22 * y.e21, x.e21 * y.e12 + x.e22 * y.e22};
    }
    friend Vec2 operator*(const Mat2& m, const Vec2& v) {
        return {m.e11 * v.first + m.e12 * v.second, m.e21 * v.first + m.e22 * v.second};
    }
    friend Mat2 operator*(const Scalar& s, const Mat2& m) { return {s * m.e11, s * m.e12, s * m.e21, s * m.e22}; }

    friend bool operator==(const Mat2&, const Mat2&) = default;
};

inline Mat2 fib_matrix(const Scalar& a) {
    return {a, Scalar::one(a.backend()), Scalar::one(a.backend()), Scalar::zero(a.backend())};
}

inline Mat2 mat_mul(const Mat2& x, const Mat2& y) { return x * y; }
inline Scalar mat_det(const Mat2& x) { return x.e11 * x.e22 - x.e12 * x.e21; }
inline Scalar mat_trace(const Mat2& x) { return x.e11 + x.e22; }

/// Inverse via the adjugate; throws DivisionByZero for a singular matrix.
inline Mat2 mat_inverse(const Mat2& x) {
    Scalar d = mat_det(x);
    if (d.is_zero()) throw Error(ErrorCode::DivisionByZero, "singular 2x2 matrix");
    return {x.e22 / d, -x.e12 / d, -x.e21 / d, x.e11 / d};
}

/// Entrywise comparison; float entries are compared against the larger
/// entry magnitude of the two matrices so small entries next to large ones
/// are judged at the matrix's scale.
inline bool approx_equal(const Mat2& x, const Mat2& y, const Tolerance& tol = {}) {
    if (x.backend() == Backend::Exact && y.backend() == Backend::Exact) return x == y;
    const double scale = std::max(x.max_abs(), y.max_abs());
    auto near = [&](const Scalar& a, const Scalar& b) {
        return tol.close(std::abs(a.to_complex() - b.to_complex()), scale);
    };
    return near(x.e11, y.e11) && near(x.e12, y.e12) && near(x.e21, y.e21) && near(x.e22, y.e22);
}

/// A_{n-1} (... (A_1 A_0)); identity for n = 0.
inline Mat2 product_iterative(const CoeffSequence& seq, std::size_t n) {
    seq.require(0, n);
    Mat2 c = Mat2::identity(seq.backend());
    for (std::size_t i = 0; i < n; ++i) c = fib_matrix(seq(i)) * c;
    return c;
}

/**
 * (Omega_len(1, a_L..a_{L+len-1}), Omega_{len-1}(1, a_L..a_{L+len-2})) via
 * the scalar recursion K_{j+1} = a_{L+j} K_j + K_{j-1}, K_0 = 1, K_1 = a_L.
 * Requires len >= 1.
 */
inline std::pair<Scalar, Scalar> omega_at_one(const CoeffSequence& seq, std::size_t start, std::size_t len) {
    const Backend b = seq.backend();
    Scalar prev = Scalar::one(b);
    Scalar cur = seq(start);
    for (std::size_t j = 1; j < len; ++j) {
        Scalar next = seq(start + j) * cur + prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return {cur, prev};
}

/// C_n from the four Omega values; n < 2 falls back to the running product.
inline Mat2 product_closed_form(const CoeffSequence& seq, std::size_t n) {
    if (n < 2) return product_iterative(seq, n);
    seq.require(0, n);
    auto [top_left, bottom_left] = omega_at_one(seq, 0, n);
    auto [top_right, bottom_right] = omega_at_one(seq, 1, n - 1);
    return {top_left, top_right, bottom_left, bottom_right};
}

}  // namespace floquetfib
