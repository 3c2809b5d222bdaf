#pragma once

/**
 * @file floquet.hpp
 * @brief Monodromy matrix of a k-periodic equation, its Floquet multipliers,
 *        and its 2x2 spectral form.
 *
 * The monodromy C_k = A_{k-1} ... A_0 has det C_k = (-1)^k, so its
 * eigenvalues (the Floquet multipliers) are
 *
 *   Phi^{+-} = (T +- sqrt(T^2 - 4(-1)^k)) / 2,   T = tr C_k = T_k(1).
 *
 * The spectral form is one of
 *  - Diagonalizable:  C = J diag(Phi-, Phi+) J^{-1}
 *  - Defective:       C = J [[mu, 1], [0, mu]] J^{-1}, C != mu I
 *  - ScalarMultiple:  C = mu I
 *
 * When the discriminant has no Gaussian-rational root, an exact C is
 * decomposed on the float backend.
 */

#include <algorithm>
#include <cfloat>
#include <cstdint>
#include <type_traits>
#include <variant>

#include "floquetfib/combinatorics.hpp"
#include "floquetfib/matrices.hpp"
#include "floquetfib/numeric.hpp"

namespace floquetfib {

struct Diagonalizable {
    Mat2 J, Jinv;
    Scalar lambda_minus, lambda_plus;
};

struct Defective {
    Scalar mu;
    Mat2 J, Jinv;
};

struct ScalarMultiple {
    Scalar mu;
};

using SpectralForm = std::variant<Diagonalizable, Defective, ScalarMultiple>;

struct FloquetData {
    std::size_t k = 1;
    Scalar trace;
    Scalar det;
    Scalar phi_minus;
    Scalar phi_plus;
    SpectralForm form;

    /// Backend the decomposition was carried out on.
    Backend backend() const { return phi_plus.backend(); }
};

inline std::string_view form_name(const SpectralForm& form) {
    switch (form.index()) {
        case 0: return "Diagonalizable";
        case 1: return "Defective";
        default: return "ScalarMultiple";
    }
}

/// (-1)^k on the given backend.
inline Scalar sign_power(std::size_t k, Backend b) { return Scalar::from_int(k % 2 == 0 ? 1 : -1, b); }

/// C_k over one period, through the Omega closed form.
inline Mat2 monodromy(const CoeffSequence& seq) { return product_closed_form(seq, seq.period()); }

/// (Phi-, Phi+) on the principal square-root branch. An exact trace whose
/// discriminant is not a Gaussian-rational square yields float multipliers.
inline std::pair<Scalar, Scalar> floquet_multipliers(const Scalar& trace, std::size_t k) {
    const Scalar four = Scalar::from_int(4, trace.backend());
    const Scalar disc = trace * trace - four * sign_power(k, trace.backend());
    const Scalar root = sqrt(disc);
    const Scalar t = root.backend() == trace.backend() ? trace : trace.to_float().with_downgrade_flag(true);
    const Scalar two = Scalar::from_int(2, t.backend());
    return {(t - root) / two, (t + root) / two};
}

namespace detail {

inline Vec2 eigenvector(const Mat2& c, const Scalar& lambda, const Tolerance& tol) {
    const double scale = c.max_abs();
    auto negligible = [&](const Scalar& x) { return x.is_exact() ? x.is_zero() : tol.close(x.abs(), scale); };
    if (!negligible(c.e21)) return {lambda - c.e22, c.e21};
    if (!negligible(c.e12)) return {c.e12, lambda - c.e11};
    const Backend b = c.backend();
    // Diagonal matrix: pick the coordinate axis whose diagonal entry is lambda.
    if ((lambda - c.e11).abs() <= (lambda - c.e22).abs()) return {Scalar::one(b), Scalar::zero(b)};
    return {Scalar::zero(b), Scalar::one(b)};
}

inline Mat2 from_columns(const Vec2& left, const Vec2& right) { return {left.first, right.first, left.second, right.second}; }

inline Mat2 checked_inverse(const Mat2& j) {
    const Scalar d = mat_det(j);
    const double scale = j.max_abs();
    const bool singular = d.is_exact() ? d.is_zero() : d.abs() <= 64 * DBL_EPSILON * scale * scale;
    if (singular) throw Error(ErrorCode::SingularJ, "eigenvector matrix is singular");
    return mat_inverse(j);
}

}  // namespace detail

/// Spectral (Jordan) form of a monodromy matrix C with det C = (-1)^k.
inline FloquetData spectral_form(const Mat2& c_in, std::size_t k, const Tolerance& tol = {}) {
    const Scalar expected_det = sign_power(k, c_in.backend());
    if (!approx_equal(mat_det(c_in), expected_det, tol))
        throw Error(ErrorCode::PreconditionViolated, "monodromy determinant differs from (-1)^k");

    FloquetData fd;
    fd.k = k;
    auto [phi_minus, phi_plus] = floquet_multipliers(mat_trace(c_in), k);
    const Mat2 c = c_in.to_backend(phi_plus.backend());
    const bool downgraded = phi_plus.downgraded();
    fd.trace = mat_trace(c);
    fd.det = mat_det(c);
    fd.phi_minus = phi_minus;
    fd.phi_plus = phi_plus;

    const double scale = c.max_abs();
    auto negligible = [&](const Scalar& x) { return x.is_exact() ? x.is_zero() : tol.close(x.abs(), scale); };

    if (negligible(c.e12) && negligible(c.e21) && negligible(c.e11 - c.e22)) {
        fd.form = ScalarMultiple{c.e11};
        return fd;
    }

    // Repeated multiplier: T^2 = 4(-1)^k, judged on the discriminant so a float
    // trace within rounding of +-2 is not split into two nearby eigenvalues.
    const Scalar trace_in = mat_trace(c_in);
    const Scalar disc = trace_in * trace_in - Scalar::from_int(4, c_in.backend()) * expected_det;
    const bool repeated =
        disc.is_exact() ? disc.is_zero() : tol.close(disc.abs(), std::max(4.0, trace_in.abs() * trace_in.abs()));
    if (repeated) {
        const Backend b = c.backend();
        const Scalar mu = (fd.trace / Scalar::from_int(2, b)).with_downgrade_flag(downgraded);
        // J = [v1 v2] with v2 a coordinate vector and v1 = (C - mu I) v2.
        Vec2 v1, v2;
        if (!negligible(c.e21)) {
            v1 = {mu - c.e22, c.e21};
            v2 = {Scalar::one(b), Scalar::zero(b)};
        } else {
            v1 = {c.e12, mu - c.e11};
            v2 = {Scalar::zero(b), Scalar::one(b)};
        }
        Mat2 j = detail::from_columns(v1, v2);
        fd.form = Defective{mu, j, detail::checked_inverse(j)};
        return fd;
    }

    Mat2 j = detail::from_columns(detail::eigenvector(c, phi_minus, tol), detail::eigenvector(c, phi_plus, tol));
    fd.form = Diagonalizable{j, detail::checked_inverse(j), phi_minus, phi_plus};
    return fd;
}

/// Convenience: monodromy of the sequence followed by its spectral form.
inline FloquetData floquet_data(const CoeffSequence& seq, const Tolerance& tol = {}) {
    return spectral_form(monodromy(seq), seq.period(), tol);
}

/// C^n from the spectral form of C.
inline Mat2 monodromy_power(const FloquetData& fd, const Mat2& /*c*/, std::uint64_t n) {
    return std::visit(
        [n](const auto& form) -> Mat2 {
            using F = std::decay_t<decltype(form)>;
            if constexpr (std::is_same_v<F, ScalarMultiple>) {
                return Mat2::scalar_multiple(pow(form.mu, n));
            } else if constexpr (std::is_same_v<F, Defective>) {
                const Backend b = form.mu.backend();
                const Scalar mu_n = pow(form.mu, n);
                const Scalar off = n == 0 ? Scalar::zero(b)
                                          : Scalar::from_int(static_cast<long>(n), b) * pow(form.mu, n - 1);
                const Mat2 block{mu_n, off, Scalar::zero(b), mu_n};
                return form.J * block * form.Jinv;
            } else {
                const Backend b = form.lambda_plus.backend();
                const Mat2 lambda_n{pow(form.lambda_minus, n), Scalar::zero(b), Scalar::zero(b),
                                    pow(form.lambda_plus, n)};
                return form.J * lambda_n * form.Jinv;
            }
        },
        fd.form);
}

}  // namespace floquetfib
