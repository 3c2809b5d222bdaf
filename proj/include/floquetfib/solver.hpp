#pragma once

/**
 * @file solver.hpp
 * @brief Solutions of x_{n+2} = a_n x_{n+1} + x_n: direct iteration, Binet
 *        closed forms, quotient limit cycles, and classification of the
 *        periodic case.
 *
 * State vectors are X_n = (x_{n+1}, x_n), so X_{n+1} = A_n X_n and
 * X_{mk} = C_k^m X_0 for a k-periodic sequence.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "floquetfib/combinatorics.hpp"
#include "floquetfib/floquet.hpp"
#include "floquetfib/matrices.hpp"
#include "floquetfib/numeric.hpp"

namespace floquetfib {

// --------------------------------------------------------------------------
// Problem
// --------------------------------------------------------------------------

struct Problem {
    CoeffSequence seq;
    Scalar x0;
    Scalar x1;

    Problem(CoeffSequence s, Scalar initial0, Scalar initial1)
        : seq(std::move(s)), x0(std::move(initial0)), x1(std::move(initial1)) {
        if (x0.backend() != seq.backend() || x1.backend() != seq.backend())
            throw Error(ErrorCode::BackendMismatch, "initial conditions and coefficients use different backends");
    }

    Backend backend() const { return seq.backend(); }
    Problem to_float() const { return {seq.to_float(), x0.to_float(), x1.to_float()}; }
};

// --------------------------------------------------------------------------
// ProjectiveScalar
// --------------------------------------------------------------------------

/// A scalar or the point at infinity; produced by quotients.
class ProjectiveScalar {
public:
    static ProjectiveScalar infinity() { return ProjectiveScalar(); }
    static ProjectiveScalar finite(Scalar v) { return ProjectiveScalar(std::move(v)); }

    /// num / den, infinite when den vanishes (exactly, or below abs_eps for floats).
    static ProjectiveScalar quotient(const Scalar& num, const Scalar& den, const Tolerance& tol = {}) {
        if (approx_zero(den, tol)) return infinity();
        return finite(num / den);
    }

    bool is_infinite() const { return !value_.has_value(); }
    const Scalar& value() const {
        if (!value_) throw Error(ErrorCode::InvalidArgument, "value requested from the point at infinity");
        return *value_;
    }

    friend bool operator==(const ProjectiveScalar&, const ProjectiveScalar&) = default;

private:
    ProjectiveScalar() = default;
    explicit ProjectiveScalar(Scalar v) : value_(std::move(v)) {}

    std::optional<Scalar> value_;
};

inline bool approx_equal(const ProjectiveScalar& x, const ProjectiveScalar& y, const Tolerance& tol = {}) {
    if (x.is_infinite() || y.is_infinite()) return x.is_infinite() && y.is_infinite();
    return approx_equal(x.value(), y.value(), tol);
}

/// L -> (a L + 1) / L, with 0 -> infinity and infinity -> a.
inline ProjectiveScalar quotient_step(const ProjectiveScalar& l, const Scalar& a, const Tolerance& tol = {}) {
    if (l.is_infinite()) return ProjectiveScalar::finite(a);
    return ProjectiveScalar::quotient(a * l.value() + Scalar::one(a.backend()), l.value(), tol);
}

// --------------------------------------------------------------------------
// SolutionClass
// --------------------------------------------------------------------------

struct PeriodicOrbit {
    std::size_t period = 1;
    std::vector<Scalar> cycle;
    std::optional<double> theta;                   // principal argument of Phi+ on the unit circle
    std::optional<std::size_t> monodromy_period;  // smallest P with C_k^P = I
};

enum class Dominance { Minus, Plus, Jordan, None };

inline std::string_view dominance_name(Dominance d) {
    switch (d) {
        case Dominance::Minus: return "minus";
        case Dominance::Plus: return "plus";
        case Dominance::Jordan: return "jordan";
        case Dominance::None: return "none";
    }
    return "none";
}

struct QuotientLimitCycle {
    std::vector<ProjectiveScalar> values;
    Dominance dominant = Dominance::Plus;
};

/// Dynamics the closed forms cannot summarize as an orbit or a quotient cycle.
struct DegenerateRay {
    std::string kind;  // "subdominant-ray", "quasi-periodic", "no-dominant-multiplier", ...
    std::string description;
};

using SolutionClass = std::variant<PeriodicOrbit, QuotientLimitCycle, DegenerateRay>;

inline std::string_view class_name(const SolutionClass& c) {
    switch (c.index()) {
        case 0: return "PeriodicOrbit";
        case 1: return "QuotientLimitCycle";
        default: return "DegenerateRay";
    }
}

// --------------------------------------------------------------------------
// Iteration
// --------------------------------------------------------------------------

/// x_0 .. x_N by the recurrence itself.
inline std::vector<Scalar> iterate(const Problem& p, std::size_t steps) {
    if (steps < 1) throw Error(ErrorCode::InvalidArgument, "iterate needs at least one step");
    p.seq.require(0, steps - 1);
    std::vector<Scalar> xs;
    xs.reserve(steps + 1);
    xs.push_back(p.x0);
    xs.push_back(p.x1);
    for (std::size_t n = 0; n + 2 <= steps; ++n) xs.push_back(p.seq(n) * xs[n + 1] + xs[n]);
    return xs;
}

/// q_n = x_{n+1} / x_n for n = 0 .. N-1; infinite where x_n = 0.
inline std::vector<ProjectiveScalar> quotient_series(const Problem& p, std::size_t steps) {
    if (steps < 1) throw Error(ErrorCode::InvalidArgument, "quotient series needs at least one step");
    const auto xs = iterate(p, steps);
    std::vector<ProjectiveScalar> qs;
    qs.reserve(steps);
    for (std::size_t n = 0; n < steps; ++n)
        qs.push_back(xs[n].is_zero() ? ProjectiveScalar::infinity() : ProjectiveScalar::finite(xs[n + 1] / xs[n]));
    return qs;
}

// --------------------------------------------------------------------------
// Binet closed form
// --------------------------------------------------------------------------

namespace detail {

inline void require_matching_period(const Problem& p, const FloquetData& fd) {
    if (p.seq.period() != fd.k)
        throw Error(ErrorCode::InvalidArgument, "Floquet data period does not match the problem's period");
}

/// Jinv X_0 on the decomposition's backend.
inline Vec2 spectral_coefficients(const Mat2& jinv, const Problem& p) {
    const Backend b = jinv.backend();
    return jinv * Vec2{p.x1.to_backend(b), p.x0.to_backend(b)};
}

}  // namespace detail

/// X_{mk} = C_k^m X_0 from the spectral form.
inline Vec2 block_state(const Problem& p, const FloquetData& fd, std::uint64_t m) {
    detail::require_matching_period(p, fd);
    return std::visit(
        [&](const auto& form) -> Vec2 {
            using F = std::decay_t<decltype(form)>;
            if constexpr (std::is_same_v<F, ScalarMultiple>) {
                const Backend b = form.mu.backend();
                const Scalar s = pow(form.mu, m);
                return {s * p.x1.to_backend(b), s * p.x0.to_backend(b)};
            } else if constexpr (std::is_same_v<F, Defective>) {
                const Backend b = form.mu.backend();
                const Vec2 c = detail::spectral_coefficients(form.Jinv, p);
                const Scalar mu_m = pow(form.mu, m);
                const Scalar ramp =
                    m == 0 ? Scalar::zero(b) : Scalar::from_int(static_cast<long>(m), b) * pow(form.mu, m - 1);
                const Scalar w1 = mu_m * c.first + ramp * c.second;
                const Scalar w2 = mu_m * c.second;
                return {w1 * form.J.e11 + w2 * form.J.e12, w1 * form.J.e21 + w2 * form.J.e22};
            } else {
                const Vec2 c = detail::spectral_coefficients(form.Jinv, p);
                const Scalar w1 = c.first * pow(form.lambda_minus, m);
                const Scalar w2 = c.second * pow(form.lambda_plus, m);
                return {w1 * form.J.e11 + w2 * form.J.e12, w1 * form.J.e21 + w2 * form.J.e22};
            }
        },
        fd.form);
}

/// x_n via n = mk + r: block state from the multipliers, then r in-block
/// recurrence steps x_{mk+i+2} = a_i x_{mk+i+1} + x_{mk+i}.
inline Scalar binet_solution(const Problem& p, const FloquetData& fd, std::uint64_t n) {
    const std::size_t k = fd.k;
    const std::uint64_t m = n / k;
    const std::size_t r = static_cast<std::size_t>(n % k);
    const Vec2 state = block_state(p, fd, m);
    Scalar hi = state.first;
    Scalar lo = state.second;
    if (r == 0) return lo;
    const Backend b = hi.backend();
    for (std::size_t i = 0; i + 1 < r; ++i) {
        Scalar next = p.seq(i).to_backend(b) * hi + lo;
        lo = std::move(hi);
        hi = std::move(next);
    }
    return hi;
}

// --------------------------------------------------------------------------
// Quotient limit cycles
// --------------------------------------------------------------------------

namespace detail {

inline QuotientLimitCycle close_cycle(const Problem& p, ProjectiveScalar first, Dominance dominant,
                                      const Tolerance& tol) {
    QuotientLimitCycle out;
    out.dominant = dominant;
    const std::size_t k = p.seq.period();
    const Backend b = first.is_infinite() ? p.backend() : first.value().backend();
    out.values.push_back(std::move(first));
    for (std::size_t i = 0; i + 1 < k; ++i)
        out.values.push_back(quotient_step(out.values.back(), p.seq(i).to_backend(b), tol));
    return out;
}

inline bool both_zero(const Problem& p) { return p.x0.is_zero() && p.x1.is_zero(); }

}  // namespace detail

/**
 * Limits L_j of x_{mk+j+1}/x_{mk+j} as m grows.
 *
 * With c = J^{-1} X_0 the block ratio is
 *   x_{mk+1}/x_{mk} = (alpha Phi-^m + beta Phi+^m) / (delta Phi-^m + gamma Phi+^m),
 *   alpha = J11 c1, beta = J12 c2, delta = J21 c1, gamma = J22 c2,
 * so L_0 = beta/gamma when Phi+ dominates and alpha/delta when Phi- does.
 * A defective monodromy grows linearly along its eigenvector, giving
 * L_0 = J11/J21. Later values follow L_{j+1} = (a_j L_j + 1)/L_j.
 */
inline SolutionClass quotient_limit_cycle(const Problem& p, const FloquetData& fd, const Tolerance& tol = {}) {
    detail::require_matching_period(p, fd);
    if (detail::both_zero(p)) return DegenerateRay{"zero-solution", "x0 = x1 = 0; every quotient is undefined"};

    return std::visit(
        [&](const auto& form) -> SolutionClass {
            using F = std::decay_t<decltype(form)>;
            if constexpr (std::is_same_v<F, ScalarMultiple>) {
                const Backend b = form.mu.backend();
                auto first = ProjectiveScalar::quotient(p.x1.to_backend(b), p.x0.to_backend(b), tol);
                return detail::close_cycle(p, std::move(first), Dominance::None, tol);
            } else if constexpr (std::is_same_v<F, Defective>) {
                auto first = ProjectiveScalar::quotient(form.J.e11, form.J.e21, tol);
                return detail::close_cycle(p, std::move(first), Dominance::Jordan, tol);
            } else {
                const double mod_minus = form.lambda_minus.abs();
                const double mod_plus = form.lambda_plus.abs();
                if (tol.close(std::abs(mod_minus - mod_plus), std::max(mod_minus, mod_plus)))
                    return DegenerateRay{"no-dominant-multiplier",
                                         "|Phi-| = |Phi+|; quotients do not settle on a cycle"};
                const Vec2 c = detail::spectral_coefficients(form.Jinv, p);
                const double scale = c.first.abs() + c.second.abs();
                auto negligible = [&](const Scalar& x) {
                    return x.is_exact() ? x.is_zero() : tol.close(x.abs(), scale);
                };
                if (mod_minus < mod_plus) {
                    if (negligible(c.second))
                        return DegenerateRay{"subdominant-ray",
                                             "initial condition lies on the Phi- eigendirection (gamma = 0)"};
                    const Scalar beta = form.J.e12 * c.second;
                    const Scalar gamma = form.J.e22 * c.second;
                    return detail::close_cycle(p, ProjectiveScalar::quotient(beta, gamma, tol), Dominance::Plus, tol);
                }
                if (negligible(c.first))
                    return DegenerateRay{"subdominant-ray",
                                         "initial condition lies on the Phi+ eigendirection (delta = 0)"};
                const Scalar alpha = form.J.e11 * c.first;
                const Scalar delta = form.J.e21 * c.first;
                return detail::close_cycle(p, ProjectiveScalar::quotient(alpha, delta, tol), Dominance::Minus, tol);
            }
        },
        fd.form);
}

// --------------------------------------------------------------------------
// Periodicity
// --------------------------------------------------------------------------

/// x_{n+period} = x_n for every n <= 2*period.
inline bool has_period(const std::vector<Scalar>& xs, std::size_t period, const Tolerance& tol = {}) {
    if (period == 0 || xs.size() < 3 * period + 1) return false;
    for (std::size_t n = 0; n <= 2 * period; ++n)
        if (!approx_equal(xs[n + period], xs[n], tol)) return false;
    return true;
}

/// Smallest divisor of `candidate` that passes has_period, if candidate itself passes.
inline std::optional<std::size_t> minimal_period(const Problem& p, std::size_t candidate, const Tolerance& tol = {}) {
    if (candidate == 0) return std::nullopt;
    const auto xs = iterate(p, 3 * candidate);
    if (!has_period(xs, candidate, tol)) return std::nullopt;
    for (std::size_t d = 1; d < candidate; ++d)
        if (candidate % d == 0 && has_period(xs, d, tol)) return d;
    return candidate;
}

/// Order of z as a root of unity, searched up to `limit`.
inline std::optional<std::size_t> root_of_unity_order(const Scalar& z, std::size_t limit = 1024,
                                                      const Tolerance& tol = {}) {
    const Scalar one = Scalar::one(z.backend());
    if (z.is_exact()) {
        // Gaussian-rational roots of unity are 1, -1, i, -i.
        Scalar power = z;
        for (std::size_t order = 1; order <= 4; ++order, power *= z)
            if (power == one) return order;
        return std::nullopt;
    }
    if (!tol.close(std::abs(z.abs() - 1.0), 1.0)) return std::nullopt;
    Scalar power = z;
    for (std::size_t order = 1; order <= limit; ++order, power *= z)
        if (approx_equal(power, one, tol)) return order;
    return std::nullopt;
}

namespace detail {

inline SolutionClass confirmed_orbit(const Problem& p, std::size_t candidate, std::optional<double> theta,
                                     std::optional<std::size_t> monodromy_period, const Tolerance& tol) {
    auto period = minimal_period(p, candidate, tol);
    if (!period)
        return DegenerateRay{"unconfirmed-period",
                             "predicted period " + std::to_string(candidate) + " failed the iteration check"};
    PeriodicOrbit orbit;
    orbit.period = *period;
    auto xs = iterate(p, std::max<std::size_t>(*period, 1));
    orbit.cycle.assign(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(*period));
    orbit.theta = theta;
    orbit.monodromy_period = monodromy_period;
    return orbit;
}

/// Exact k-even rational trace with |T| < 2: Phi+ = e^{i theta} with
/// 2 cos theta = T rational, a root of unity only for T in {-1, 0, 1}.
inline std::optional<std::size_t> rational_trace_order(const mpq_class& t) {
    if (t == -1) return 3;
    if (t == 0) return 4;
    if (t == 1) return 6;
    return std::nullopt;
}

}  // namespace detail

/**
 * Classifies the dynamics of a periodic problem:
 *  - zero initial data, C = mu I, or multipliers that are roots of unity give
 *    a PeriodicOrbit whose period is confirmed (and minimized) by iteration;
 *  - a strictly dominant multiplier or a defective monodromy gives a
 *    QuotientLimitCycle;
 *  - unit-circle multipliers that are not roots of unity give a
 *    "quasi-periodic" DegenerateRay.
 */
inline SolutionClass classify(const Problem& p, const FloquetData& fd, const Tolerance& tol = {}) {
    detail::require_matching_period(p, fd);
    const std::size_t k = fd.k;
    if (detail::both_zero(p)) return detail::confirmed_orbit(p, 1, std::nullopt, std::nullopt, tol);

    if (const auto* scalar = std::get_if<ScalarMultiple>(&fd.form)) {
        auto order = root_of_unity_order(scalar->mu, 1024, tol);
        if (!order) return DegenerateRay{"quasi-periodic", "scalar monodromy is not a root of unity"};
        return detail::confirmed_orbit(p, k * *order, std::nullopt, *order, tol);
    }
    if (std::holds_alternative<Defective>(fd.form)) return quotient_limit_cycle(p, fd, tol);

    const auto& diag = std::get<Diagonalizable>(fd.form);
    const double mod_minus = diag.lambda_minus.abs();
    const double mod_plus = diag.lambda_plus.abs();
    if (!tol.close(std::abs(mod_minus - mod_plus), std::max(mod_minus, mod_plus))) return quotient_limit_cycle(p, fd, tol);

    // Both multipliers on the unit circle.
    const double theta = std::arg(diag.lambda_plus.to_complex());
    std::optional<std::size_t> order;
    bool decided = false;
    if (p.backend() == Backend::Exact && k % 2 == 0) {
        const Scalar exact_trace = mat_trace(monodromy(p.seq));
        if (exact_trace.is_real()) {
            order = detail::rational_trace_order(exact_trace.exact_value().re());
            decided = true;
        }
    }
    if (!decided) {
        auto om = root_of_unity_order(diag.lambda_minus, 1024, tol);
        auto op = root_of_unity_order(diag.lambda_plus, 1024, tol);
        if (om && op) order = std::lcm(*om, *op);
    }
    if (!order) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "unit-circle multipliers are not roots of unity (theta = %.12g)", theta);
        return DegenerateRay{"quasi-periodic", buf};
    }
    return detail::confirmed_orbit(p, k * *order, theta, *order, tol);
}

}  // namespace floquetfib
