#pragma once

/**
 * @file combinatorics.hpp
 * @brief Coefficient sequences, adjacent-pair deletion configurations, and
 *        the Omega / trace polynomials built from them.
 *
 * For a window a_L..a_{L+n-1}, chi(n, p) is the sum over every way of deleting
 * (n-p)/2 disjoint adjacent pairs from the row (0..n-1) of the product of the
 * surviving coefficients. Omega_n(t) collects these as the coefficients of t^p.
 *
 * Two evaluation routes exist and must agree:
 *  - enumeration: walk every configuration (exponential in n, used as oracle);
 *  - recursion:   Omega_{n+1}(t) = a_{L+n} t Omega_n(t) + Omega_{n-1}(t).
 */

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "floquetfib/error.hpp"
#include "floquetfib/numeric.hpp"

namespace floquetfib {

// --------------------------------------------------------------------------
// CoeffSequence
// --------------------------------------------------------------------------

class CoeffSequence {
public:
    enum class Kind { Explicit, Periodic };

    static CoeffSequence explicit_values(std::vector<Scalar> values) {
        return CoeffSequence(Kind::Explicit, std::move(values));
    }
    static CoeffSequence periodic(std::vector<Scalar> values) {
        return CoeffSequence(Kind::Periodic, std::move(values));
    }

    Kind kind() const { return kind_; }
    bool is_periodic() const { return kind_ == Kind::Periodic; }
    Backend backend() const { return values_.front().backend(); }
    const std::vector<Scalar>& values() const { return values_; }

    /// Period k of a periodic sequence.
    std::size_t period() const {
        if (!is_periodic()) throw Error(ErrorCode::InvalidArgument, "period requested from an explicit sequence");
        return values_.size();
    }

    /// a(i); periodic sequences wrap, explicit ones throw past the end.
    const Scalar& operator()(std::size_t i) const {
        if (is_periodic()) return values_[i % values_.size()];
        if (i >= values_.size())
            throw Error(ErrorCode::IndexOutOfRange,
                        "coefficient a_" + std::to_string(i) + " requested from an explicit sequence of length " +
                            std::to_string(values_.size()));
        return values_[i];
    }

    /// True when a_first .. a_{first+count-1} are available.
    bool provides(std::size_t first, std::size_t count) const {
        return is_periodic() || count == 0 || first + count <= values_.size();
    }

    void require(std::size_t first, std::size_t count) const {
        if (!provides(first, count))
            throw Error(ErrorCode::IndexOutOfRange,
                        "sequence of length " + std::to_string(values_.size()) + " does not provide indices " +
                            std::to_string(first) + ".." + std::to_string(first + count - 1));
    }

    /// The sequence b(i) = a(i + m).
    CoeffSequence shifted(std::size_t m) const {
        std::vector<Scalar> out;
        if (is_periodic()) {
            out.reserve(values_.size());
            for (std::size_t i = 0; i < values_.size(); ++i) out.push_back((*this)(i + m));
        } else {
            require(m, 1);
            out.assign(values_.begin() + static_cast<std::ptrdiff_t>(m), values_.end());
        }
        return CoeffSequence(kind_, std::move(out));
    }

    CoeffSequence to_float() const {
        std::vector<Scalar> out;
        out.reserve(values_.size());
        for (const auto& v : values_) out.push_back(v.to_float());
        return CoeffSequence(kind_, std::move(out));
    }

private:
    CoeffSequence(Kind kind, std::vector<Scalar> values) : kind_(kind), values_(std::move(values)) {
        if (values_.empty()) throw Error(ErrorCode::InvalidArgument, "coefficient sequence must not be empty");
        for (const auto& v : values_)
            if (v.backend() != values_.front().backend())
                throw Error(ErrorCode::BackendMismatch, "coefficient sequence mixes exact and float values");
        if (kind_ == Kind::Periodic) {
            bool all_zero = true;
            for (const auto& v : values_) all_zero = all_zero && v.is_zero();
            if (all_zero) throw Error(ErrorCode::InvalidArgument, "periodic block is identically zero");
        }
    }

    Kind kind_;
    std::vector<Scalar> values_;
};

// --------------------------------------------------------------------------
// Configurations
// --------------------------------------------------------------------------

/// Surviving indices of a row 0..n-1 after deleting disjoint adjacent pairs.
struct Configuration {
    std::vector<int> surviving;

    friend bool operator==(const Configuration&, const Configuration&) = default;
    friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

/// "(0,1,2,5)"
inline std::string to_string(const Configuration& c) {
    std::string s = "(";
    for (std::size_t i = 0; i < c.surviving.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(c.surviving[i]);
    }
    return s + ")";
}

inline void check_parity(int n, int p) {
    if (n < 0 || p < 0 || p > n)
        throw Error(ErrorCode::InvalidArgument,
                    "need 0 <= p <= n, got n=" + std::to_string(n) + ", p=" + std::to_string(p));
    if ((n - p) % 2 != 0)
        throw Error(ErrorCode::ParityMismatch,
                    "p=" + std::to_string(p) + " and n=" + std::to_string(n) + " differ in parity");
}

namespace detail {

// Scans the row left to right: each position either survives or starts a
// deleted pair. Survivors are emitted before pair deletions so the output is
// lexicographically sorted.
inline void enumerate_rec(int pos, int n, int pairs_left, std::vector<int>& current,
                          std::vector<Configuration>& out) {
    int remaining = n - pos;
    if (remaining == 2 * pairs_left) {
        if (pairs_left == 0) {
            out.push_back({current});
            return;
        }
        enumerate_rec(pos + 2, n, pairs_left - 1, current, out);
        return;
    }
    current.push_back(pos);
    enumerate_rec(pos + 1, n, pairs_left, current, out);
    current.pop_back();
    if (pairs_left > 0) enumerate_rec(pos + 2, n, pairs_left - 1, current, out);
}

}  // namespace detail

/// Every configuration of p survivors from a row of n; sorted lexicographically.
inline std::vector<Configuration> enumerate_configurations(int n, int p) {
    check_parity(n, p);
    std::vector<Configuration> out;
    std::vector<int> current;
    current.reserve(static_cast<std::size_t>(p));
    detail::enumerate_rec(0, n, (n - p) / 2, current, out);
    return out;
}

// --------------------------------------------------------------------------
// OmegaPoly
// --------------------------------------------------------------------------

/// Formal polynomial in t of degree n; only exponents with n's parity appear.
struct OmegaPoly {
    int n = 0;
    std::map<int, Scalar> coeffs;

    /// Coefficient of t^p (zero of the given backend when absent).
    Scalar coeff(int p, Backend backend) const {
        auto it = coeffs.find(p);
        return it == coeffs.end() ? Scalar::zero(backend) : it->second;
    }

    Backend backend() const { return coeffs.empty() ? Backend::Exact : coeffs.begin()->second.backend(); }

    friend bool operator==(const OmegaPoly& x, const OmegaPoly& y) {
        if (x.n != y.n) return false;
        auto nonzero = [](const OmegaPoly& q) {
            std::map<int, Scalar> m;
            for (const auto& [p, c] : q.coeffs)
                if (!c.is_zero()) m.emplace(p, c);
            return m;
        };
        return nonzero(x) == nonzero(y);
    }
};

enum class OmegaStrategy { Recursion, Enumeration };

/// chi_{n,p}(a_L..a_{L+n-1}) by summing over enumerate_configurations(n, p).
inline Scalar chi_enumerated(const CoeffSequence& seq, std::size_t start, int n, int p) {
    check_parity(n, p);
    seq.require(start, static_cast<std::size_t>(n));
    const Backend b = seq.backend();
    Scalar total = Scalar::zero(b);
    for (const auto& config : enumerate_configurations(n, p)) {
        Scalar term = Scalar::one(b);
        for (int j : config.surviving) term *= seq(start + static_cast<std::size_t>(j));
        total += term;
    }
    return total;
}

namespace detail {

inline OmegaPoly omega_recursive(const CoeffSequence& seq, std::size_t start, int n) {
    const Backend b = seq.backend();
    OmegaPoly prev{0, {{0, Scalar::one(b)}}};
    if (n == 0) return prev;
    OmegaPoly cur{1, {{1, seq(start)}}};
    for (int m = 1; m < n; ++m) {
        // Omega_{m+1} = a_{L+m} t Omega_m + Omega_{m-1}
        const Scalar& a = seq(start + static_cast<std::size_t>(m));
        OmegaPoly next{m + 1, {}};
        for (const auto& [p, c] : cur.coeffs) next.coeffs.emplace(p + 1, a * c);
        for (const auto& [p, c] : prev.coeffs) {
            auto [it, inserted] = next.coeffs.emplace(p, c);
            if (!inserted) it->second += c;
        }
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

}  // namespace detail

/// Omega_n(t, a_L..a_{L+n-1}).
inline OmegaPoly omega(const CoeffSequence& seq, std::size_t start, int n,
                       OmegaStrategy strategy = OmegaStrategy::Recursion) {
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "omega degree must be non-negative");
    seq.require(start, static_cast<std::size_t>(n));
    if (strategy == OmegaStrategy::Recursion) return detail::omega_recursive(seq, start, n);
    OmegaPoly out{n, {}};
    for (int p = n % 2; p <= n; p += 2) out.coeffs.emplace(p, chi_enumerated(seq, start, n, p));
    return out;
}

/// chi_{n,p}(a_L..a_{L+n-1}) read off the recursively built Omega_n.
inline Scalar chi(const CoeffSequence& seq, std::size_t start, int n, int p) {
    check_parity(n, p);
    return omega(seq, start, n).coeff(p, seq.backend());
}

/// Sum of coeffs[p] t^p, accumulated in ascending exponent order.
inline Scalar eval_poly(const OmegaPoly& poly, const Scalar& t) {
    Scalar total = Scalar::zero(t.backend());
    for (const auto& [p, c] : poly.coeffs) total += c * pow(t, static_cast<std::uint64_t>(p));
    return total;
}

/**
 * T_k(t) = Omega_k(t, a_0..a_{k-1}) + Omega_{k-2}(t, a_1..a_{k-2}); for k = 1
 * the second term is absent. T_k(1) is the trace of the monodromy matrix.
 */
inline OmegaPoly trace_poly(const CoeffSequence& seq) {
    const int k = static_cast<int>(seq.period());
    OmegaPoly out = omega(seq, 0, k);
    if (k >= 2) {
        for (const auto& [p, c] : omega(seq, 1, k - 2).coeffs) {
            auto [it, inserted] = out.coeffs.emplace(p, c);
            if (!inserted) it->second += c;
        }
    }
    return out;
}

}  // namespace floquetfib
