#pragma once

/**
 * @file io.hpp
 * @brief JSON and CSV encodings of scalars, matrices, polynomials, Floquet
 *        data, problems and solution classes.
 *
 * Scalars are {"re": ..., "im": ...}. Exact parts are "p/q" strings (or "p"
 * for integers); float parts are JSON numbers rounded to 12 significant
 * digits, so identical inputs give byte-identical output. The point at
 * infinity is the string "inf".
 */

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "floquetfib/combinatorics.hpp"
#include "floquetfib/floquet.hpp"
#include "floquetfib/matrices.hpp"
#include "floquetfib/numeric.hpp"
#include "floquetfib/solver.hpp"
#include "json.hpp"

namespace floquetfib::io {

using json = nlohmann::json;

// --------------------------------------------------------------------------
// Number formatting
// --------------------------------------------------------------------------

/// "%.12g" with negative zero folded to "0".
inline std::string format_double(double v) {
    if (v == 0.0) v = 0.0;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline double rounded(double v) { return std::strtod(format_double(v).c_str(), nullptr); }

inline std::string format_part(const Scalar& s, bool imaginary) {
    if (s.is_exact()) return rational_string(imaginary ? s.exact_value().im() : s.exact_value().re());
    return format_double(imaginary ? s.imag() : s.real());
}

// --------------------------------------------------------------------------
// Scalar
// --------------------------------------------------------------------------

inline json to_json(const Scalar& s) {
    if (s.is_exact()) return json{{"re", format_part(s, false)}, {"im", format_part(s, true)}};
    return json{{"re", rounded(s.real())}, {"im", rounded(s.imag())}};
}

namespace detail {

inline mpq_class exact_part(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return mpq_class(j.dump(), 10);
    if (j.is_number_float()) return parse_rational(j.dump());
    throw Error(ErrorCode::ParseError, "expected a number or rational string, got " + j.dump());
}

inline double float_part(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s.find('/') != std::string::npos) return parse_rational(s).get_d();
        char* end = nullptr;
        double v = std::strtod(s.c_str(), &end);
        if (end == s.c_str() || *end != '\0') throw Error(ErrorCode::ParseError, "malformed number '" + s + "'");
        return v;
    }
    throw Error(ErrorCode::ParseError, "expected a number or numeric string, got " + j.dump());
}

inline Backend infer_backend(const json& part) {
    return part.is_number_float() ? Backend::Float : Backend::Exact;
}

}  // namespace detail

/// Accepts a bare number, a rational string, or {"re": ..., "im": ...}.
/// Without an explicit backend, strings and integers read as exact and
/// floating-point numbers as float.
inline Scalar scalar_from_json(const json& j, std::optional<Backend> backend = std::nullopt) {
    const json* re = &j;
    const json* im = nullptr;
    if (j.is_object()) {
        if (!j.contains("re")) throw Error(ErrorCode::ParseError, "scalar object without \"re\": " + j.dump());
        re = &j.at("re");
        if (j.contains("im")) im = &j.at("im");
    }
    const Backend b = backend.value_or(detail::infer_backend(*re));
    if (b == Backend::Exact) return Scalar::exact(detail::exact_part(*re), im ? detail::exact_part(*im) : mpq_class(0));
    return Scalar::floating(detail::float_part(*re), im ? detail::float_part(*im) : 0.0);
}

inline json to_json(const ProjectiveScalar& p) { return p.is_infinite() ? json("inf") : to_json(p.value()); }

inline ProjectiveScalar projective_from_json(const json& j, std::optional<Backend> backend = std::nullopt) {
    if (j.is_string() && (j.get<std::string>() == "inf" || j.get<std::string>() == "infinity"))
        return ProjectiveScalar::infinity();
    return ProjectiveScalar::finite(scalar_from_json(j, backend));
}

// --------------------------------------------------------------------------
// Mat2, OmegaPoly
// --------------------------------------------------------------------------

inline json to_json(const Mat2& m) {
    return json{{"e11", to_json(m.e11)}, {"e12", to_json(m.e12)}, {"e21", to_json(m.e21)}, {"e22", to_json(m.e22)}};
}

inline Mat2 mat_from_json(const json& j, std::optional<Backend> backend = std::nullopt) {
    try {
        return {scalar_from_json(j.at("e11"), backend), scalar_from_json(j.at("e12"), backend),
                scalar_from_json(j.at("e21"), backend), scalar_from_json(j.at("e22"), backend)};
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("matrix: ") + e.what());
    }
}

inline json to_json(const OmegaPoly& poly) {
    json coeffs = json::object();
    for (const auto& [p, c] : poly.coeffs) coeffs[std::to_string(p)] = to_json(c);
    return json{{"n", poly.n}, {"coeffs", coeffs}};
}

inline OmegaPoly poly_from_json(const json& j, std::optional<Backend> backend = std::nullopt) {
    try {
        OmegaPoly poly;
        poly.n = j.at("n").get<int>();
        for (const auto& [key, value] : j.at("coeffs").items()) {
            const int p = std::stoi(key);
            if (p < 0 || p > poly.n || (poly.n - p) % 2 != 0)
                throw Error(ErrorCode::ParseError, "exponent " + key + " is not admissible for degree " +
                                                       std::to_string(poly.n));
            poly.coeffs.emplace(p, scalar_from_json(value, backend));
        }
        return poly;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("polynomial: ") + e.what());
    } catch (const std::logic_error& e) {
        if (dynamic_cast<const Error*>(&e)) throw;
        throw Error(ErrorCode::ParseError, std::string("polynomial: ") + e.what());
    }
}

// --------------------------------------------------------------------------
// FloquetData
// --------------------------------------------------------------------------

inline json to_json(const FloquetData& fd) {
    json j{{"k", fd.k},
           {"trace", to_json(fd.trace)},
           {"det", to_json(fd.det)},
           {"multipliers", {{"minus", to_json(fd.phi_minus)}, {"plus", to_json(fd.phi_plus)}}},
           {"downgraded", fd.phi_plus.downgraded()},
           {"form", std::string(form_name(fd.form))}};
    std::visit(
        [&](const auto& form) {
            using F = std::decay_t<decltype(form)>;
            if constexpr (std::is_same_v<F, ScalarMultiple>) {
                j["mu"] = to_json(form.mu);
            } else if constexpr (std::is_same_v<F, Defective>) {
                j["mu"] = to_json(form.mu);
                j["J"] = to_json(form.J);
                j["Jinv"] = to_json(form.Jinv);
            } else {
                j["J"] = to_json(form.J);
                j["Jinv"] = to_json(form.Jinv);
                j["lambda_minus"] = to_json(form.lambda_minus);
                j["lambda_plus"] = to_json(form.lambda_plus);
            }
        },
        fd.form);
    return j;
}

inline FloquetData floquet_from_json(const json& j) {
    try {
        FloquetData fd;
        const bool flag = j.value("downgraded", false);
        auto s = [&](const json& v) { return scalar_from_json(v).with_downgrade_flag(flag); };
        fd.k = j.at("k").get<std::size_t>();
        fd.trace = s(j.at("trace"));
        fd.det = s(j.at("det"));
        fd.phi_minus = s(j.at("multipliers").at("minus"));
        fd.phi_plus = s(j.at("multipliers").at("plus"));
        const auto form = j.at("form").get<std::string>();
        if (form == "ScalarMultiple") {
            fd.form = ScalarMultiple{s(j.at("mu"))};
        } else if (form == "Defective") {
            fd.form = Defective{s(j.at("mu")), mat_from_json(j.at("J")), mat_from_json(j.at("Jinv"))};
        } else if (form == "Diagonalizable") {
            fd.form = Diagonalizable{mat_from_json(j.at("J")), mat_from_json(j.at("Jinv")), s(j.at("lambda_minus")),
                                     s(j.at("lambda_plus"))};
        } else {
            throw Error(ErrorCode::ParseError, "unknown spectral form '" + form + "'");
        }
        return fd;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("floquet data: ") + e.what());
    }
}

// --------------------------------------------------------------------------
// Problem
// --------------------------------------------------------------------------

/// {"periodic": [...]} or {"explicit": [...]}.
inline CoeffSequence coefficients_from_json(const json& j, Backend backend) {
    try {
        const bool periodic = j.contains("periodic");
        if (periodic == j.contains("explicit"))
            throw Error(ErrorCode::ParseError, "coefficients need exactly one of \"periodic\" or \"explicit\"");
        const json& list = periodic ? j.at("periodic") : j.at("explicit");
        if (!list.is_array()) throw Error(ErrorCode::ParseError, "coefficient list must be an array");
        std::vector<Scalar> values;
        for (const auto& v : list) values.push_back(scalar_from_json(v, backend));
        return periodic ? CoeffSequence::periodic(std::move(values)) : CoeffSequence::explicit_values(std::move(values));
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("coefficients: ") + e.what());
    }
}

inline json to_json(const CoeffSequence& seq) {
    json list = json::array();
    for (const auto& v : seq.values()) list.push_back(to_json(v));
    return json{{seq.is_periodic() ? "periodic" : "explicit", list}};
}

/// Backend named in the document, "exact" when absent.
inline Backend backend_from_json(const json& j) {
    if (!j.contains("backend")) return Backend::Exact;
    if (!j.at("backend").is_string()) throw Error(ErrorCode::ParseError, "\"backend\" must be a string");
    return parse_backend(j.at("backend").get<std::string>());
}

inline Problem problem_from_json(const json& j, std::optional<Backend> override_backend = std::nullopt) {
    const Backend b = override_backend.value_or(backend_from_json(j));
    if (!j.contains("coefficients")) throw Error(ErrorCode::ParseError, "problem without \"coefficients\"");
    if (!j.contains("x0") || !j.contains("x1")) throw Error(ErrorCode::ParseError, "problem needs \"x0\" and \"x1\"");
    return Problem(coefficients_from_json(j.at("coefficients"), b), scalar_from_json(j.at("x0"), b),
                   scalar_from_json(j.at("x1"), b));
}

inline json to_json(const Problem& p) {
    return json{{"coefficients", to_json(p.seq)},
                {"x0", to_json(p.x0)},
                {"x1", to_json(p.x1)},
                {"backend", std::string(backend_name(p.backend()))}};
}

// --------------------------------------------------------------------------
// SolutionClass
// --------------------------------------------------------------------------

inline json to_json(const SolutionClass& c) {
    json j{{"class", std::string(class_name(c))}};
    std::visit(
        [&](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, PeriodicOrbit>) {
                j["period"] = v.period;
                json cycle = json::array();
                for (const auto& x : v.cycle) cycle.push_back(to_json(x));
                j["cycle"] = cycle;
                if (v.theta) j["theta"] = rounded(*v.theta);
                if (v.monodromy_period) j["monodromy_period"] = *v.monodromy_period;
            } else if constexpr (std::is_same_v<V, QuotientLimitCycle>) {
                json values = json::array();
                for (const auto& x : v.values) values.push_back(to_json(x));
                j["values"] = values;
                j["dominant"] = std::string(dominance_name(v.dominant));
            } else {
                j["kind"] = v.kind;
                j["description"] = v.description;
            }
        },
        c);
    return j;
}

inline SolutionClass solution_from_json(const json& j) {
    try {
        const auto cls = j.at("class").get<std::string>();
        if (cls == "PeriodicOrbit") {
            PeriodicOrbit orbit;
            orbit.period = j.at("period").get<std::size_t>();
            for (const auto& x : j.at("cycle")) orbit.cycle.push_back(scalar_from_json(x));
            if (j.contains("theta")) orbit.theta = j.at("theta").get<double>();
            if (j.contains("monodromy_period")) orbit.monodromy_period = j.at("monodromy_period").get<std::size_t>();
            return orbit;
        }
        if (cls == "QuotientLimitCycle") {
            QuotientLimitCycle q;
            for (const auto& x : j.at("values")) q.values.push_back(projective_from_json(x));
            const auto d = j.at("dominant").get<std::string>();
            if (d == "minus") q.dominant = Dominance::Minus;
            else if (d == "plus") q.dominant = Dominance::Plus;
            else if (d == "jordan") q.dominant = Dominance::Jordan;
            else if (d == "none") q.dominant = Dominance::None;
            else throw Error(ErrorCode::ParseError, "unknown dominance '" + d + "'");
            return q;
        }
        if (cls == "DegenerateRay") return DegenerateRay{j.at("kind").get<std::string>(), j.at("description").get<std::string>()};
        throw Error(ErrorCode::ParseError, "unknown solution class '" + cls + "'");
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("solution class: ") + e.what());
    }
}

/// {"x": [...]} as written by the solve command.
inline std::vector<Scalar> series_from_json(const json& j) {
    if (!j.contains("x") || !j.at("x").is_array()) throw Error(ErrorCode::ParseError, "series needs an \"x\" array");
    std::vector<Scalar> xs;
    for (const auto& x : j.at("x")) xs.push_back(scalar_from_json(x));
    return xs;
}

/// {"quotients": [...]} as written by the quotients command.
inline std::vector<ProjectiveScalar> quotients_from_json(const json& j) {
    if (!j.contains("quotients") || !j.at("quotients").is_array())
        throw Error(ErrorCode::ParseError, "quotient series needs a \"quotients\" array");
    std::vector<ProjectiveScalar> qs;
    for (const auto& q : j.at("quotients")) qs.push_back(projective_from_json(q));
    return qs;
}

// --------------------------------------------------------------------------
// CSV
// --------------------------------------------------------------------------

inline std::string csv_row(const std::string& key, const Scalar& s) {
    return key + "," + format_part(s, false) + "," + format_part(s, true) + "\n";
}

inline std::string csv_row(const std::string& key, const ProjectiveScalar& p) {
    if (p.is_infinite()) return key + ",inf,\n";
    return csv_row(key, p.value());
}

inline std::string to_csv(const std::vector<Scalar>& xs) {
    std::string out = "n,re,im\n";
    for (std::size_t i = 0; i < xs.size(); ++i) out += csv_row(std::to_string(i), xs[i]);
    return out;
}

inline std::string to_csv(const std::vector<ProjectiveScalar>& xs) {
    std::string out = "n,re,im\n";
    for (std::size_t i = 0; i < xs.size(); ++i) out += csv_row(std::to_string(i), xs[i]);
    return out;
}

inline std::string to_csv(const Mat2& m) {
    return "entry,re,im\n" + csv_row("e11", m.e11) + csv_row("e12", m.e12) + csv_row("e21", m.e21) +
           csv_row("e22", m.e22);
}

inline std::string to_csv(const OmegaPoly& poly) {
    std::string out = "p,re,im\n";
    for (const auto& [p, c] : poly.coeffs) out += csv_row(std::to_string(p), c);
    return out;
}

inline std::string to_csv(const FloquetData& fd) {
    std::string out = "field,re,im\n";
    out += "k," + std::to_string(fd.k) + ",\n";
    out += "form," + std::string(form_name(fd.form)) + ",\n";
    out += csv_row("trace", fd.trace) + csv_row("det", fd.det);
    out += csv_row("phi_minus", fd.phi_minus) + csv_row("phi_plus", fd.phi_plus);
    auto mat_rows = [&](const std::string& name, const Mat2& m) {
        out += csv_row(name + ".e11", m.e11) + csv_row(name + ".e12", m.e12) + csv_row(name + ".e21", m.e21) +
               csv_row(name + ".e22", m.e22);
    };
    std::visit(
        [&](const auto& form) {
            using F = std::decay_t<decltype(form)>;
            if constexpr (std::is_same_v<F, ScalarMultiple>) {
                out += csv_row("mu", form.mu);
            } else if constexpr (std::is_same_v<F, Defective>) {
                out += csv_row("mu", form.mu);
                mat_rows("J", form.J);
                mat_rows("Jinv", form.Jinv);
            } else {
                mat_rows("J", form.J);
                mat_rows("Jinv", form.Jinv);
            }
        },
        fd.form);
    return out;
}

inline std::string to_csv(const SolutionClass& c) {
    std::string out = "field,re,im\n";
    out += "class," + std::string(class_name(c)) + ",\n";
    std::visit(
        [&](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, PeriodicOrbit>) {
                out += "period," + std::to_string(v.period) + ",\n";
                if (v.theta) out += "theta," + format_double(*v.theta) + ",\n";
                if (v.monodromy_period) out += "monodromy_period," + std::to_string(*v.monodromy_period) + ",\n";
                for (std::size_t i = 0; i < v.cycle.size(); ++i) out += csv_row("cycle." + std::to_string(i), v.cycle[i]);
            } else if constexpr (std::is_same_v<V, QuotientLimitCycle>) {
                out += "dominant," + std::string(dominance_name(v.dominant)) + ",\n";
                for (std::size_t i = 0; i < v.values.size(); ++i)
                    out += csv_row("values." + std::to_string(i), v.values[i]);
            } else {
                out += "kind," + v.kind + ",\n";
            }
        },
        c);
    return out;
}

}  // namespace floquetfib::io
