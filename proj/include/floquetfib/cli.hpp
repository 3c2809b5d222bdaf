#pragma once

/**
 * @file cli.hpp
 * @brief Command dispatch for the floquetfib executable.
 *
 * Exit status: 0 success, 1 malformed input or usage, 2 computation error
 * (the error name is the first word on standard error).
 */

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "floquetfib/combinatorics.hpp"
#include "floquetfib/error.hpp"
#include "floquetfib/floquet.hpp"
#include "floquetfib/io.hpp"
#include "floquetfib/matrices.hpp"
#include "floquetfib/numeric.hpp"
#include "floquetfib/solver.hpp"
#include "floquetfib/svg.hpp"

namespace floquetfib::cli {

inline const std::vector<std::string>& commands() {
    static const std::vector<std::string> names{"product", "omega",    "monodromy", "floquet",
                                                "solve",   "classify", "quotients", "plot"};
    return names;
}

struct RunConfig {
    std::string command;
    std::string input;  // file path, "-" for standard input, or inline JSON
    std::optional<long long> n;
    std::optional<long long> steps;
    std::string format = "json";
    std::string plot_kind = "orbit";
    std::string output_path;  // empty: standard output
    std::optional<Backend> backend;
    Tolerance tol;
};

/// Raised for problems with the configuration or input document.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline bool looks_inline(const std::string& s) {
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        return c == '{';
    }
    return false;
}

inline std::string read_input(const std::string& input) {
    if (input.empty()) throw UsageError("--input is required");
    if (looks_inline(input)) return input;
    std::stringstream buf;
    if (input == "-") {
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(input);
    if (!in) throw UsageError("cannot read input file '" + input + "'");
    buf << in.rdbuf();
    return buf.str();
}

inline std::optional<Backend> env_backend() {
    const char* v = std::getenv("FLOQUETFIB_BACKEND");
    if (!v || !*v) return std::nullopt;
    return parse_backend(v);
}

inline bool needs_initial_values(const std::string& command) {
    return command == "solve" || command == "classify" || command == "quotients" || command == "plot";
}

inline std::size_t positive_count(const std::optional<long long>& v, const char* what) {
    if (!v) throw UsageError(std::string(what) + " is required for this command");
    if (*v < 1) throw UsageError(std::string(what) + " must be at least 1");
    return static_cast<std::size_t>(*v);
}

// Everything parsed from the input before any computation starts.
struct Input {
    CoeffSequence seq;
    std::optional<Problem> problem;
};

inline Input load(const RunConfig& config) {
    const auto& names = commands();
    if (std::find(names.begin(), names.end(), config.command) == names.end())
        throw UsageError("unknown command '" + config.command + "'");
    if (config.format != "json" && config.format != "csv") throw UsageError("--format must be json or csv");
    if (config.plot_kind != "orbit" && config.plot_kind != "quotients")
        throw UsageError("--plot must be orbit or quotients");
    if (config.tol.abs_eps < 0 || config.tol.rel_eps < 0) throw UsageError("tolerances must be non-negative");

    // Count arguments are validated before touching the input.
    const std::string& cmd = config.command;
    const auto count = config.steps ? config.steps : config.n;
    if (cmd == "solve" || cmd == "quotients" || cmd == "plot") positive_count(count, "--steps");
    if (cmd == "omega" && (!config.n || *config.n < 0)) throw UsageError("--n >= 0 is required for omega");
    if (cmd == "product" && config.n && *config.n < 0) throw UsageError("--n must be non-negative");

    io::json doc;
    try {
        doc = io::json::parse(read_input(config.input));
    } catch (const io::json::parse_error& e) {
        throw UsageError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw UsageError("input must be a JSON object");

    const Backend backend = env_backend().value_or(config.backend.value_or(io::backend_from_json(doc)));
    if (!doc.contains("coefficients")) throw UsageError("input has no \"coefficients\"");
    Input in{io::coefficients_from_json(doc.at("coefficients"), backend), std::nullopt};
    if (needs_initial_values(cmd)) {
        in.problem = io::problem_from_json(doc, backend);
        if (!in.seq.is_periodic() && cmd == "classify")
            throw UsageError("classify needs a periodic coefficient sequence");
    }
    if ((cmd == "monodromy" || cmd == "floquet") && !in.seq.is_periodic())
        throw UsageError(cmd + " needs a periodic coefficient sequence");
    if (cmd == "product" && !config.n && !in.seq.is_periodic())
        throw UsageError("--n is required for an explicit sequence");
    return in;
}

template <typename T>
std::string render(const T& value, const std::string& format) {
    if (format == "csv") return io::to_csv(value);
    return io::to_json(value).dump(2) + "\n";
}

inline std::string render_series(const std::vector<Scalar>& xs, const std::string& format) {
    if (format == "csv") return io::to_csv(xs);
    io::json list = io::json::array();
    for (const auto& x : xs) list.push_back(io::to_json(x));
    return io::json{{"x", list}}.dump(2) + "\n";
}

inline std::string render_series(const std::vector<ProjectiveScalar>& qs, const std::string& format) {
    if (format == "csv") return io::to_csv(qs);
    io::json list = io::json::array();
    for (const auto& q : qs) list.push_back(io::to_json(q));
    return io::json{{"quotients", list}}.dump(2) + "\n";
}

inline std::string compute(const RunConfig& config, const Input& in) {
    const std::string& cmd = config.command;
    const auto& fmt = config.format;
    const auto count = config.steps ? config.steps : config.n;
    if (cmd == "product") {
        const std::size_t n = config.n ? static_cast<std::size_t>(*config.n) : in.seq.period();
        return render(product_closed_form(in.seq, n), fmt);
    }
    if (cmd == "omega") return render(omega(in.seq, 0, static_cast<int>(*config.n)), fmt);
    if (cmd == "monodromy") return render(monodromy(in.seq), fmt);
    if (cmd == "floquet") return render(floquet_data(in.seq, config.tol), fmt);

    const Problem& p = *in.problem;
    const std::size_t steps = count ? static_cast<std::size_t>(*count) : 0;
    if (cmd == "solve") return render_series(iterate(p, steps), fmt);
    if (cmd == "quotients") return render_series(quotient_series(p, steps), fmt);
    if (cmd == "classify") return render(classify(p, floquet_data(p.seq, config.tol), config.tol), fmt);
    // plot
    if (config.plot_kind == "quotients") return svg::quotient_plot(quotient_series(p, steps));
    return svg::orbit_plot(iterate(p, steps));
}

}  // namespace detail

/// Runs one command; output goes to config.output_path or `out`.
inline int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    detail::Input in{CoeffSequence::periodic({Scalar::one(Backend::Exact)}), std::nullopt};
    try {
        in = detail::load(config);
    } catch (const UsageError& e) {
        err << "usage: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return 1;
    }

    std::string text;
    try {
        text = detail::compute(config, in);
    } catch (const Error& e) {
        err << e.what() << "\n";
        return 2;
    }

    if (config.output_path.empty()) {
        out << text;
        return 0;
    }
    std::ofstream file(config.output_path, std::ios::binary);
    if (!file) {
        err << "usage: cannot write '" << config.output_path << "'\n";
        return 1;
    }
    file << text;
    return 0;
}

}  // namespace floquetfib::cli
