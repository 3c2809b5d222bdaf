// floquetfib: command-line front end for periodic Fibonacci-type recurrences.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "floquetfib.hpp"

int main(int argc, char** argv) {
    using floquetfib::cli::RunConfig;

    CLI::App app{"Solve x_{n+2} = a_n x_{n+1} + x_n with periodic or explicit coefficients"};
    RunConfig config;
    std::string backend;
    long long n = -1, steps = -1;

    app.add_option("command", config.command, "product | omega | monodromy | floquet | solve | classify | quotients | plot")
        ->required()
        ->check(CLI::IsMember(floquetfib::cli::commands()));
    app.add_option("--input,-i", config.input, "problem JSON: file path, '-' for stdin, or inline object")->required();
    auto* n_opt = app.add_option("--n", n, "matrix/polynomial size (product, omega)");
    auto* steps_opt = app.add_option("--steps,-N", steps, "number of steps (solve, quotients, plot)");
    app.add_option("--format", config.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--plot", config.plot_kind, "orbit or quotients")->check(CLI::IsMember({"orbit", "quotients"}));
    app.add_option("--out,-o", config.output_path, "write output here instead of stdout");
    auto* backend_opt =
        app.add_option("--backend", backend, "exact or float")->check(CLI::IsMember({"exact", "float"}));
    app.add_option("--abs-eps", config.tol.abs_eps, "absolute tolerance for float comparisons");
    app.add_option("--rel-eps", config.tol.rel_eps, "relative tolerance for float comparisons");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    if (n_opt->count()) config.n = n;
    if (steps_opt->count()) config.steps = steps;
    if (backend_opt->count()) config.backend = floquetfib::parse_backend(backend);
    return floquetfib::cli::run(config, std::cout, std::cerr);
}
