#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "oracles.hpp"

using namespace floquetfib;
using cli::RunConfig;
using io::json;

namespace {

const char* six_periodic = R"({"coefficients":{"periodic":[-1,1,-2]},"x0":5,"x1":1,"backend":"exact"})";

struct Outcome {
    int status;
    std::string out;
    std::string err;
};

Outcome run(RunConfig config) {
    std::ostringstream out, err;
    int status = cli::run(config, out, err);
    return {status, out.str(), err.str()};
}

RunConfig config(const std::string& command, const std::string& input) {
    RunConfig c;
    c.command = command;
    c.input = input;
    return c;
}

// Runs the built executable through the shell; returns the exit status.
int shell(const std::string& args, std::string* output = nullptr) {
    const std::string cmd = std::string(FLOQUETFIB_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return -1;
    std::string text;
    char buf[512];
    while (std::fgets(buf, sizeof buf, pipe)) text += buf;
    int status = pclose(pipe);
    if (output) *output = text;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Run, ClassifySixPeriodic) {
    auto r = run(config("classify", six_periodic));
    ASSERT_EQ(r.status, 0) << r.err;
    auto j = json::parse(r.out);
    EXPECT_EQ(j.at("class"), "PeriodicOrbit");
    EXPECT_EQ(j.at("period"), 6);
    auto back = io::solution_from_json(j);
    EXPECT_EQ(std::get<PeriodicOrbit>(back).cycle.back(), oracle::q(11));
}

TEST(Run, ProductOfExplicitPair) {
    auto c = config("product", R"({"coefficients":{"explicit":[2,3]}})");
    c.n = 2;
    auto r = run(c);
    ASSERT_EQ(r.status, 0) << r.err;
    auto m = io::mat_from_json(json::parse(r.out));
    EXPECT_EQ(m, (Mat2{oracle::q(7), oracle::q(3), oracle::q(2), oracle::q(1)}));
}

TEST(Run, QuotientsWithZeroStepsIsUsageError) {
    auto c = config("quotients", six_periodic);
    c.steps = 0;
    auto r = run(c);
    EXPECT_EQ(r.status, 1);
    EXPECT_TRUE(r.out.empty());
}

TEST(Run, ComputationErrorsExitTwoWithName) {
    auto c = config("product", R"({"coefficients":{"explicit":[2,3]}})");
    c.n = 5;
    auto r = run(c);
    EXPECT_EQ(r.status, 2);
    EXPECT_EQ(r.err.rfind("IndexOutOfRange", 0), 0u) << r.err;
}

TEST(Run, MalformedInputExitsOne) {
    EXPECT_EQ(run(config("classify", "{not json")).status, 1);
    EXPECT_EQ(run(config("classify", R"({"coefficients":{"periodic":[1]}})")).status, 1);
    EXPECT_EQ(run(config("classify", R"({"coefficients":{"periodic":["1/0"]},"x0":1,"x1":1})")).status, 1);
    EXPECT_EQ(run(config("floquet", R"({"coefficients":{"explicit":[1]}})")).status, 1);
    EXPECT_EQ(run(config("classify", "/nonexistent/problem.json")).status, 1);
    EXPECT_EQ(run(config("nonsense", six_periodic)).status, 1);
    auto c = config("omega", six_periodic);
    EXPECT_EQ(run(c).status, 1);  // --n missing
}

TEST(Run, EveryCommandRoundTrips) {
    auto omega_cfg = config("omega", six_periodic);
    omega_cfg.n = 6;
    auto r = run(omega_cfg);
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_EQ(io::poly_from_json(json::parse(r.out)), omega(oracle::ints({-1, 1, -2}), 0, 6));

    r = run(config("monodromy", six_periodic));
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(io::mat_from_json(json::parse(r.out)), monodromy(oracle::ints({-1, 1, -2})));

    r = run(config("floquet", six_periodic));
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(io::to_json(io::floquet_from_json(json::parse(r.out))), json::parse(r.out));

    auto solve = config("solve", six_periodic);
    solve.steps = 12;
    r = run(solve);
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(io::series_from_json(json::parse(r.out)).size(), 13u);

    auto quot = config("quotients", six_periodic);
    quot.steps = 5;
    r = run(quot);
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(io::quotients_from_json(json::parse(r.out)).size(), 5u);
}

TEST(Run, DeterministicOutput) {
    auto c = config("floquet", R"({"coefficients":{"periodic":[1,-2,-2]}})");
    EXPECT_EQ(run(c).out, run(c).out);
    c.format = "csv";
    EXPECT_EQ(run(c).out, run(c).out);
}

TEST(Run, CsvAndJsonAgree) {
    auto c = config("solve", R"({"coefficients":{"periodic":[1,-2,-2]},"x0":5,"x1":1,"backend":"float"})");
    c.steps = 20;
    auto j = json::parse(run(c).out).at("x");
    c.format = "csv";
    std::istringstream csv(run(c).out);
    std::string line;
    std::getline(csv, line);
    for (const auto& x : j) {
        ASSERT_TRUE(std::getline(csv, line));
        auto first = line.find(',');
        auto second = line.find(',', first + 1);
        EXPECT_EQ(std::stod(line.substr(first + 1, second - first - 1)), x.at("re").get<double>());
    }
}

TEST(Run, BackendOverrides) {
    auto c = config("monodromy", R"({"coefficients":{"periodic":["1/2",1]},"backend":"exact"})");
    c.backend = Backend::Float;
    auto j = json::parse(run(c).out);
    EXPECT_TRUE(j.at("e11").at("re").is_number());

    ::setenv("FLOQUETFIB_BACKEND", "exact", 1);
    j = json::parse(run(c).out);
    ::unsetenv("FLOQUETFIB_BACKEND");
    EXPECT_EQ(j.at("e11").at("re"), "3/2");
}

TEST(Run, PlotWritesSvgFile) {
    auto c = config("plot", R"({"coefficients":{"periodic":[-1,1,-1,2]},"x0":5,"x1":1})");
    c.steps = 40;
    c.plot_kind = "quotients";
    c.output_path = ::testing::TempDir() + "floquetfib_quotients.svg";
    auto r = run(c);
    ASSERT_EQ(r.status, 0) << r.err;
    std::ifstream in(c.output_path);
    std::stringstream buf;
    buf << in.rdbuf();
    EXPECT_NE(buf.str().find("infinite samples omitted"), std::string::npos);
    EXPECT_NE(buf.str().find("x_{n+1}/x_n"), std::string::npos);
    std::remove(c.output_path.c_str());
}

TEST(Executable, ExitCodes) {
    std::string out;
    EXPECT_EQ(shell(std::string("classify --input '") + six_periodic + "'", &out), 0);
    EXPECT_NE(out.find("PeriodicOrbit"), std::string::npos);
    EXPECT_EQ(shell(std::string("quotients --steps 0 --input '") + six_periodic + "'"), 1);
    EXPECT_EQ(shell("product --n 5 --input '{\"coefficients\":{\"explicit\":[2,3]}}'", &out), 2);
    EXPECT_NE(out.find("IndexOutOfRange"), std::string::npos);
    EXPECT_EQ(shell("classify"), 1);
    EXPECT_EQ(shell("--help"), 0);
    EXPECT_EQ(shell(std::string("solve --steps 3 --format xml --input '") + six_periodic + "'"), 1);
}
