#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "kuramoto/experiment.hpp"
#include "kuramoto/io.hpp"
#include "kuramoto/types.hpp"

using namespace kuramoto;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("kuramoto_cli_" + std::to_string(::getpid()) + "_" +
                                            std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
    static int& counter() {
        static int value = 0;
        return value;
    }
};

struct CommandResult {
    int exit_code = -1;
    std::string output;
};

/// Runs a shell command, captures stdout, returns the exit code.
CommandResult run_command(const std::string& command) {
    CommandResult result;
    FILE* pipe = ::popen((command + " 2>/dev/null").c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buffer[4096];
    std::size_t got = 0;
    while ((got = std::fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
        result.output.append(buffer, got);
    }
    const int status = ::pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string cli() { return std::string(KURAMOTO_CLI_PATH); }

std::string fixture(const std::string& name) {
    return (fs::path(FIXTURES_DIR) / name).string();
}

std::string quoted(const std::string& text) { return "\"" + text + "\""; }

} // namespace

TEST_CASE("--version exits 0 and prints the tool name") {
    const CommandResult result = run_command(quoted(cli()) + " --version");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("kuramoto") != std::string::npos);
}

TEST_CASE("usage errors exit 1") {
    CHECK(run_command(quoted(cli())).exit_code == 1);                    // subcommand required
    CHECK(run_command(quoted(cli()) + " frobnicate").exit_code == 1);    // unknown subcommand
    CHECK(run_command(quoted(cli()) + " simulate").exit_code == 1);      // missing argument
    CHECK(run_command(quoted(cli()) + " simulate /nonexistent/config.json").exit_code == 1);
}

TEST_CASE("malformed input files exit 1") {
    TempDir dir;
    const std::string bad = dir.file("bad.json");
    std::ofstream(bad) << "this is { not json";
    CHECK(run_command(quoted(cli()) + " simulate " + quoted(bad)).exit_code == 1);
    CHECK(run_command(quoted(cli()) + " thresholds " + quoted(bad)).exit_code == 1);
}

TEST_CASE("thresholds: two-oscillator fixture") {
    const CommandResult result =
        run_command(quoted(cli()) + " thresholds " + quoted(fixture("two_oscillator_system.json")));
    REQUIRE(result.exit_code == 0);
    const Json out = Json::parse(result.output);

    CHECK(out["normalized"]["lambda_c"].get<Real>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(out["raw"]["lambda_c"].get<Real>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(out["lambda"].get<Real>() == 2.0);
    CHECK(out["synchronization_impossible"].get<bool>() == false);
    CHECK(out["r_upper_bound"].get<Real>() ==
          doctest::Approx(0.5 + 0.5 * std::sqrt(1.0 - 0.0625)).epsilon(1e-12));
}

TEST_CASE("equilibria: two-oscillator fixture lists both locked states") {
    const CommandResult result =
        run_command(quoted(cli()) + " equilibria " + quoted(fixture("two_oscillator_system.json")));
    REQUIRE(result.exit_code == 0);
    const Json out = Json::parse(result.output);
    REQUIRE(out.is_array());
    REQUIRE(out.size() == 2);

    const Real psi_star = std::asin(0.5);
    CHECK(out[0]["psi"][0].get<Real>() == doctest::Approx(psi_star).epsilon(1e-8));
    CHECK(out[0]["stability"].get<std::string>() == "stable");
    CHECK(out[1]["psi"][0].get<Real>() == doctest::Approx(kPi - psi_star).epsilon(1e-8));
    CHECK(out[1]["stability"].get<std::string>() == "unstable");
    for (const auto& root : out) {
        CHECK(root["residual"].get<Real>() <= 1e-10);
    }

    SUBCASE("a too-coarse grid is a usage error") {
        const CommandResult coarse = run_command(quoted(cli()) + " equilibria " +
                                                 quoted(fixture("two_oscillator_system.json")) +
                                                 " --grid 4");
        CHECK(coarse.exit_code == 1);
    }
}

TEST_CASE("simulate: two-oscillator fixture locks") {
    const CommandResult result =
        run_command(quoted(cli()) + " simulate " + quoted(fixture("two_oscillator_config.json")));
    REQUIRE(result.exit_code == 0);
    const Json summary = Json::parse(result.output);
    CHECK(summary["verdict"]["fss"].get<std::string>() == "true");
    CHECK(summary["verdict"]["fpls"].get<std::string>() == "true");
    // locked pair at psi* = pi/6 has |Z| = cos(pi/12)
    CHECK(summary["r_final"].get<Real>() == doctest::Approx(std::cos(kPi / 12.0)).epsilon(1e-6));
    CHECK(summary["thresholds"]["normalized"]["lambda_c"].get<Real>() ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("simulate then classify: the written artifacts replay to the same verdict") {
    TempDir dir;
    // the fixture config writes its outputs to relative paths: run from the temp dir
    const CommandResult sim = run_command("cd " + quoted(dir.path.string()) + " && " + quoted(cli()) +
                                          " simulate " + quoted(fixture("uniform_sync_config.json")));
    REQUIRE(sim.exit_code == 0);
    REQUIRE(fs::exists(dir.file("uniform_sync.csv")));
    REQUIRE(fs::exists(dir.file("uniform_sync_summary.json")));

    const CommandResult cls =
        run_command(quoted(cli()) + " classify " + quoted(dir.file("uniform_sync.csv")) + " " +
                    quoted(fixture("uniform_sync_system.json")));
    REQUIRE(cls.exit_code == 0);

    const Json replayed = Json::parse(cls.output);
    const Json summary = read_json_file(dir.file("uniform_sync_summary.json"));
    CHECK(replayed == summary["verdict"]);
    CHECK(replayed["fss"].get<std::string>() == "true");
    CHECK(replayed["opss"].get<std::string>() == "true");
}

TEST_CASE("numerical blowup exits 2") {
    TempDir dir;
    ExperimentConfig config;
    config.seed = 1;
    config.n = 2;
    config.omega_spec.kind = OmegaSpec::Kind::explicit_values;
    config.omega_spec.values = {1e308, -1e308};
    config.coupling_spec.lambda = 0.0;
    config.theta0_spec.kind = Theta0Spec::Kind::explicit_values;
    config.theta0_spec.values = {0.0, 0.0};
    config.integrator.dt = 0.5;
    config.integrator.t_end = 100.0;
    config.integrator.sample_every = 1;
    const std::string path = dir.file("blowup.json");
    write_json_file(path, to_json(config));

    const CommandResult result = run_command(quoted(cli()) + " simulate " + quoted(path));
    CHECK(result.exit_code == 2);
}

TEST_CASE("sweep prints one row per coupling") {
    const CommandResult result =
        run_command(quoted(cli()) + " sweep " + quoted(fixture("two_oscillator_config.json")) +
                    " --lambdas 0.5,2.0");
    REQUIRE(result.exit_code == 0);
    CHECK(result.output.rfind("lambda,fss,r_final\n", 0) == 0);
    CHECK(result.output.find("\n0.5,false,") != std::string::npos);
    CHECK(result.output.find("\n2,true,") != std::string::npos);
}
