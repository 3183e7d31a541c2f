#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <unistd.h>

#include "kuramoto/experiment.hpp"
#include "kuramoto/io.hpp"
#include "kuramoto/model.hpp"

using namespace kuramoto;

namespace {

namespace fs = std::filesystem;

/// Unique scratch directory, removed on destruction.
struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("kuramoto_test_" + std::to_string(::getpid()) + "_" +
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

ExperimentConfig small_config(std::uint64_t seed) {
    ExperimentConfig config;
    config.seed = seed;
    config.n = 5;
    config.omega_spec.kind = OmegaSpec::Kind::normal;
    config.omega_spec.mean = 0.0;
    config.omega_spec.variance = 0.25;
    config.omega_spec.centered = true;
    config.coupling_spec.kind = CouplingSpec::Kind::uniform;
    config.coupling_spec.lambda = 2.5;
    config.integrator.t_end = 60.0;
    return config;
}

} // namespace

TEST_CASE("sampling is deterministic and spec kinds behave as documented") {
    const ExperimentConfig config = small_config(7);
    const SampledExperiment a = sample_system(config);
    const SampledExperiment b = sample_system(config);

    CHECK(a.system.omega == b.system.omega);
    CHECK(a.system.coupling == b.system.coupling);
    CHECK(a.theta0 == b.theta0);

    SUBCASE("centered draws have zero sample mean") {
        CHECK(std::abs(a.system.omega.mean()) <= 1e-12);
    }
    SUBCASE("uniform coupling fills off-diagonal entries and zeroes the diagonal") {
        const SystemStats stats = system_stats(a.system);
        CHECK(stats.uniform_coupling);
        CHECK(stats.lambda_min == 2.5);
        CHECK(stats.lambda_max == 2.5);
        CHECK(a.system.coupling.diagonal().cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("initial phases land in [0, 2*pi)") {
        CHECK(a.theta0.minCoeff() >= 0.0);
        CHECK(a.theta0.maxCoeff() < kTwoPi);
    }
}

TEST_CASE("substreams are decorrelated: omega spec does not shift theta0 draws") {
    ExperimentConfig base = small_config(11);
    ExperimentConfig expl = base;
    expl.omega_spec.kind = OmegaSpec::Kind::explicit_values;
    expl.omega_spec.values = {0.4, -0.1, -0.1, -0.1, -0.1}; // consumes no RNG draws

    const SampledExperiment a = sample_system(base);
    const SampledExperiment b = sample_system(expl);
    CHECK(a.theta0 == b.theta0);             // stream 2 untouched by stream 0 usage
    CHECK(a.system.coupling == b.system.coupling);
    CHECK(a.system.omega != b.system.omega);
}

TEST_CASE("gaussian_symmetric coupling is symmetric with zero diagonal") {
    ExperimentConfig config = small_config(13);
    config.coupling_spec.kind = CouplingSpec::Kind::gaussian_symmetric;
    config.coupling_spec.mean = 1.0;
    config.coupling_spec.variance = 0.5;
    const SampledExperiment sampled = sample_system(config);
    const Matrix& coupling = sampled.system.coupling;

    CHECK((coupling - coupling.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(coupling.diagonal().cwiseAbs().maxCoeff() == 0.0);
    CHECK_FALSE(system_stats(sampled.system).uniform_coupling);
}

TEST_CASE("explicit specs validate their lengths") {
    ExperimentConfig config = small_config(17);
    SUBCASE("omega length mismatch") {
        config.omega_spec.kind = OmegaSpec::Kind::explicit_values;
        config.omega_spec.values = {0.1, -0.1};
        CHECK_THROWS_AS(sample_system(config), std::invalid_argument);
    }
    SUBCASE("coupling matrix size mismatch") {
        config.coupling_spec.kind = CouplingSpec::Kind::explicit_matrix;
        config.coupling_spec.matrix.assign(9, 0.0);
        CHECK_THROWS_AS(sample_system(config), std::invalid_argument);
    }
    SUBCASE("d length mismatch") {
        config.d_spec.kind = DSpec::Kind::explicit_values;
        config.d_spec.values = {1.0};
        CHECK_THROWS_AS(sample_system(config), std::invalid_argument);
    }
    SUBCASE("theta0 length mismatch") {
        config.theta0_spec.kind = Theta0Spec::Kind::explicit_values;
        config.theta0_spec.values = {0.0};
        CHECK_THROWS_AS(sample_system(config), std::invalid_argument);
    }
    SUBCASE("asymmetric explicit coupling is rejected") {
        config.n = 2;
        config.coupling_spec.kind = CouplingSpec::Kind::explicit_matrix;
        config.coupling_spec.matrix = {0.0, 1.0, 2.0, 0.0};
        CHECK_THROWS_AS(sample_system(config), std::invalid_argument);
    }
}

TEST_CASE("run_experiment produces a coherent summary and writes outputs") {
    TempDir dir;
    ExperimentConfig config = small_config(23);
    config.outputs.trajectory_csv = dir.file("traj.csv");
    config.outputs.summary_json = dir.file("summary.json");

    const RunOutput output = run_experiment_detailed(config);
    const RunSummary& summary = output.summary;

    CHECK(fs::exists(config.outputs.trajectory_csv));
    CHECK(fs::exists(config.outputs.summary_json));

    // the trajectory carries the normalized system
    CHECK(std::abs(output.trajectory.system.omega.sum()) <= 1e-12);
    CHECK(summary.r_final == output.trajectory.r_values[output.trajectory.samples() - 1]);
    CHECK(summary.runtime_seconds > 0.0);

    SUBCASE("stats echo the integrated system") {
        const SystemStats stats = system_stats(output.trajectory.system);
        CHECK(summary.stats.omega_max_abs == stats.omega_max_abs);
        CHECK(summary.stats.lambda_mean == stats.lambda_mean);
        CHECK(summary.stats.uniform_coupling == stats.uniform_coupling);
    }

    SUBCASE("summary JSON is byte-reproducible apart from the runtime") {
        const RunSummary again = run_experiment(config);
        Json lhs = to_json(summary);
        Json rhs = to_json(again);
        lhs.erase("runtime_seconds");
        rhs.erase("runtime_seconds");
        CHECK(lhs.dump(2) == rhs.dump(2));
    }

    SUBCASE("classify on the written CSV reproduces the verdict bit for bit") {
        const Trajectory replayed =
            read_trajectory_csv(config.outputs.trajectory_csv, output.trajectory.system);
        const SyncVerdict replay_verdict = classify_all(replayed, config.classifier);
        const Json lhs = to_json(summary.verdict);
        const Json rhs = to_json(replay_verdict);
        CHECK(lhs.dump() == rhs.dump());
    }
}

TEST_CASE("sweep_coupling overrides lambda and never writes files") {
    TempDir dir;
    ExperimentConfig config;
    config.seed = 1;
    config.n = 2;
    config.omega_spec.kind = OmegaSpec::Kind::explicit_values;
    config.omega_spec.values = {0.5, -0.5};
    config.theta0_spec.kind = Theta0Spec::Kind::explicit_values;
    config.theta0_spec.values = {0.0, 0.0};
    config.integrator.t_end = 60.0;
    config.outputs.trajectory_csv = dir.file("should_not_exist.csv");

    const std::vector<RunSummary> rows = sweep_coupling(config, {0.5, 2.0});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].verdict.fss == Flag::False);
    CHECK(rows[1].verdict.fss == Flag::True);
    CHECK(rows[0].stats.lambda_max == 0.5);
    CHECK(rows[1].stats.lambda_max == 2.0);
    CHECK_FALSE(fs::exists(config.outputs.trajectory_csv));

    const std::string table = format_sweep_table(rows);
    CHECK(table.find("lambda,fss,r_final") == 0);
    CHECK(table.find("0.5,false,") != std::string::npos);
    CHECK(table.find("2,true,") != std::string::npos);
}

TEST_CASE("config JSON round trip is exact and strict") {
    ExperimentConfig config = small_config(29);
    config.outputs.trajectory_csv = "out.csv";
    config.integrator.method = Method::rk45;
    config.classifier.eps_freq = 2e-4;

    const Json json = to_json(config);
    const ExperimentConfig back = config_from_json(json);
    CHECK(to_json(back).dump(2) == json.dump(2));

    SUBCASE("unknown top-level key is rejected") {
        Json bad = json;
        bad["surprise"] = 1;
        CHECK_THROWS_AS(config_from_json(bad), std::invalid_argument);
    }
    SUBCASE("unknown nested key is rejected") {
        Json bad = json;
        bad["integrator"]["dtt"] = 0.1;
        CHECK_THROWS_AS(config_from_json(bad), std::invalid_argument);
    }
    SUBCASE("missing required key is rejected") {
        Json bad = json;
        bad.erase("seed");
        CHECK_THROWS_AS(config_from_json(bad), std::invalid_argument);
    }
    SUBCASE("non-integer seed is rejected") {
        Json bad = json;
        bad["seed"] = 1.5;
        CHECK_THROWS_AS(config_from_json(bad), std::invalid_argument);
    }
    SUBCASE("unknown method name is rejected") {
        Json bad = json;
        bad["integrator"]["method"] = "euler";
        CHECK_THROWS_AS(config_from_json(bad), std::invalid_argument);
    }
}

TEST_CASE("system JSON round trip preserves every entry") {
    const SampledExperiment sampled = sample_system(small_config(31));
    const Json json = to_json(sampled.system);
    const OscillatorSystem back = system_from_json(json);
    CHECK(back.n == sampled.system.n);
    CHECK(back.d == sampled.system.d);
    CHECK(back.omega == sampled.system.omega);
    CHECK(back.coupling == sampled.system.coupling);

    SUBCASE("nested coupling rows are accepted too") {
        Json nested = json;
        nested["coupling"] = Json::array();
        for (Eigen::Index j = 0; j < sampled.system.n; ++j) {
            Json row = Json::array();
            for (Eigen::Index k = 0; k < sampled.system.n; ++k) {
                row.push_back(sampled.system.coupling(j, k));
            }
            nested["coupling"].push_back(row);
        }
        const OscillatorSystem from_nested = system_from_json(nested);
        CHECK(from_nested.coupling == sampled.system.coupling);
    }
}

TEST_CASE("trajectory CSV round trip is bit exact") {
    TempDir dir;
    ExperimentConfig config = small_config(37);
    config.integrator.t_end = 10.0;
    const RunOutput output = run_experiment_detailed(config);
    const std::string path = dir.file("roundtrip.csv");
    write_trajectory_csv(path, output.trajectory);
    const Trajectory back = read_trajectory_csv(path, output.trajectory.system);

    CHECK(back.times == output.trajectory.times);
    CHECK(back.thetas == output.trajectory.thetas);
    CHECK(back.theta_dots == output.trajectory.theta_dots);
    CHECK(back.r_values == output.trajectory.r_values);

    SUBCASE("a trajectory from the wrong system is rejected") {
        OscillatorSystem other = output.trajectory.system;
        other.omega[0] += 0.5;
        other.omega[1] -= 0.5;
        CHECK_THROWS_AS(read_trajectory_csv(path, other), std::invalid_argument);
    }
}

TEST_CASE("reference frequency vector has the pinned extremes") {
    const Vector omega = reference_natural_frequencies();
    REQUIRE(omega.size() == 100);
    CHECK(std::abs(omega.sum()) <= 1e-9);
    CHECK(omega.maxCoeff() == 1.2162);
    CHECK(omega.minCoeff() == -1.1535);

    // the extremes are attained exactly once, by the pinned entries
    int at_max = 0;
    int at_min = 0;
    for (Eigen::Index j = 0; j < omega.size(); ++j) {
        if (omega[j] == 1.2162) ++at_max;
        if (omega[j] == -1.1535) ++at_min;
    }
    CHECK(at_max == 1);
    CHECK(at_min == 1);
    // interior entries stay strictly inside the pinned range
    for (Eigen::Index j = 2; j < omega.size(); ++j) {
        CHECK(omega[j] < 1.2162);
        CHECK(omega[j] > -1.1535);
    }
}

TEST_CASE("reference configs reproduce the frozen experiment family") {
    const ExperimentConfig sync = reference_uniform_config(1.44);
    CHECK(sync.n == 100);
    CHECK(sync.coupling_spec.kind == CouplingSpec::Kind::uniform);
    CHECK(sync.coupling_spec.lambda == 1.44);
    CHECK(sync.omega_spec.kind == OmegaSpec::Kind::explicit_values);

    const SampledExperiment sampled = sample_system(sync);
    CHECK(sampled.system.omega.maxCoeff() == 1.2162);

    const ExperimentConfig gaussian = reference_gaussian_config(2.0);
    CHECK(gaussian.coupling_spec.kind == CouplingSpec::Kind::gaussian_symmetric);
    CHECK(gaussian.coupling_spec.mean == 2.0);
    const SampledExperiment gsampled = sample_system(gaussian);
    CHECK((gsampled.system.coupling - gsampled.system.coupling.transpose()).cwiseAbs().maxCoeff() == 0.0);
}
