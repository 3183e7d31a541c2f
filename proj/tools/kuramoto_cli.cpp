// Command-line front end: simulate experiments, classify recorded
// trajectories, evaluate synchronization thresholds, enumerate locked states
// and sweep coupling strengths.
//
// Exit codes: 0 success, 1 usage/validation error, 2 numerical failure.

#include <CLI11.hpp>

#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "kuramoto/kuramoto.hpp"

namespace {

constexpr const char* kVersion = "kuramoto 0.1.0";

std::vector<kuramoto::Real> parse_lambda_list(const std::string& text) {
    std::vector<kuramoto::Real> out;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (item.empty()) {
            continue;
        }
        out.push_back(std::stod(item));
    }
    if (out.empty()) {
        throw std::invalid_argument("--lambdas: expected a comma-separated list of values");
    }
    return out;
}

int run_simulate(const std::string& config_path) {
    const kuramoto::Json json = kuramoto::read_json_file(config_path);
    const kuramoto::ExperimentConfig config = kuramoto::config_from_json(json);
    const kuramoto::RunSummary summary = kuramoto::run_experiment(config);
    std::cout << kuramoto::to_json(summary).dump(2) << '\n';
    return 0;
}

int run_classify(const std::string& trajectory_path, const std::string& system_path) {
    const kuramoto::OscillatorSystem system =
        kuramoto::system_from_json(kuramoto::read_json_file(system_path));
    // Classifiers are defined on the normalized flow; normalization is
    // idempotent, so a trajectory generated from an already-normalized system
    // checks out against the same matrix.
    const kuramoto::OscillatorSystem normalized = kuramoto::normalize_frequencies(system);
    const kuramoto::Trajectory traj = kuramoto::read_trajectory_csv(trajectory_path, normalized);
    const kuramoto::SyncVerdict verdict = kuramoto::classify_all(traj, kuramoto::ClassifierConfig{});
    std::cout << kuramoto::to_json(verdict).dump(2) << '\n';
    return 0;
}

int run_thresholds(const std::string& system_path) {
    const kuramoto::OscillatorSystem system =
        kuramoto::system_from_json(kuramoto::read_json_file(system_path));
    const kuramoto::OscillatorSystem normalized = kuramoto::normalize_frequencies(system);

    kuramoto::Json out;
    out["raw"] = kuramoto::to_json(kuramoto::critical_coupling(system.omega, system.n));
    out["normalized"] = kuramoto::to_json(kuramoto::critical_coupling(normalized.omega, normalized.n));

    const kuramoto::SystemStats stats = kuramoto::system_stats(system);
    if (stats.uniform_coupling) {
        const kuramoto::Real lambda = stats.lambda_max;
        const kuramoto::Real lambda_c = out["normalized"]["lambda_c"].get<kuramoto::Real>();
        out["lambda"] = lambda;
        out["synchronization_impossible"] = lambda < lambda_c;
        const kuramoto::Real omega_max_abs = normalized.omega.cwiseAbs().maxCoeff();
        if (lambda > omega_max_abs && omega_max_abs > 0.0) {
            out["r_upper_bound"] = kuramoto::r_upper_bound(omega_max_abs, lambda, system.n);
        }
    }
    std::cout << out.dump(2) << '\n';
    return 0;
}

int run_equilibria(const std::string& system_path, int grid, double tol) {
    const kuramoto::OscillatorSystem system =
        kuramoto::system_from_json(kuramoto::read_json_file(system_path));
    const kuramoto::OscillatorSystem normalized = kuramoto::normalize_frequencies(system);
    const kuramoto::EquilibriumSet set = kuramoto::find_equilibria(normalized, grid, tol);
    std::cout << kuramoto::to_json(set).dump(2) << '\n';
    return 0;
}

int run_sweep(const std::string& config_path, const std::string& lambda_list) {
    const kuramoto::ExperimentConfig config =
        kuramoto::config_from_json(kuramoto::read_json_file(config_path));
    const auto lambdas = parse_lambda_list(lambda_list);
    const auto rows = kuramoto::sweep_coupling(config, lambdas);
    std::cout << kuramoto::format_sweep_table(rows);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coupled-oscillator synchronization toolbox"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string config_path;
    std::string system_path;
    std::string trajectory_path;
    std::string lambda_list;
    int grid = 16;
    double tol = 1e-10;

    CLI::App* simulate = app.add_subcommand("simulate", "Run one experiment from a config JSON");
    simulate->add_option("config", config_path, "experiment config JSON")->required();

    CLI::App* classify = app.add_subcommand("classify", "Classify a recorded trajectory CSV");
    classify->add_option("trajectory", trajectory_path, "trajectory CSV")->required();
    classify->add_option("system", system_path, "system JSON the trajectory was generated from")->required();

    CLI::App* thresholds = app.add_subcommand("thresholds", "Evaluate closed-form synchronization thresholds");
    thresholds->add_option("system", system_path, "system JSON")->required();

    CLI::App* equilibria = app.add_subcommand("equilibria", "Enumerate phase-locked states");
    equilibria->add_option("system", system_path, "system JSON")->required();
    equilibria->add_option("--grid", grid, "Newton seeds per reduced dimension (>= 8)");
    equilibria->add_option("--tol", tol, "root residual threshold");

    CLI::App* sweep = app.add_subcommand("sweep", "Rerun a config over a list of uniform couplings");
    sweep->add_option("config", config_path, "experiment config JSON")->required();
    sweep->add_option("--lambdas", lambda_list, "comma-separated coupling strengths")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // 0
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e); // 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (simulate->parsed()) {
            return run_simulate(config_path);
        }
        if (classify->parsed()) {
            return run_classify(trajectory_path, system_path);
        }
        if (thresholds->parsed()) {
            return run_thresholds(system_path);
        }
        if (equilibria->parsed()) {
            return run_equilibria(system_path, grid, tol);
        }
        if (sweep->parsed()) {
            return run_sweep(config_path, lambda_list);
        }
    } catch (const kuramoto::NumericalError& error) {
        std::cerr << "numerical error: " << error.what() << '\n';
        return 2;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << '\n';
        return 1;
    }
    return 1;
}
