// Regenerates the checked-in fixture files from the frozen reference
// experiment definitions. Run from the repository root:
//
//   build/tools/make_fixtures [output-dir]
//
// The files are deterministic; regeneration must be a no-op unless the
// reference definitions themselves changed.

#include <filesystem>
#include <iostream>
#include <string>

#include "kuramoto/kuramoto.hpp"

int main(int argc, char** argv) {
    namespace fs = std::filesystem;
    const fs::path out_dir = (argc > 1) ? argv[1] : "fixtures";
    fs::create_directories(out_dir);

    using namespace kuramoto;

    const auto write = [&](const std::string& name, const Json& json) {
        const fs::path path = out_dir / name;
        write_json_file(path.string(), json);
        std::cout << "wrote " << path.string() << '\n';
    };

    // Uniform-coupling experiment configs on the frozen 100-oscillator
    // frequency vector: lambda = 1.44 synchronizes, 1.22 sits below the
    // closed-form threshold (~1.2269) and cannot.
    {
        ExperimentConfig sync = reference_uniform_config(1.44);
        sync.outputs.trajectory_csv = "uniform_sync.csv";
        sync.outputs.summary_json = "uniform_sync_summary.json";
        write("uniform_sync_config.json", to_json(sync));

        ExperimentConfig nosync = reference_uniform_config(1.22);
        nosync.outputs.trajectory_csv = "uniform_nosync.csv";
        nosync.outputs.summary_json = "uniform_nosync_summary.json";
        write("uniform_nosync_config.json", to_json(nosync));

        // Matching plain system files for the thresholds/equilibria commands.
        const SampledExperiment sync_sample = sample_system(sync);
        write("uniform_sync_system.json", to_json(sync_sample.system));
        const SampledExperiment nosync_sample = sample_system(nosync);
        write("uniform_nosync_system.json", to_json(nosync_sample.system));
    }

    // Random symmetric coupling, frequencies ~ N(1, 0.25) centered:
    // coupling ~ N(2, 0.5) synchronizes, N(0, 0.5) does not.
    {
        ExperimentConfig sync = reference_gaussian_config(2.0);
        sync.outputs.trajectory_csv = "gaussian_sync.csv";
        sync.outputs.summary_json = "gaussian_sync_summary.json";
        write("gaussian_sync_config.json", to_json(sync));

        ExperimentConfig nosync = reference_gaussian_config(0.0);
        nosync.outputs.trajectory_csv = "gaussian_nosync.csv";
        nosync.outputs.summary_json = "gaussian_nosync_summary.json";
        write("gaussian_nosync_config.json", to_json(nosync));
    }

    // Minimal two-oscillator locking example (threshold |omega_2 - omega_1| = 1).
    {
        ExperimentConfig pair;
        pair.seed = 1;
        pair.n = 2;
        pair.omega_spec.kind = OmegaSpec::Kind::explicit_values;
        pair.omega_spec.values = {0.5, -0.5};
        pair.coupling_spec.kind = CouplingSpec::Kind::uniform;
        pair.coupling_spec.lambda = 2.0;
        pair.theta0_spec.kind = Theta0Spec::Kind::explicit_values;
        pair.theta0_spec.values = {0.0, 0.0};
        write("two_oscillator_config.json", to_json(pair));
        write("two_oscillator_system.json", to_json(sample_system(pair).system));
    }

    return 0;
}
