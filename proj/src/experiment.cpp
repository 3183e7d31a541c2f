#include "kuramoto/experiment.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

#include "kuramoto/io.hpp"
#include "kuramoto/rng.hpp"

namespace kuramoto {

namespace {

// Substream assignment; part of the reproducibility contract.
constexpr std::uint64_t kOmegaStream = 0;
constexpr std::uint64_t kCouplingStream = 1;
constexpr std::uint64_t kTheta0Stream = 2;

Vector sample_omega(const ExperimentConfig& config) {
    const Eigen::Index n = config.n;
    const OmegaSpec& spec = config.omega_spec;
    if (spec.kind == OmegaSpec::Kind::explicit_values) {
        if (static_cast<Eigen::Index>(spec.values.size()) != n) {
            throw std::invalid_argument("omega_spec: " + std::to_string(spec.values.size()) +
                                        " values for n = " + std::to_string(n));
        }
        return Eigen::Map<const Vector>(spec.values.data(), n);
    }
    if (!(spec.variance >= 0.0)) {
        throw std::invalid_argument("omega_spec: variance must be >= 0");
    }
    SplitMix64 rng(config.seed, kOmegaStream);
    const Real stddev = std::sqrt(spec.variance);
    Vector omega(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        omega[j] = rng.next_normal(spec.mean, stddev);
    }
    if (spec.centered) {
        omega.array() -= omega.mean();
    }
    return omega;
}

Matrix sample_coupling(const ExperimentConfig& config) {
    const Eigen::Index n = config.n;
    const CouplingSpec& spec = config.coupling_spec;
    Matrix coupling = Matrix::Zero(n, n);
    switch (spec.kind) {
        case CouplingSpec::Kind::uniform:
            coupling.setConstant(spec.lambda);
            coupling.diagonal().setZero();
            break;
        case CouplingSpec::Kind::gaussian_symmetric: {
            if (!(spec.variance >= 0.0)) {
                throw std::invalid_argument("coupling_spec: variance must be >= 0");
            }
            SplitMix64 rng(config.seed, kCouplingStream);
            const Real stddev = std::sqrt(spec.variance);
            // Lower triangle row by row (j > k), mirrored to keep symmetry.
            for (Eigen::Index j = 1; j < n; ++j) {
                for (Eigen::Index k = 0; k < j; ++k) {
                    const Real value = rng.next_normal(spec.mean, stddev);
                    coupling(j, k) = value;
                    coupling(k, j) = value;
                }
            }
            break;
        }
        case CouplingSpec::Kind::explicit_matrix: {
            if (static_cast<Eigen::Index>(spec.matrix.size()) != n * n) {
                throw std::invalid_argument("coupling_spec: matrix has " + std::to_string(spec.matrix.size()) +
                                            " entries, expected " + std::to_string(n * n));
            }
            for (Eigen::Index j = 0; j < n; ++j) {
                for (Eigen::Index k = 0; k < n; ++k) {
                    coupling(j, k) = spec.matrix[static_cast<std::size_t>(j * n + k)];
                }
            }
            break;
        }
    }
    return coupling;
}

Vector sample_d(const ExperimentConfig& config) {
    const Eigen::Index n = config.n;
    const DSpec& spec = config.d_spec;
    if (spec.kind == DSpec::Kind::ones) {
        return Vector::Ones(n);
    }
    if (static_cast<Eigen::Index>(spec.values.size()) != n) {
        throw std::invalid_argument("d_spec: " + std::to_string(spec.values.size()) + " values for n = " +
                                    std::to_string(n));
    }
    return Eigen::Map<const Vector>(spec.values.data(), n);
}

Vector sample_theta0(const ExperimentConfig& config) {
    const Eigen::Index n = config.n;
    const Theta0Spec& spec = config.theta0_spec;
    if (spec.kind == Theta0Spec::Kind::explicit_values) {
        if (static_cast<Eigen::Index>(spec.values.size()) != n) {
            throw std::invalid_argument("theta0_spec: " + std::to_string(spec.values.size()) +
                                        " values for n = " + std::to_string(n));
        }
        return Eigen::Map<const Vector>(spec.values.data(), n);
    }
    SplitMix64 rng(config.seed, kTheta0Stream);
    Vector theta0(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        theta0[j] = kTwoPi * rng.next_uniform();
    }
    return theta0;
}

} // namespace

SampledExperiment sample_system(const ExperimentConfig& config) {
    if (config.n < 2) {
        throw std::invalid_argument("config: n must be >= 2, got " + std::to_string(config.n));
    }
    SampledExperiment out;
    out.system.n = config.n;
    out.system.omega = sample_omega(config);
    out.system.coupling = sample_coupling(config);
    out.system.d = sample_d(config);
    out.theta0 = sample_theta0(config);
    validate(out.system);
    return out;
}

SystemStats system_stats(const OscillatorSystem& system) {
    SystemStats stats;
    stats.omega_max_abs = system.omega.cwiseAbs().maxCoeff();
    stats.omega_range = system.omega.maxCoeff() - system.omega.minCoeff();
    const Eigen::Index n = system.n;
    Real lambda_min = system.coupling(0, 1);
    Real lambda_max = lambda_min;
    Real sum = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = 0; k < n; ++k) {
            if (j == k) {
                continue;
            }
            const Real value = system.coupling(j, k);
            lambda_min = std::min(lambda_min, value);
            lambda_max = std::max(lambda_max, value);
            sum += value;
        }
    }
    stats.lambda_min = lambda_min;
    stats.lambda_max = lambda_max;
    stats.lambda_mean = sum / static_cast<Real>(n * (n - 1));
    stats.uniform_coupling = (lambda_min == lambda_max);
    return stats;
}

RunOutput run_experiment_detailed(const ExperimentConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    const SampledExperiment sampled = sample_system(config);
    const OscillatorSystem normalized = normalize_frequencies(sampled.system);

    RunOutput out;
    out.trajectory = integrate(normalized, sampled.theta0, config.integrator);
    out.summary.config = config;
    out.summary.stats = system_stats(normalized);
    out.summary.thresholds = critical_coupling(normalized.omega, normalized.n);
    out.summary.thresholds_raw = critical_coupling(sampled.system.omega, sampled.system.n);
    out.summary.verdict = classify_all(out.trajectory, config.classifier);
    out.summary.equivalence = equivalence_report(out.summary.verdict, normalized);
    out.summary.r_final = out.trajectory.r_values[out.trajectory.samples() - 1];
    out.summary.runtime_seconds =
        std::chrono::duration<Real>(std::chrono::steady_clock::now() - start).count();

    if (!config.outputs.trajectory_csv.empty()) {
        write_trajectory_csv(config.outputs.trajectory_csv, out.trajectory);
    }
    if (!config.outputs.summary_json.empty()) {
        write_json_file(config.outputs.summary_json, to_json(out.summary));
    }
    return out;
}

RunSummary run_experiment(const ExperimentConfig& config) {
    return run_experiment_detailed(config).summary;
}

std::vector<RunSummary> sweep_coupling(const ExperimentConfig& config, const std::vector<Real>& lambdas) {
    std::vector<RunSummary> out;
    out.reserve(lambdas.size());
    for (const Real lambda : lambdas) {
        ExperimentConfig point = config;
        point.coupling_spec = CouplingSpec{};
        point.coupling_spec.kind = CouplingSpec::Kind::uniform;
        point.coupling_spec.lambda = lambda;
        point.outputs = OutputSpec{}; // per-point files would overwrite each other
        out.push_back(run_experiment(point));
    }
    return out;
}

namespace {

constexpr std::uint64_t kReferenceSeed = 20260813ULL;
constexpr Real kReferenceOmegaMax = 1.2162;
constexpr Real kReferenceOmegaRange = 2.3697;

} // namespace

Vector reference_natural_frequencies() {
    constexpr Eigen::Index n = 100;
    constexpr Real omega_max = kReferenceOmegaMax;
    constexpr Real omega_min = omega_max - kReferenceOmegaRange;
    Vector omega(n);
    omega[0] = omega_max;
    omega[1] = omega_min;

    // Interior: one frozen draw from a centered normal with stddev 0.5,
    // shifted so the full vector sums to zero and contracted towards its mean
    // if any value would escape the pinned extremes.
    const Eigen::Index interior = n - 2;
    SplitMix64 rng(kReferenceSeed, 0);
    Vector draw(interior);
    for (Eigen::Index j = 0; j < interior; ++j) {
        draw[j] = rng.next_normal(0.0, 0.5);
    }
    const Real target_mean = -(omega_max + omega_min) / static_cast<Real>(interior);
    draw.array() -= draw.mean();

    constexpr Real margin = 0.02; // keep the extremes strictly extremal
    Real shrink = 1.0;
    for (Eigen::Index j = 0; j < interior; ++j) {
        if (target_mean + draw[j] > omega_max - margin) {
            shrink = std::min(shrink, (omega_max - margin - target_mean) / draw[j]);
        }
        if (target_mean + draw[j] < omega_min + margin) {
            shrink = std::min(shrink, (omega_min + margin - target_mean) / draw[j]);
        }
    }
    omega.tail(interior) = target_mean + shrink * draw.array();
    return omega;
}

ExperimentConfig reference_uniform_config(Real lambda) {
    ExperimentConfig config;
    config.seed = kReferenceSeed;
    config.n = 100;
    config.omega_spec.kind = OmegaSpec::Kind::explicit_values;
    const Vector omega = reference_natural_frequencies();
    config.omega_spec.values.assign(omega.begin(), omega.end());
    config.coupling_spec.kind = CouplingSpec::Kind::uniform;
    config.coupling_spec.lambda = lambda;
    return config;
}

ExperimentConfig reference_gaussian_config(Real coupling_mean) {
    ExperimentConfig config;
    config.seed = kReferenceSeed;
    config.n = 100;
    config.omega_spec.kind = OmegaSpec::Kind::normal;
    config.omega_spec.mean = 1.0;
    config.omega_spec.variance = 0.25;
    config.omega_spec.centered = true;
    config.coupling_spec.kind = CouplingSpec::Kind::gaussian_symmetric;
    config.coupling_spec.mean = coupling_mean;
    config.coupling_spec.variance = 0.5;
    return config;
}

} // namespace kuramoto
