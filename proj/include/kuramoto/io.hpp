#pragma once

#include <nlohmann/json.hpp>

#include <string>

#include "kuramoto/analysis.hpp"
#include "kuramoto/equilibria.hpp"
#include "kuramoto/experiment.hpp"
#include "kuramoto/integrator.hpp"
#include "kuramoto/model.hpp"
#include "kuramoto/thresholds.hpp"

namespace kuramoto {

using Json = nlohmann::json;

/// System JSON: {"n", "d", "omega", "coupling"} with the coupling matrix as a
/// flat row-major array (a nested array-of-rows is also accepted on input).
Json to_json(const OscillatorSystem& system);
OscillatorSystem system_from_json(const Json& json);

/// Experiment config JSON. Parsing is strict: unknown keys anywhere in the
/// document are rejected so that a typoed tolerance cannot silently fall back
/// to a default.
Json to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const Json& json);

Json to_json(const ThresholdReport& report);
Json to_json(const SyncVerdict& verdict);
Json to_json(const EquivalenceReport& report);
Json to_json(const RunSummary& summary);
Json to_json(const EquilibriumSet& set);

/// Trajectory CSV: header t,theta_1..theta_N,dtheta_1..dtheta_N,R,Phi; one row
/// per sample; floats written with 17 significant digits so a read-back is
/// bit-exact.
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

/// Reads a trajectory CSV written by write_trajectory_csv. The stored system
/// is not part of the CSV; pass the system the trajectory was generated from
/// (it is re-attached and cross-checked against the recorded derivatives).
Trajectory read_trajectory_csv(const std::string& path, const OscillatorSystem& system);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& json);

std::string format_sweep_table(const std::vector<RunSummary>& rows);

} // namespace kuramoto
