#include "kuramoto/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

namespace kuramoto {

namespace {

[[noreturn]] void bad_input(const std::string& message) {
    throw std::invalid_argument(message);
}

void require_keys(const Json& json, const std::string& context,
                  std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional = {}) {
    if (!json.is_object()) {
        bad_input(context + ": expected a JSON object");
    }
    for (const char* key : required) {
        if (!json.contains(key)) {
            bad_input(context + ": missing key \"" + key + "\"");
        }
    }
    for (const auto& [key, value] : json.items()) {
        const auto known = [&](std::initializer_list<const char*> list) {
            for (const char* k : list) {
                if (key == k) {
                    return true;
                }
            }
            return false;
        };
        if (!known(required) && !known(optional)) {
            bad_input(context + ": unknown key \"" + key + "\"");
        }
    }
}

Vector vector_from_json(const Json& json, const std::string& context) {
    if (!json.is_array()) {
        bad_input(context + ": expected an array");
    }
    Vector out(static_cast<Eigen::Index>(json.size()));
    Eigen::Index i = 0;
    for (const auto& value : json) {
        if (!value.is_number()) {
            bad_input(context + ": expected numeric entries");
        }
        out[i++] = value.get<Real>();
    }
    return out;
}

Json vector_to_json(const Vector& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(v[i]);
    }
    return out;
}

std::vector<Real> real_list_from_json(const Json& json, const std::string& context) {
    const Vector v = vector_from_json(json, context);
    return std::vector<Real>(v.begin(), v.end());
}

void append_float(std::string& out, Real value) {
    char buffer[32];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                      std::chars_format::general, 17);
    out.append(buffer, result.ptr);
}

Real parse_float(const char* begin, const char* end, const std::string& context) {
    Real value = 0.0;
    const auto result = std::from_chars(begin, end, value);
    if (result.ec != std::errc() || result.ptr != end) {
        bad_input(context + ": malformed float \"" + std::string(begin, end) + "\"");
    }
    return value;
}

} // namespace

Json to_json(const OscillatorSystem& system) {
    Json coupling = Json::array();
    for (Eigen::Index j = 0; j < system.n; ++j) {
        for (Eigen::Index k = 0; k < system.n; ++k) {
            coupling.push_back(system.coupling(j, k));
        }
    }
    return Json{{"n", system.n},
                {"d", vector_to_json(system.d)},
                {"omega", vector_to_json(system.omega)},
                {"coupling", std::move(coupling)}};
}

OscillatorSystem system_from_json(const Json& json) {
    require_keys(json, "system", {"n", "d", "omega", "coupling"});
    OscillatorSystem system;
    if (!json["n"].is_number_integer()) {
        bad_input("system: n must be an integer");
    }
    system.n = json["n"].get<Eigen::Index>();
    system.d = vector_from_json(json["d"], "system.d");
    system.omega = vector_from_json(json["omega"], "system.omega");

    const Json& coupling = json["coupling"];
    if (!coupling.is_array()) {
        bad_input("system.coupling: expected an array");
    }
    const Eigen::Index n = system.n;
    system.coupling.resize(n, n);
    if (!coupling.empty() && coupling.front().is_array()) {
        // nested rows
        if (static_cast<Eigen::Index>(coupling.size()) != n) {
            bad_input("system.coupling: expected " + std::to_string(n) + " rows");
        }
        Eigen::Index j = 0;
        for (const auto& row : coupling) {
            system.coupling.row(j++) = vector_from_json(row, "system.coupling row").transpose();
        }
    } else {
        if (static_cast<Eigen::Index>(coupling.size()) != n * n) {
            bad_input("system.coupling: expected " + std::to_string(n * n) + " row-major entries");
        }
        Eigen::Index i = 0;
        for (const auto& value : coupling) {
            system.coupling(i / n, i % n) = value.get<Real>();
            ++i;
        }
    }
    validate(system);
    return system;
}

namespace {

Json to_json(const OmegaSpec& spec) {
    switch (spec.kind) {
        case OmegaSpec::Kind::normal: {
            Json out{{"kind", "normal"}, {"mean", spec.mean}, {"variance", spec.variance}};
            if (spec.centered) {
                out["centered"] = true;
            }
            return out;
        }
        default:
            return Json{{"kind", "explicit"}, {"values", spec.values}};
    }
}

OmegaSpec omega_spec_from_json(const Json& json) {
    require_keys(json, "omega_spec", {"kind"}, {"mean", "variance", "centered", "values"});
    OmegaSpec spec;
    const std::string kind = json["kind"].get<std::string>();
    if (kind == "normal") {
        spec.kind = OmegaSpec::Kind::normal;
        spec.mean = json.value("mean", 0.0);
        spec.variance = json.value("variance", 1.0);
        spec.centered = json.value("centered", false);
        if (json.contains("values")) {
            bad_input("omega_spec: \"values\" is only valid with kind \"explicit\"");
        }
    } else if (kind == "explicit") {
        spec.kind = OmegaSpec::Kind::explicit_values;
        if (!json.contains("values")) {
            bad_input("omega_spec: kind \"explicit\" requires \"values\"");
        }
        spec.values = real_list_from_json(json["values"], "omega_spec.values");
    } else {
        bad_input("omega_spec: unknown kind \"" + kind + "\"");
    }
    return spec;
}

Json to_json(const CouplingSpec& spec) {
    switch (spec.kind) {
        case CouplingSpec::Kind::uniform:
            return Json{{"kind", "uniform"}, {"lambda", spec.lambda}};
        case CouplingSpec::Kind::gaussian_symmetric:
            return Json{{"kind", "gaussian_symmetric"}, {"mean", spec.mean}, {"variance", spec.variance}};
        default:
            return Json{{"kind", "explicit"}, {"matrix", spec.matrix}};
    }
}

CouplingSpec coupling_spec_from_json(const Json& json) {
    require_keys(json, "coupling_spec", {"kind"}, {"lambda", "mean", "variance", "matrix"});
    CouplingSpec spec;
    const std::string kind = json["kind"].get<std::string>();
    if (kind == "uniform") {
        spec.kind = CouplingSpec::Kind::uniform;
        if (!json.contains("lambda")) {
            bad_input("coupling_spec: kind \"uniform\" requires \"lambda\"");
        }
        spec.lambda = json["lambda"].get<Real>();
    } else if (kind == "gaussian_symmetric") {
        spec.kind = CouplingSpec::Kind::gaussian_symmetric;
        spec.mean = json.value("mean", 0.0);
        spec.variance = json.value("variance", 1.0);
    } else if (kind == "explicit") {
        spec.kind = CouplingSpec::Kind::explicit_matrix;
        if (!json.contains("matrix")) {
            bad_input("coupling_spec: kind \"explicit\" requires \"matrix\"");
        }
        spec.matrix = real_list_from_json(json["matrix"], "coupling_spec.matrix");
    } else {
        bad_input("coupling_spec: unknown kind \"" + kind + "\"");
    }
    return spec;
}

Json to_json(const DSpec& spec) {
    if (spec.kind == DSpec::Kind::ones) {
        return Json{{"kind", "ones"}};
    }
    return Json{{"kind", "explicit"}, {"values", spec.values}};
}

DSpec d_spec_from_json(const Json& json) {
    require_keys(json, "d_spec", {"kind"}, {"values"});
    DSpec spec;
    const std::string kind = json["kind"].get<std::string>();
    if (kind == "ones") {
        spec.kind = DSpec::Kind::ones;
    } else if (kind == "explicit") {
        spec.kind = DSpec::Kind::explicit_values;
        if (!json.contains("values")) {
            bad_input("d_spec: kind \"explicit\" requires \"values\"");
        }
        spec.values = real_list_from_json(json["values"], "d_spec.values");
    } else {
        bad_input("d_spec: unknown kind \"" + kind + "\"");
    }
    return spec;
}

Json to_json(const Theta0Spec& spec) {
    if (spec.kind == Theta0Spec::Kind::uniform_circle) {
        return Json{{"kind", "uniform_circle"}};
    }
    return Json{{"kind", "explicit"}, {"values", spec.values}};
}

Theta0Spec theta0_spec_from_json(const Json& json) {
    require_keys(json, "theta0_spec", {"kind"}, {"values"});
    Theta0Spec spec;
    const std::string kind = json["kind"].get<std::string>();
    if (kind == "uniform_circle") {
        spec.kind = Theta0Spec::Kind::uniform_circle;
    } else if (kind == "explicit") {
        spec.kind = Theta0Spec::Kind::explicit_values;
        if (!json.contains("values")) {
            bad_input("theta0_spec: kind \"explicit\" requires \"values\"");
        }
        spec.values = real_list_from_json(json["values"], "theta0_spec.values");
    } else {
        bad_input("theta0_spec: unknown kind \"" + kind + "\"");
    }
    return spec;
}

Json to_json(const IntegratorConfig& config) {
    return Json{{"method", config.method == Method::rk4 ? "rk4" : "rk45"},
                {"dt", config.dt},
                {"t_end", config.t_end},
                {"sample_every", config.sample_every},
                {"rel_tol", config.rel_tol},
                {"abs_tol", config.abs_tol}};
}

IntegratorConfig integrator_from_json(const Json& json) {
    require_keys(json, "integrator", {}, {"method", "dt", "t_end", "sample_every", "rel_tol", "abs_tol"});
    IntegratorConfig config;
    const std::string method = json.value("method", "rk4");
    if (method == "rk4") {
        config.method = Method::rk4;
    } else if (method == "rk45") {
        config.method = Method::rk45;
    } else {
        bad_input("integrator: unknown method \"" + method + "\"");
    }
    config.dt = json.value("dt", config.dt);
    config.t_end = json.value("t_end", config.t_end);
    config.sample_every = json.value("sample_every", config.sample_every);
    config.rel_tol = json.value("rel_tol", config.rel_tol);
    config.abs_tol = json.value("abs_tol", config.abs_tol);
    return config;
}

Json to_json(const ClassifierConfig& config) {
    return Json{{"window_fraction", config.window_fraction}, {"eps_freq", config.eps_freq},
                {"eps_drift", config.eps_drift},             {"lock_bound", config.lock_bound},
                {"eps_op", config.eps_op},                   {"eps_margin", config.eps_margin}};
}

ClassifierConfig classifier_from_json(const Json& json) {
    require_keys(json, "classifier", {},
                 {"window_fraction", "eps_freq", "eps_drift", "lock_bound", "eps_op", "eps_margin"});
    ClassifierConfig config;
    config.window_fraction = json.value("window_fraction", config.window_fraction);
    config.eps_freq = json.value("eps_freq", config.eps_freq);
    config.eps_drift = json.value("eps_drift", config.eps_drift);
    config.lock_bound = json.value("lock_bound", config.lock_bound);
    config.eps_op = json.value("eps_op", config.eps_op);
    config.eps_margin = json.value("eps_margin", config.eps_margin);
    return config;
}

Json to_json(const OutputSpec& spec) {
    Json out = Json::object();
    if (!spec.trajectory_csv.empty()) {
        out["trajectory_csv"] = spec.trajectory_csv;
    }
    if (!spec.summary_json.empty()) {
        out["summary_json"] = spec.summary_json;
    }
    return out;
}

OutputSpec outputs_from_json(const Json& json) {
    require_keys(json, "outputs", {}, {"trajectory_csv", "summary_json"});
    OutputSpec spec;
    spec.trajectory_csv = json.value("trajectory_csv", "");
    spec.summary_json = json.value("summary_json", "");
    return spec;
}

} // namespace

Json to_json(const ExperimentConfig& config) {
    return Json{{"seed", config.seed},
                {"n", config.n},
                {"omega_spec", to_json(config.omega_spec)},
                {"coupling_spec", to_json(config.coupling_spec)},
                {"d_spec", to_json(config.d_spec)},
                {"theta0_spec", to_json(config.theta0_spec)},
                {"integrator", to_json(config.integrator)},
                {"classifier", to_json(config.classifier)},
                {"outputs", to_json(config.outputs)}};
}

ExperimentConfig config_from_json(const Json& json) {
    require_keys(json, "config", {"seed", "n", "omega_spec", "coupling_spec"},
                 {"d_spec", "theta0_spec", "integrator", "classifier", "outputs"});
    ExperimentConfig config;
    if (!json["seed"].is_number_integer() && !json["seed"].is_number_unsigned()) {
        bad_input("config: seed must be an integer");
    }
    config.seed = json["seed"].get<std::uint64_t>();
    if (!json["n"].is_number_integer()) {
        bad_input("config: n must be an integer");
    }
    config.n = json["n"].get<Eigen::Index>();
    config.omega_spec = omega_spec_from_json(json["omega_spec"]);
    config.coupling_spec = coupling_spec_from_json(json["coupling_spec"]);
    if (json.contains("d_spec")) {
        config.d_spec = d_spec_from_json(json["d_spec"]);
    }
    if (json.contains("theta0_spec")) {
        config.theta0_spec = theta0_spec_from_json(json["theta0_spec"]);
    }
    if (json.contains("integrator")) {
        config.integrator = integrator_from_json(json["integrator"]);
    }
    if (json.contains("classifier")) {
        config.classifier = classifier_from_json(json["classifier"]);
    }
    if (json.contains("outputs")) {
        config.outputs = outputs_from_json(json["outputs"]);
    }
    return config;
}

Json to_json(const ThresholdReport& report) {
    return Json{{"n", report.n},
                {"omega_max_abs", report.omega_max_abs},
                {"omega_max", report.omega_max},
                {"omega_min", report.omega_min},
                {"theta_opt", report.theta_opt},
                {"term_order_param", report.term_order_param},
                {"term_chopra_spong", report.term_chopra_spong},
                {"lambda_c", report.lambda_c},
                {"identical_frequencies", report.identical_frequencies}};
}

Json to_json(const SyncVerdict& verdict) {
    return Json{{"fpls", to_string(verdict.fpls)},
                {"pls", to_string(verdict.pls)},
                {"fss", to_string(verdict.fss)},
                {"pairwise_fss", to_string(verdict.pairwise_fss)},
                {"opss", to_string(verdict.opss)},
                {"phase_sync", to_string(verdict.phase_sync)},
                {"opss_theorem_scope", verdict.opss_theorem_scope},
                {"identical_frequencies", verdict.identical_frequencies},
                {"witnesses",
                 Json{{"max_final_speed", verdict.witnesses.max_final_speed},
                      {"max_prev_speed", verdict.witnesses.max_prev_speed},
                      {"max_diff_speed", verdict.witnesses.max_diff_speed},
                      {"max_diff_spread", verdict.witnesses.max_diff_spread},
                      {"max_diff_drift", verdict.witnesses.max_diff_drift},
                      {"stationary_residual", verdict.witnesses.stationary_residual},
                      {"z_final", Json{{"re", verdict.witnesses.z_final.real()},
                                       {"im", verdict.witnesses.z_final.imag()}}},
                      {"z_oscillation", verdict.witnesses.z_oscillation},
                      {"op_inequality_lhs", verdict.witnesses.op_inequality_lhs},
                      {"op_inequality_rhs", verdict.witnesses.op_inequality_rhs}}}};
}

Json to_json(const EquivalenceReport& report) {
    Json disagreements = Json::array();
    for (const auto& [a, b] : report.disagreements) {
        disagreements.push_back(Json::array({a, b}));
    }
    return Json{{"disagreements", std::move(disagreements)}, {"opss_compared", report.opss_compared}};
}

Json to_json(const RunSummary& summary) {
    return Json{{"config", to_json(summary.config)},
                {"system_stats",
                 Json{{"omega_max_abs", summary.stats.omega_max_abs},
                      {"omega_range", summary.stats.omega_range},
                      {"lambda_min", summary.stats.lambda_min},
                      {"lambda_max", summary.stats.lambda_max},
                      {"lambda_mean", summary.stats.lambda_mean},
                      {"uniform_coupling", summary.stats.uniform_coupling}}},
                {"thresholds", Json{{"normalized", to_json(summary.thresholds)},
                                    {"raw", to_json(summary.thresholds_raw)},
                                    {"equivalence", to_json(summary.equivalence)}}},
                {"verdict", to_json(summary.verdict)},
                {"r_final", summary.r_final},
                {"runtime_seconds", summary.runtime_seconds}};
}

Json to_json(const EquilibriumSet& set) {
    Json roots = Json::array();
    for (std::size_t i = 0; i < set.roots.size(); ++i) {
        roots.push_back(Json{{"psi", vector_to_json(set.roots[i])},
                             {"residual", set.residuals[i]},
                             {"stability", to_string(set.stability[i])}});
    }
    return roots;
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot open \"" + path + "\" for writing");
    }
    const Eigen::Index n = traj.thetas.cols();
    std::string line = "t";
    for (Eigen::Index j = 0; j < n; ++j) {
        line += ",theta_" + std::to_string(j + 1);
    }
    for (Eigen::Index j = 0; j < n; ++j) {
        line += ",dtheta_" + std::to_string(j + 1);
    }
    line += ",R,Phi\n";
    file << line;
    for (Eigen::Index s = 0; s < traj.samples(); ++s) {
        line.clear();
        append_float(line, traj.times[s]);
        for (Eigen::Index j = 0; j < n; ++j) {
            line += ',';
            append_float(line, traj.thetas(s, j));
        }
        for (Eigen::Index j = 0; j < n; ++j) {
            line += ',';
            append_float(line, traj.theta_dots(s, j));
        }
        line += ',';
        append_float(line, traj.r_values[s]);
        line += ',';
        append_float(line, traj.phi_values[s]);
        line += '\n';
        file << line;
    }
    if (!file) {
        throw std::runtime_error("failed while writing \"" + path + "\"");
    }
}

Trajectory read_trajectory_csv(const std::string& path, const OscillatorSystem& system) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot open \"" + path + "\" for reading");
    }
    std::string header;
    if (!std::getline(file, header)) {
        bad_input("trajectory csv: empty file \"" + path + "\"");
    }
    // Column count determines N; the header layout is fixed.
    const auto columns = static_cast<Eigen::Index>(std::count(header.begin(), header.end(), ',')) + 1;
    const Eigen::Index n = (columns - 3) / 2;
    if (n < 1 || columns != 2 * n + 3 || header.rfind("t,theta_1", 0) != 0) {
        bad_input("trajectory csv: unexpected header \"" + header + "\"");
    }
    if (n != system.n) {
        bad_input("trajectory csv: file has " + std::to_string(n) + " oscillators, system has " +
                  std::to_string(system.n));
    }

    std::vector<std::vector<Real>> rows;
    std::string line;
    while (std::getline(file, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<Real> row;
        row.reserve(static_cast<std::size_t>(columns));
        const char* cursor = line.data();
        const char* end = line.data() + line.size();
        while (true) {
            const char* next = std::find(cursor, end, ',');
            row.push_back(parse_float(cursor, next, "trajectory csv"));
            if (next == end) {
                break;
            }
            cursor = next + 1;
        }
        if (static_cast<Eigen::Index>(row.size()) != columns) {
            bad_input("trajectory csv: row with " + std::to_string(row.size()) + " fields, expected " +
                      std::to_string(columns));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        bad_input("trajectory csv: no samples in \"" + path + "\"");
    }

    Trajectory traj;
    traj.system = system;
    const auto samples = static_cast<Eigen::Index>(rows.size());
    traj.times.resize(samples);
    traj.thetas.resize(samples, n);
    traj.theta_dots.resize(samples, n);
    traj.r_values.resize(samples);
    traj.phi_values.resize(samples);
    for (Eigen::Index s = 0; s < samples; ++s) {
        const auto& row = rows[static_cast<std::size_t>(s)];
        traj.times[s] = row[0];
        for (Eigen::Index j = 0; j < n; ++j) {
            traj.thetas(s, j) = row[static_cast<std::size_t>(1 + j)];
            traj.theta_dots(s, j) = row[static_cast<std::size_t>(1 + n + j)];
        }
        traj.r_values[s] = row[static_cast<std::size_t>(1 + 2 * n)];
        traj.phi_values[s] = row[static_cast<std::size_t>(2 + 2 * n)];
    }

    // Spot-check that the supplied system actually generated this trajectory:
    // recorded derivatives must match the vector field at the recorded states.
    for (const Eigen::Index s : {Eigen::Index{0}, samples / 2, samples - 1}) {
        const Vector expected = vector_field(system, traj.thetas.row(s).transpose());
        const Real mismatch =
            (expected - traj.theta_dots.row(s).transpose()).cwiseAbs().maxCoeff();
        if (mismatch > 1e-9 * (1.0 + expected.cwiseAbs().maxCoeff())) {
            bad_input("trajectory csv: derivatives disagree with the supplied system (sample " +
                      std::to_string(s) + ", mismatch " + std::to_string(mismatch) + ")");
        }
    }
    return traj;
}

Json read_json_file(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot open \"" + path + "\"");
    }
    Json json;
    try {
        file >> json;
    } catch (const Json::parse_error& error) {
        bad_input("\"" + path + "\": " + error.what());
    }
    return json;
}

void write_json_file(const std::string& path, const Json& json) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot open \"" + path + "\" for writing");
    }
    file << json.dump(2) << '\n';
    if (!file) {
        throw std::runtime_error("failed while writing \"" + path + "\"");
    }
}

std::string format_sweep_table(const std::vector<RunSummary>& rows) {
    std::string out = "lambda,fss,r_final\n";
    for (const RunSummary& row : rows) {
        append_float(out, row.config.coupling_spec.lambda);
        out += ',';
        out += to_string(row.verdict.fss);
        out += ',';
        append_float(out, row.r_final);
        out += '\n';
    }
    return out;
}

} // namespace kuramoto
