#include "kuramoto/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace kuramoto {

namespace {

struct Windows {
    Eigen::Index trail_begin; ///< trailing window [trail_begin, samples)
    Eigen::Index prev_begin;  ///< preceding window [prev_begin, trail_begin)
    Eigen::Index samples;
};

Windows split_windows(const Trajectory& traj, const ClassifierConfig& config) {
    const Eigen::Index samples = traj.samples();
    const auto width = static_cast<Eigen::Index>(std::floor(config.window_fraction * static_cast<Real>(samples)));
    if (width < 10 || 2 * width > samples) {
        throw std::invalid_argument("classify: trajectory too short for windowed statistics (" +
                                    std::to_string(samples) + " samples)");
    }
    return {samples - width, samples - 2 * width, samples};
}

Real max_abs_rows(const Matrix& rows, Eigen::Index begin, Eigen::Index end) {
    Real out = 0.0;
    for (Eigen::Index s = begin; s < end; ++s) {
        out = std::max(out, rows.row(s).cwiseAbs().maxCoeff());
    }
    return out;
}

Real max_row_spread(const Matrix& rows, Eigen::Index begin, Eigen::Index end) {
    Real out = 0.0;
    for (Eigen::Index s = begin; s < end; ++s) {
        out = std::max(out, rows.row(s).maxCoeff() - rows.row(s).minCoeff());
    }
    return out;
}

/// Decay evidence shared by the frequency classifiers: the trailing-window
/// statistic has halved versus the preceding window, or the preceding window
/// already sits below the tolerance (a run converged long before the window
/// cannot halve further).
bool has_decayed(Real trailing, Real preceding, Real eps) {
    return trailing <= 0.5 * preceding || preceding < eps;
}

Flag windowed_decay_flag(Real trailing, Real preceding, Real eps) {
    if (trailing < eps && has_decayed(trailing, preceding, eps)) {
        return Flag::True;
    }
    if (trailing > 10.0 * eps && !has_decayed(trailing, preceding, eps)) {
        return Flag::False;
    }
    return Flag::Indeterminate;
}

/// True when some pairwise difference advances near-monotonically by more than
/// 2*pi over the last half of the run: the signature of a drifting pair.
/// Bounded pairs oscillate, so a cheap net-change prefilter rules out almost
/// every pair before the per-sample monotonicity walk.
bool has_drifting_pair(const Matrix& thetas) {
    const Eigen::Index samples = thetas.rows();
    const Eigen::Index n = thetas.cols();
    const Eigen::Index half = samples / 2;
    constexpr Real backslide_tol = kPi / 4.0; // tolerated retreat for a "monotone" advance
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = j + 1; k < n; ++k) {
            const Real net = (thetas(samples - 1, j) - thetas(samples - 1, k)) -
                             (thetas(half, j) - thetas(half, k));
            if (std::abs(net) <= kTwoPi) {
                continue;
            }
            const Real sign = (net > 0.0) ? 1.0 : -1.0;
            Real peak = sign * (thetas(half, j) - thetas(half, k));
            bool monotone = true;
            for (Eigen::Index s = half + 1; s < samples; ++s) {
                const Real value = sign * (thetas(s, j) - thetas(s, k));
                if (value < peak - backslide_tol) {
                    monotone = false;
                    break;
                }
                peak = std::max(peak, value);
            }
            if (monotone) {
                return true;
            }
        }
    }
    return false;
}

bool uniform_positive_coupling(const OscillatorSystem& system, Real* lambda_out) {
    const Eigen::Index n = system.n;
    const Real first = system.coupling(0, 1);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = 0; k < n; ++k) {
            if (j == k) {
                continue;
            }
            if (system.coupling(j, k) != first) {
                return false;
            }
        }
    }
    if (lambda_out != nullptr) {
        *lambda_out = first;
    }
    return first > 0.0;
}

} // namespace

const char* to_string(Flag flag) {
    switch (flag) {
        case Flag::True: return "true";
        case Flag::False: return "false";
        default: return "indeterminate";
    }
}

FreqSyncResult classify_frequency_sync(const Trajectory& traj, const ClassifierConfig& config) {
    const Windows win = split_windows(traj, config);
    FreqSyncResult result;
    result.max_final_speed = max_abs_rows(traj.theta_dots, win.trail_begin, win.samples);
    result.max_prev_speed = max_abs_rows(traj.theta_dots, win.prev_begin, win.trail_begin);
    result.flag = windowed_decay_flag(result.max_final_speed, result.max_prev_speed, config.eps_freq);
    return result;
}

PairwiseFreqResult classify_pairwise_frequency_sync(const Trajectory& traj, const ClassifierConfig& config) {
    const Windows win = split_windows(traj, config);
    PairwiseFreqResult result;
    result.max_final_diff = max_row_spread(traj.theta_dots, win.trail_begin, win.samples);
    result.max_prev_diff = max_row_spread(traj.theta_dots, win.prev_begin, win.trail_begin);
    result.flag = windowed_decay_flag(result.max_final_diff, result.max_prev_diff, 2.0 * config.eps_freq);
    return result;
}

PhaseLockResult classify_phase_locked(const Trajectory& traj, const ClassifierConfig& config) {
    const Windows win = split_windows(traj, config);
    PhaseLockResult result;
    result.sup_spread = max_row_spread(traj.thetas, 0, win.samples);
    result.window_spread = max_row_spread(traj.thetas, win.trail_begin, win.samples);
    result.prev_spread = max_row_spread(traj.thetas, win.prev_begin, win.trail_begin);
    if (result.sup_spread > config.lock_bound || has_drifting_pair(traj.thetas)) {
        result.flag = Flag::False;
    } else if (result.window_spread <= result.prev_spread + config.eps_drift) {
        result.flag = Flag::True;
    } else {
        result.flag = Flag::Indeterminate;
    }
    return result;
}

FullLockResult classify_full_phase_locked(const Trajectory& traj, const ClassifierConfig& config) {
    const Windows win = split_windows(traj, config);
    const PhaseLockResult locked = classify_phase_locked(traj, config);
    FullLockResult result;

    // Worst per-pair variation of theta_j - theta_k over the trailing window.
    // The pairwise variation equals the variation of (theta_j - theta_k), so
    // track per-pair min and max in one pass over the window.
    const Eigen::Index n = traj.thetas.cols();
    Real drift = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = j + 1; k < n; ++k) {
            Real lo = traj.thetas(win.trail_begin, j) - traj.thetas(win.trail_begin, k);
            Real hi = lo;
            for (Eigen::Index s = win.trail_begin + 1; s < win.samples; ++s) {
                const Real diff = traj.thetas(s, j) - traj.thetas(s, k);
                lo = std::min(lo, diff);
                hi = std::max(hi, diff);
            }
            drift = std::max(drift, hi - lo);
        }
    }
    result.max_diff_drift = drift;

    // Residual of the locked-state balance at the final sample: d_j theta_dot_j
    // must vanish for every oscillator once the differences freeze.
    const Eigen::Index last = win.samples - 1;
    result.stationary_residual =
        (traj.system.d.array() * traj.theta_dots.row(last).transpose().array()).abs().maxCoeff();

    if (locked.flag == Flag::False) {
        result.flag = Flag::False;
    } else if (locked.flag == Flag::True && drift < config.eps_drift &&
               result.stationary_residual < 10.0 * config.eps_freq) {
        result.flag = Flag::True;
    } else {
        result.flag = Flag::Indeterminate;
    }
    return result;
}

OpSyncResult classify_op_sync(const Trajectory& traj, const ClassifierConfig& config) {
    const Windows win = split_windows(traj, config);
    OpSyncResult result;
    const Eigen::Index last = win.samples - 1;
    const auto z_at = [&](Eigen::Index s) {
        return Complex(traj.r_values[s] * std::cos(traj.phi_values[s]),
                       traj.r_values[s] * std::sin(traj.phi_values[s]));
    };
    result.z_final = z_at(last);

    Real oscillation = 0.0;
    Eigen::Index excursions = 0;
    for (Eigen::Index s = win.trail_begin; s < win.samples; ++s) {
        const Real dist = std::abs(z_at(s) - result.z_final);
        oscillation = std::max(oscillation, dist);
        if (dist > 10.0 * config.eps_op) {
            ++excursions;
        }
    }
    result.z_oscillation = oscillation;

    const OscillatorSystem& system = traj.system;
    Real lambda = 0.0;
    result.theorem_scope = uniform_positive_coupling(system, &lambda);

    // Locked-state magnitude bound: |Z| >= |omega_j| / |lambda_jk| for every
    // coupled pair. Uncoupled systems impose no constraint.
    Real rhs = 0.0;
    for (Eigen::Index j = 0; j < system.n; ++j) {
        for (Eigen::Index k = 0; k < system.n; ++k) {
            if (j == k || system.coupling(j, k) == 0.0) {
                continue;
            }
            rhs = std::max(rhs, std::abs(system.omega[j]) / std::abs(system.coupling(j, k)));
        }
    }
    result.inequality_lhs = std::abs(result.z_final);
    result.inequality_rhs = rhs;

    const bool settled = oscillation < config.eps_op;
    const bool persistent_oscillation = 2 * excursions > (win.samples - win.trail_begin);
    const bool inequality_holds = result.inequality_lhs >= rhs - config.eps_margin;
    if (settled && inequality_holds) {
        result.flag = Flag::True;
    } else if (persistent_oscillation || (settled && !inequality_holds)) {
        result.flag = Flag::False;
    } else {
        result.flag = Flag::Indeterminate;
    }
    return result;
}

PhaseSyncResult classify_phase_sync(const Trajectory& traj, const ClassifierConfig& config) {
    const Windows win = split_windows(traj, config);
    PhaseSyncResult result;
    result.window_spread = max_row_spread(traj.thetas, win.trail_begin, win.samples);
    const Real omega_spread = traj.system.omega.maxCoeff() - traj.system.omega.minCoeff();
    result.identical_frequencies =
        omega_spread <= 1e-12 * std::max(1.0, traj.system.omega.cwiseAbs().maxCoeff());
    if (result.window_spread < config.eps_drift) {
        result.flag = Flag::True;
    } else if (result.window_spread > 10.0 * config.eps_drift) {
        result.flag = Flag::False;
    } else {
        result.flag = Flag::Indeterminate;
    }
    return result;
}

SyncVerdict classify_all(const Trajectory& traj, const ClassifierConfig& config) {
    const FreqSyncResult freq = classify_frequency_sync(traj, config);
    const PairwiseFreqResult pairwise = classify_pairwise_frequency_sync(traj, config);
    const PhaseLockResult locked = classify_phase_locked(traj, config);
    const FullLockResult full = classify_full_phase_locked(traj, config);
    const OpSyncResult op = classify_op_sync(traj, config);
    const PhaseSyncResult phase = classify_phase_sync(traj, config);

    SyncVerdict verdict;
    verdict.fss = freq.flag;
    verdict.pairwise_fss = pairwise.flag;
    verdict.pls = locked.flag;
    verdict.fpls = full.flag;
    verdict.opss = op.flag;
    verdict.phase_sync = phase.flag;
    verdict.opss_theorem_scope = op.theorem_scope;
    verdict.identical_frequencies = phase.identical_frequencies;

    verdict.witnesses.max_final_speed = freq.max_final_speed;
    verdict.witnesses.max_prev_speed = freq.max_prev_speed;
    verdict.witnesses.max_diff_speed = pairwise.max_final_diff;
    verdict.witnesses.max_diff_spread = locked.window_spread;
    verdict.witnesses.max_diff_drift = full.max_diff_drift;
    verdict.witnesses.stationary_residual = full.stationary_residual;
    verdict.witnesses.z_final = op.z_final;
    verdict.witnesses.z_oscillation = op.z_oscillation;
    verdict.witnesses.op_inequality_lhs = op.inequality_lhs;
    verdict.witnesses.op_inequality_rhs = op.inequality_rhs;
    return verdict;
}

EquivalenceReport equivalence_report(const SyncVerdict& verdict, const OscillatorSystem& system) {
    EquivalenceReport report;
    std::vector<std::pair<std::string, Flag>> flags = {
        {"fpls", verdict.fpls},
        {"pls", verdict.pls},
        {"fss", verdict.fss},
        {"pairwise_fss", verdict.pairwise_fss},
    };

    // opss joins the comparison only inside the proved scope: uniform coupling
    // and a unique oscillator attaining max |omega_j| (ties break the
    // argument that the extremal oscillator pins |Z| from below).
    Real lambda = 0.0;
    if (uniform_positive_coupling(system, &lambda)) {
        const Real max_abs = system.omega.cwiseAbs().maxCoeff();
        const Eigen::Index ties =
            (system.omega.cwiseAbs().array() >= max_abs * (1.0 - 1e-12)).count();
        if (ties == 1) {
            flags.emplace_back("opss", verdict.opss);
            report.opss_compared = true;
        }
    }

    for (std::size_t a = 0; a < flags.size(); ++a) {
        for (std::size_t b = a + 1; b < flags.size(); ++b) {
            const bool determinate = flags[a].second != Flag::Indeterminate &&
                                     flags[b].second != Flag::Indeterminate;
            if (determinate && flags[a].second != flags[b].second) {
                report.disagreements.emplace_back(flags[a].first, flags[b].first);
            }
        }
    }
    return report;
}

EnergyRecord energy_record(const Trajectory& traj) {
    const Eigen::Index samples = traj.samples();
    EnergyRecord record;
    record.n = traj.system.n;
    record.cumulative_kinetic.resize(samples);
    record.potential.resize(samples);
    record.linear_term.resize(samples);

    const Vector theta0 = traj.thetas.row(0).transpose();
    Real acc = 0.0;
    Real prev_density = kinetic_density(traj.system, traj.theta_dots.row(0).transpose());
    record.cumulative_kinetic[0] = 0.0;
    record.potential[0] = potential_energy(traj.system, theta0);
    record.linear_term[0] = 0.0;
    for (Eigen::Index s = 1; s < samples; ++s) {
        const Real density = kinetic_density(traj.system, traj.theta_dots.row(s).transpose());
        acc += 0.5 * (prev_density + density) * (traj.times[s] - traj.times[s - 1]);
        prev_density = density;
        record.cumulative_kinetic[s] = acc;
        record.potential[s] = potential_energy(traj.system, traj.thetas.row(s).transpose());
        record.linear_term[s] = traj.system.omega.dot(traj.thetas.row(s).transpose() - theta0);
    }
    return record;
}

Real energy_identity_residual(const EnergyRecord& record) {
    const Real inv_n = 1.0 / static_cast<Real>(record.n);
    Real out = 0.0;
    for (Eigen::Index s = 0; s < record.cumulative_kinetic.size(); ++s) {
        const Real boundary = inv_n * (record.potential[s] - record.potential[0]);
        out = std::max(out, std::abs(record.cumulative_kinetic[s] - record.linear_term[s] - boundary));
    }
    return out;
}

Real energy_identity_scale(const EnergyRecord& record) {
    const Real inv_n = 1.0 / static_cast<Real>(record.n);
    Real out = 0.0;
    for (Eigen::Index s = 0; s < record.cumulative_kinetic.size(); ++s) {
        const Real boundary = inv_n * (record.potential[s] - record.potential[0]);
        out = std::max({out, std::abs(record.cumulative_kinetic[s]), std::abs(record.linear_term[s]),
                        std::abs(boundary)});
    }
    return 1.0 + out;
}

Real kinetic_tail_increase(const EnergyRecord& record) {
    const Eigen::Index samples = record.cumulative_kinetic.size();
    if (samples == 0) {
        return 0.0;
    }
    const Eigen::Index from = (3 * samples) / 4;
    return record.cumulative_kinetic[samples - 1] - record.cumulative_kinetic[std::min(from, samples - 1)];
}

} // namespace kuramoto
