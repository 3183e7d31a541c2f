#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "kuramoto/integrator.hpp"
#include "kuramoto/types.hpp"

namespace kuramoto {

/// Three-valued classifier verdict. Every classifier is conservative: it
/// answers True/False only when the trailing-window evidence is decisive and
/// reports Indeterminate otherwise (e.g. transients that have not settled).
enum class Flag {
    True,
    False,
    Indeterminate,
};

const char* to_string(Flag flag);

/// Windowing and tolerance knobs shared by the classifiers. The trailing
/// window is the last `window_fraction` of the samples; the preceding window
/// is the same number of samples immediately before it.
struct ClassifierConfig {
    Real window_fraction = 0.25;
    Real eps_freq = 1e-4;            ///< [rad/time] residual speed considered zero
    Real eps_drift = 1e-3;           ///< [rad] tolerated pairwise-difference variation
    Real lock_bound = 100.0 * kTwoPi; ///< [rad] spread beyond which locking is ruled out
    Real eps_op = 1e-3;              ///< tolerated mean-field oscillation |Z(t) - Z(t_end)|
    Real eps_margin = 1e-6;          ///< slack for the order-parameter inequality
};

/// Everything the verdicts were decided on; serialized alongside them so a
/// runs summary is auditable without rerunning the classifier.
struct Witnesses {
    Real max_final_speed = 0.0;       ///< max |theta_dot| over the trailing window
    Real max_prev_speed = 0.0;        ///< same over the preceding window
    Real max_diff_speed = 0.0;        ///< max instantaneous speed spread, trailing window
    Real max_diff_spread = 0.0;       ///< max phase spread over the trailing window
    Real max_diff_drift = 0.0;        ///< worst pairwise-difference variation, trailing window
    Real stationary_residual = 0.0;   ///< max_j |d_j * theta_dot_j| at the final sample
    Complex z_final;                  ///< mean field at the final sample
    Real z_oscillation = 0.0;         ///< max |Z(t) - Z(t_end)| over the trailing window
    Real op_inequality_lhs = 0.0;     ///< |Z(t_end)|
    Real op_inequality_rhs = 0.0;     ///< max over coupled pairs of |omega_j| / |lambda_jk|
};

struct SyncVerdict {
    Flag fpls = Flag::Indeterminate;         ///< full phase locking (differences frozen)
    Flag pls = Flag::Indeterminate;          ///< phase locking (differences bounded)
    Flag fss = Flag::Indeterminate;          ///< frequency synchronization (all speeds -> 0)
    Flag pairwise_fss = Flag::Indeterminate; ///< pairwise frequency synchronization
    Flag opss = Flag::Indeterminate;         ///< order-parameter synchronization
    Flag phase_sync = Flag::Indeterminate;   ///< all phases collapse to one value
    bool opss_theorem_scope = false; ///< mean-field inequality only proved for uniform coupling
    bool identical_frequencies = false;
    Witnesses witnesses;
};

/// Report on which determinate flags disagree. For pairwise-equivalent notions
/// (the locking/frequency family) any disagreement is a red flag; opss is only
/// comparable when the coupling is uniform and a unique oscillator attains
/// max |omega_j|.
struct EquivalenceReport {
    std::vector<std::pair<std::string, std::string>> disagreements;
    bool opss_compared = false;
};

/// Energy-balance series along a trajectory:
///   cumulative_kinetic[s]  ~ integral_0^{t_s} sum_j d_j theta_dot_j^2 dt  (trapezoid)
///   potential[s]           = sum_{j<k} lambda_jk cos(theta_k - theta_j)
///   linear_term[s]         = sum_j omega_j (theta_j(t_s) - theta_j(0))
/// For any trajectory of the flow the identity
///   cumulative_kinetic = linear_term + (potential - potential[0]) / N
/// holds up to integration error. For frequency-synchronized runs the
/// cumulative kinetic integral converges; for incoherent runs it grows without
/// bound.
struct EnergyRecord {
    Vector cumulative_kinetic;
    Vector potential;
    Vector linear_term;
    Eigen::Index n = 0;
};

struct FreqSyncResult {
    Flag flag = Flag::Indeterminate;
    Real max_final_speed = 0.0;
    Real max_prev_speed = 0.0;
};

struct PairwiseFreqResult {
    Flag flag = Flag::Indeterminate;
    Real max_final_diff = 0.0;
    Real max_prev_diff = 0.0;
};

struct PhaseLockResult {
    Flag flag = Flag::Indeterminate;
    Real sup_spread = 0.0;    ///< max spread over the whole run
    Real window_spread = 0.0; ///< max spread over the trailing window
    Real prev_spread = 0.0;   ///< max spread over the preceding window
};

struct FullLockResult {
    Flag flag = Flag::Indeterminate;
    Real max_diff_drift = 0.0;
    Real stationary_residual = 0.0;
};

struct OpSyncResult {
    Flag flag = Flag::Indeterminate;
    Complex z_final;
    Real z_oscillation = 0.0;
    Real inequality_lhs = 0.0;
    Real inequality_rhs = 0.0;
    bool theorem_scope = false;
};

struct PhaseSyncResult {
    Flag flag = Flag::Indeterminate;
    Real window_spread = 0.0;
    bool identical_frequencies = false;
};

/// fss: all instantaneous speeds decay to zero. True when the trailing-window
/// speed max is below eps_freq with decay evidence (halved versus the
/// preceding window, or the preceding window already at the floor); False when
/// it exceeds 10x eps_freq without decay.
FreqSyncResult classify_frequency_sync(const Trajectory& traj, const ClassifierConfig& config);

/// Same decision logic applied to max_{j,k} |theta_dot_j - theta_dot_k| with
/// thresholds doubled (2 eps_freq / 20 eps_freq).
PairwiseFreqResult classify_pairwise_frequency_sync(const Trajectory& traj, const ClassifierConfig& config);

/// pls: pairwise phase differences stay bounded. False when the spread exceeds
/// lock_bound anywhere or some pair advances monotonically by more than 2*pi
/// over the last half of the run.
PhaseLockResult classify_phase_locked(const Trajectory& traj, const ClassifierConfig& config);

/// fpls: phase differences converge to constants. Requires pls plus pairwise
/// variation below eps_drift over the trailing window plus a near-stationary
/// final sample (max_j |d_j theta_dot_j| < 10 eps_freq).
FullLockResult classify_full_phase_locked(const Trajectory& traj, const ClassifierConfig& config);

/// opss: the mean field Z settles and its magnitude is consistent with the
/// locked-state lower bound |Z| >= max_{coupled j,k} |omega_j| / |lambda_jk|.
OpSyncResult classify_op_sync(const Trajectory& traj, const ClassifierConfig& config);

/// phase_sync: the phase spread itself collapses below eps_drift. Possible
/// with nonidentical frequencies only in degenerate cases, so the result notes
/// whether the natural frequencies are identical.
PhaseSyncResult classify_phase_sync(const Trajectory& traj, const ClassifierConfig& config);

/// Runs every classifier and assembles the joint verdict with witnesses.
/// The trajectory must come from a normalized system (weighted mean frequency
/// zero); otherwise a uniformly rotating locked state would defeat the
/// speed-based tests.
SyncVerdict classify_all(const Trajectory& traj, const ClassifierConfig& config);

EquivalenceReport equivalence_report(const SyncVerdict& verdict, const OscillatorSystem& system);

EnergyRecord energy_record(const Trajectory& traj);

/// Max over samples of |cumulative_kinetic - linear_term - (potential - potential[0]) / n|.
Real energy_identity_residual(const EnergyRecord& record);

/// 1 + the largest magnitude among the identity's three terms; residuals are
/// judged relative to this scale.
Real energy_identity_scale(const EnergyRecord& record);

/// Growth of the kinetic integral over the last quarter of the run; near zero
/// exactly when the run has frequency-synchronized.
Real kinetic_tail_increase(const EnergyRecord& record);

} // namespace kuramoto
