#pragma once

#include <Eigen/Dense>

#include "kuramoto/types.hpp"

namespace kuramoto {

/// Parameters of a weighted first-order oscillator network
///
///     d_j * dtheta_j/dt = omega_j + (1/N) * sum_k lambda_jk * sin(theta_k - theta_j)
///
/// The coupling matrix is symmetric with zero diagonal and (1/N)-scaled in the
/// flow; the weights d_j are strictly positive. Uniform positive coupling with
/// d_j = 1 recovers the classical mean-field model.
struct OscillatorSystem {
    Eigen::Index n = 0; ///< number of oscillators, N >= 2
    Vector d;           ///< positive rate weights d_j
    Vector omega;       ///< natural frequencies [rad/time]
    Matrix coupling;    ///< pairwise coupling strengths lambda_jk [rad/time]
};

/// Unwrapped phases at one instant. Phases live in R and are never reduced
/// mod 2*pi: the synchronization classifiers need unbounded drift between
/// oscillators to remain observable.
struct PhaseState {
    Real t = 0.0;
    Vector theta;
};

/// Complex mean field Z = R * exp(i * Phi) = (1/N) * sum_j exp(i * theta_j).
struct OrderParameter {
    Real r = 0.0;   ///< coherence R in [0, 1]
    Real phi = 0.0; ///< principal argument in [0, 2*pi); 0 when indeterminate
    Real z_re = 0.0;
    Real z_im = 0.0;
    bool phi_indeterminate = false; ///< set when |Z| < 1e-12
};

/// Checks structural invariants (sizes, d_j > 0, zero diagonal, symmetry) and
/// throws std::invalid_argument naming the first violation with 1-based
/// indices. Asymmetric input is rejected rather than symmetrized.
void validate(const OscillatorSystem& system);

/// Returns a copy with omega_j replaced by omega_j - (sum omega / sum d) * d_j,
/// so the weighted mean frequency vanishes and the weighted phase sum
/// sum_j d_j * theta_j becomes a conserved quantity of the flow.
OscillatorSystem normalize_frequencies(const OscillatorSystem& system);

/// Right-hand side theta_dot of the flow at the given phases. The coupling sum
/// uses sin(b - a) = sin(b)cos(a) - cos(b)sin(a) so it reduces to two
/// matrix-vector products plus O(N) trigonometry instead of N^2 sine calls.
Vector vector_field(const OscillatorSystem& system, const Eigen::Ref<const Vector>& theta);

/// Mean field of a phase configuration. phi is reported in [0, 2*pi) and
/// flagged indeterminate (with phi = 0) when R < 1e-12.
OrderParameter order_parameter(const Eigen::Ref<const Vector>& theta);

/// Per-oscillator a-priori speed limit |omega_j|/d_j + (1/(N*d_j)) * sum_k |lambda_jk|.
/// Every trajectory satisfies |theta_dot_j| <= bound_j pointwise.
Vector velocity_bound(const OscillatorSystem& system);

/// Interaction potential P(theta) = sum_{j<k} lambda_jk * cos(theta_k - theta_j).
Real potential_energy(const OscillatorSystem& system, const Eigen::Ref<const Vector>& theta);

/// Weighted squared speed sum_j d_j * theta_dot_j^2 (the energy-balance integrand).
Real kinetic_density(const OscillatorSystem& system, const Eigen::Ref<const Vector>& theta_dot);

/// Flow of the phase differences psi_j = theta_j - theta_N, j = 1..N-1, on the
/// (N-1)-torus (psi_N identically 0):
///
///   f_j(psi) = omega_j - omega_N + (1/N) * [ sum_l lambda_jl * sin(psi_l - psi_j)
///                                          - sum_{l<N} lambda_Nl * sin(psi_l) ]
///
/// Zeros of f are phase-locked states of the full flow. Each coordinate is
/// 2*pi-periodic.
Vector reduced_vector_field(const OscillatorSystem& system, const Eigen::Ref<const Vector>& psi);

} // namespace kuramoto
