#pragma once

#include <Eigen/Dense>

#include "kuramoto/types.hpp"

namespace kuramoto {

/// Closed-form critical coupling for uniform coupling strength lambda: for
/// lambda < lambda_c the network cannot frequency-synchronize, so the report
/// acts as an a-priori feasibility check. lambda_c is the larger of two bounds:
///
///   term_order_param   = |omega|_max * (n^2 + 1) / (n^2 - n + sqrt(2 n))
///   term_chopra_spong  = (omega_max - omega_min) * n
///                        / (2 sin(theta_opt) + 2 (n - 2) sin(theta_opt / 2))
///
/// where theta_opt maximizes sin(theta) + (n - 2) sin(theta / 2) on [0, pi].
struct ThresholdReport {
    Eigen::Index n = 0;
    Real omega_max_abs = 0.0; ///< max_j |omega_j|
    Real omega_max = 0.0;     ///< largest natural frequency
    Real omega_min = 0.0;     ///< smallest natural frequency
    Real theta_opt = 0.0;
    Real term_order_param = 0.0;
    Real term_chopra_spong = 0.0;
    Real lambda_c = 0.0;                ///< max of the two terms
    bool identical_frequencies = false; ///< all omega_j equal: threshold degenerates to 0
};

/// Maximizer of sin(theta) + (n - 2) sin(theta / 2) on [0, pi]:
/// theta_opt = 2 * acos(( -(n - 2) + sqrt((n - 2)^2 + 32) ) / 8). Equals pi/2
/// at n = 2 and increases towards pi as n grows.
Real theta_opt(Eigen::Index n);

/// Evaluates both bounds for the given natural frequencies. Throws
/// std::invalid_argument when omega.size() != n or n < 2. Identical
/// frequencies are reported, not rejected: both terms degenerate to 0.
ThresholdReport critical_coupling(const Eigen::Ref<const Vector>& omega, Eigen::Index n);

/// Upper bound on the coherence R of any frequency-synchronized state with
/// uniform coupling lambda > |omega|_max > 0:
///
///   R <= 1 - 1/n + (1/n) * sqrt(1 - (|omega|_max / lambda)^2)
///
/// Throws std::domain_error outside lambda > omega_max_abs > 0, n >= 2.
Real r_upper_bound(Real omega_max_abs, Real lambda, Eigen::Index n);

/// Exact locking threshold |omega_2 - omega_1| for two oscillators with unit
/// weights and uniform coupling: locked states exist iff lambda exceeds it.
Real two_oscillator_threshold(Real omega_1, Real omega_2);

} // namespace kuramoto
