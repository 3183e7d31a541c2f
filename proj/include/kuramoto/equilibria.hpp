#pragma once

#include <Eigen/Dense>

#include <vector>

#include "kuramoto/model.hpp"
#include "kuramoto/types.hpp"

namespace kuramoto {

enum class Stability {
    stable,   ///< every reduced-flow eigenvalue has real part < -1e-8
    unstable, ///< some eigenvalue has real part > 1e-8
    marginal, ///< neither: eigenvalues inside the +-1e-8 band
};

const char* to_string(Stability stability);

/// Equilibria of the reduced phase-difference flow on the (N-1)-torus, i.e.
/// phase-locked states of the network. Roots are reported canonically in
/// [0, 2*pi)^(N-1) and sorted lexicographically.
struct EquilibriumSet {
    std::vector<Vector> roots;
    std::vector<Real> residuals; ///< max-norm of the reduced field at each root
    std::vector<Stability> stability;
    long long binomial_bound = 0; ///< C(2N-2, N-1), a count bound for generic systems
};

/// Jacobian of the reduced vector field at psi (the root-finding Jacobian).
Matrix reduced_jacobian(const OscillatorSystem& system, const Eigen::Ref<const Vector>& psi);

/// Jacobian of the full flow theta_dot = F(theta) at theta.
Matrix flow_jacobian(const OscillatorSystem& system, const Eigen::Ref<const Vector>& theta);

/// Jacobian of the phase-difference dynamics psi_dot_j = theta_dot_j - theta_dot_N
/// at the locked state theta = (psi, 0): row/column N of the full-flow Jacobian
/// projected out. Its spectrum decides orbital stability of the locked state.
Matrix reduced_flow_jacobian(const OscillatorSystem& system, const Eigen::Ref<const Vector>& psi);

Stability stability_tag(const OscillatorSystem& system, const Eigen::Ref<const Vector>& root);

/// Multistart Newton search over a uniform grid of grid_per_dim^(N-1) seeds in
/// [0, 2*pi)^(N-1). Converged roots with residual <= tol are canonicalized,
/// deduplicated (torus max-metric, radius 1e-6) and sorted. Requires a
/// normalized system (so locked states are true rest points), N - 1 <= 6 and
/// grid_per_dim >= 8; throws std::invalid_argument otherwise.
EquilibriumSet find_equilibria(const OscillatorSystem& system, int grid_per_dim = 16, Real tol = 1e-10);

struct BoundReport {
    long long count = 0;
    long long bound = 0;
    bool within = false;
};

BoundReport count_vs_bound(const EquilibriumSet& set);

} // namespace kuramoto
