#pragma once

#include <Eigen/Dense>

#include <vector>

#include "kuramoto/model.hpp"
#include "kuramoto/types.hpp"

namespace kuramoto {

enum class Method {
    rk4,  ///< classical fixed-step Runge-Kutta, order 4
    rk45, ///< Dormand-Prince 5(4) with adaptive step size
};

struct IntegratorConfig {
    Method method = Method::rk4;
    Real dt = 0.01;        ///< fixed step (rk4) or initial step (rk45)
    Real t_end = 200.0;    ///< integration horizon, t in [0, t_end]
    int sample_every = 10; ///< record every k-th accepted step
    Real rel_tol = 1e-8;   ///< rk45 relative tolerance
    Real abs_tol = 1e-10;  ///< rk45 absolute tolerance
};

/// Sampled solution of one initial-value problem. Row s of `thetas` and
/// `theta_dots` is the state / flow velocity at `times[s]`; theta_dots is
/// recomputed from the vector field at the sample, not interpolated. The first
/// sample is the initial condition, the last lands exactly on t_end.
struct Trajectory {
    Vector times;
    Matrix thetas;     ///< samples x N, unwrapped phases
    Matrix theta_dots; ///< samples x N
    Vector r_values;   ///< coherence R(t) per sample
    Vector phi_values; ///< mean-field argument per sample, principal value
    OscillatorSystem system; ///< the system that generated the run

    Eigen::Index samples() const { return times.size(); }
};

/// Integrates the flow from theta0 over [0, t_end]. Throws
/// std::invalid_argument for bad configuration, NumericalError when the state
/// leaves the finite range or the adaptive step underflows (dt < 1e-12).
Trajectory integrate(const OscillatorSystem& system, const Eigen::Ref<const Vector>& theta0,
                     const IntegratorConfig& config);

/// Unwraps a sampled angle sequence (e.g. phi_values) into a continuous curve
/// by removing the 2*pi jumps between consecutive samples.
Vector unwrap_angles(const Eigen::Ref<const Vector>& angles);

/// Observed convergence order of the fixed-step rk4 scheme: integrates to
/// `t_end` at each step size in dt_list (descending, each half the previous),
/// measures endpoint errors against a reference run at min(dt)/64, and returns
/// the mean of log2(e_i / e_{i+1}) over consecutive pairs. Pairs whose errors
/// sit at the roundoff floor are excluded; NaN when every pair is excluded
/// (e.g. dynamics the scheme integrates exactly).
Real convergence_order(const OscillatorSystem& system, const Eigen::Ref<const Vector>& theta0,
                       const std::vector<Real>& dt_list, Real t_end);

} // namespace kuramoto
