#include "kuramoto/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace kuramoto {

namespace {

void validate_config(const IntegratorConfig& config) {
    if (!(config.dt > 0.0) || !std::isfinite(config.dt)) {
        throw std::invalid_argument("integrate: dt must be positive and finite");
    }
    if (!(config.t_end > 0.0) || !std::isfinite(config.t_end)) {
        throw std::invalid_argument("integrate: t_end must be positive and finite");
    }
    if (config.sample_every < 1) {
        throw std::invalid_argument("integrate: sample_every must be >= 1");
    }
    if (config.method == Method::rk45 && (!(config.rel_tol > 0.0) || !(config.abs_tol > 0.0))) {
        throw std::invalid_argument("integrate: rk45 tolerances must be positive");
    }
}

void check_finite(const Vector& theta, Real t) {
    if (!theta.allFinite()) {
        throw NumericalError("integration aborted: non-finite state at t = " + std::to_string(t));
    }
}

void rk4_step(const OscillatorSystem& system, Vector& theta, Real h) {
    const Vector k1 = vector_field(system, theta);
    const Vector k2 = vector_field(system, theta + (0.5 * h) * k1);
    const Vector k3 = vector_field(system, theta + (0.5 * h) * k2);
    const Vector k4 = vector_field(system, theta + h * k3);
    theta += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

struct SampleLog {
    std::vector<Real> times;
    std::vector<Vector> states;

    void push(Real t, const Vector& theta) {
        times.push_back(t);
        states.push_back(theta);
    }
};

Trajectory assemble(const OscillatorSystem& system, const SampleLog& log) {
    const Eigen::Index samples = static_cast<Eigen::Index>(log.times.size());
    const Eigen::Index n = system.n;
    Trajectory out;
    out.system = system;
    out.times.resize(samples);
    out.thetas.resize(samples, n);
    out.theta_dots.resize(samples, n);
    out.r_values.resize(samples);
    out.phi_values.resize(samples);
    for (Eigen::Index s = 0; s < samples; ++s) {
        out.times[s] = log.times[static_cast<std::size_t>(s)];
        const Vector& theta = log.states[static_cast<std::size_t>(s)];
        out.thetas.row(s) = theta.transpose();
        out.theta_dots.row(s) = vector_field(system, theta).transpose();
        const OrderParameter op = order_parameter(theta);
        out.r_values[s] = op.r;
        out.phi_values[s] = op.phi;
    }
    return out;
}

Trajectory run_rk4(const OscillatorSystem& system, const Eigen::Ref<const Vector>& theta0,
                   const IntegratorConfig& config) {
    SampleLog log;
    Vector theta = theta0;
    Real t = 0.0;
    long long step = 0;
    log.push(0.0, theta);
    Real last_sampled = 0.0;
    const Real t_eps = 1e-12 * std::max(1.0, config.t_end);
    while (config.t_end - t > t_eps) {
        const Real h = std::min(config.dt, config.t_end - t);
        rk4_step(system, theta, h);
        ++step;
        // Keep sample times on the exact multiples of dt instead of summing
        // 20k rounded increments; the final (possibly short) step lands on t_end.
        t = (h == config.dt) ? config.dt * static_cast<Real>(step) : config.t_end;
        if (config.t_end - t <= t_eps) {
            t = config.t_end;
        }
        check_finite(theta, t);
        if (step % config.sample_every == 0 || t == config.t_end) {
            log.push(t, theta);
            last_sampled = t;
        }
    }
    if (last_sampled != config.t_end) {
        log.push(config.t_end, theta); // defensive; the loop above normally lands on t_end
    }
    return assemble(system, log);
}

// Dormand-Prince 5(4) tableau. b5 is the propagating fifth-order weight row;
// err_w = b5 - b4 gives the embedded error estimate directly.
constexpr Real a21 = 1.0 / 5.0;
constexpr Real a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr Real a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr Real a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
               a54 = -212.0 / 729.0;
constexpr Real a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
               a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr Real b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
               b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
constexpr Real e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
               e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

Trajectory run_rk45(const OscillatorSystem& system, const Eigen::Ref<const Vector>& theta0,
                    const IntegratorConfig& config) {
    constexpr Real kMinStep = 1e-12;
    SampleLog log;
    Vector theta = theta0;
    Real t = 0.0;
    Real h = std::min(config.dt, config.t_end);
    long long accepted = 0;
    log.push(0.0, theta);
    Real last_sampled = 0.0;
    const Real t_eps = 1e-12 * std::max(1.0, config.t_end);

    Vector k1 = vector_field(system, theta);
    while (config.t_end - t > t_eps) {
        h = std::min(h, config.t_end - t);
        if (h < kMinStep) {
            throw NumericalError("rk45 step size underflow (dt < 1e-12) at t = " + std::to_string(t));
        }
        const Vector k2 = vector_field(system, theta + h * (a21 * k1));
        const Vector k3 = vector_field(system, theta + h * (a31 * k1 + a32 * k2));
        const Vector k4 = vector_field(system, theta + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const Vector k5 = vector_field(system, theta + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const Vector k6 =
            vector_field(system, theta + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const Vector theta_new = theta + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const Vector k7 = vector_field(system, theta_new);
        const Vector err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        // Mixed absolute/relative max norm.
        Real err_norm = 0.0;
        for (Eigen::Index j = 0; j < theta.size(); ++j) {
            const Real scale = config.abs_tol + config.rel_tol * std::abs(theta[j]);
            err_norm = std::max(err_norm, std::abs(err[j]) / scale);
        }

        if (err_norm <= 1.0) {
            t += h;
            theta = theta_new;
            k1 = k7; // first-same-as-last
            ++accepted;
            check_finite(theta, t);
            if (config.t_end - t <= t_eps) {
                t = config.t_end;
                log.push(t, theta);
                last_sampled = t;
                break;
            }
            if (accepted % config.sample_every == 0) {
                log.push(t, theta);
                last_sampled = t;
            }
        }
        const Real grow = (err_norm > 0.0) ? 0.9 * std::pow(err_norm, -0.2) : 5.0;
        h *= std::clamp(grow, 0.2, 5.0);
    }
    if (last_sampled != config.t_end) {
        log.push(config.t_end, theta);
    }
    return assemble(system, log);
}

} // namespace

Trajectory integrate(const OscillatorSystem& system, const Eigen::Ref<const Vector>& theta0,
                     const IntegratorConfig& config) {
    validate(system);
    validate_config(config);
    if (theta0.size() != system.n) {
        throw std::invalid_argument("integrate: theta0 has length " + std::to_string(theta0.size()) +
                                    ", expected " + std::to_string(system.n));
    }
    if (!theta0.allFinite()) {
        throw std::invalid_argument("integrate: theta0 must be finite");
    }
    return (config.method == Method::rk4) ? run_rk4(system, theta0, config)
                                          : run_rk45(system, theta0, config);
}

Vector unwrap_angles(const Eigen::Ref<const Vector>& angles) {
    Vector out(angles.size());
    if (angles.size() == 0) {
        return out;
    }
    out[0] = angles[0];
    for (Eigen::Index s = 1; s < angles.size(); ++s) {
        Real jump = angles[s] - angles[s - 1];
        jump -= kTwoPi * std::round(jump / kTwoPi);
        out[s] = out[s - 1] + jump;
    }
    return out;
}

Real convergence_order(const OscillatorSystem& system, const Eigen::Ref<const Vector>& theta0,
                       const std::vector<Real>& dt_list, Real t_end) {
    if (dt_list.size() < 2) {
        throw std::invalid_argument("convergence_order: need at least two step sizes");
    }
    IntegratorConfig config;
    config.method = Method::rk4;
    config.t_end = t_end;
    config.sample_every = 1 << 30; // endpoint only

    auto endpoint = [&](Real dt) {
        config.dt = dt;
        const Trajectory traj = integrate(system, theta0, config);
        return Vector(traj.thetas.row(traj.samples() - 1).transpose());
    };

    const Real dt_min = *std::min_element(dt_list.begin(), dt_list.end());
    const Vector reference = endpoint(dt_min / 64.0);
    const Real floor = 1e-13 * (1.0 + reference.cwiseAbs().maxCoeff());

    std::vector<Real> errors;
    errors.reserve(dt_list.size());
    for (const Real dt : dt_list) {
        errors.push_back((endpoint(dt) - reference).cwiseAbs().maxCoeff());
    }

    Real sum = 0.0;
    int used = 0;
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
        // Pairs at the roundoff floor carry no order information.
        if (errors[i] < floor || errors[i + 1] < floor) {
            continue;
        }
        const Real ratio = dt_list[i] / dt_list[i + 1];
        sum += std::log(errors[i] / errors[i + 1]) / std::log(ratio);
        ++used;
    }
    if (used == 0) {
        return std::nan("");
    }
    return sum / static_cast<Real>(used);
}

} // namespace kuramoto
