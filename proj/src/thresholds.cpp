#include "kuramoto/thresholds.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kuramoto {

Real theta_opt(Eigen::Index n) {
    if (n < 2) {
        throw std::invalid_argument("theta_opt: n must be >= 2, got " + std::to_string(n));
    }
    const Real m = static_cast<Real>(n - 2);
    // acos argument is (-m + sqrt(m^2 + 32)) / 8; the rationalized form below
    // avoids the cancellation that loses ~half the digits for large n.
    const Real arg = 4.0 / (m + std::sqrt(m * m + 32.0));
    return 2.0 * std::acos(arg);
}

ThresholdReport critical_coupling(const Eigen::Ref<const Vector>& omega, Eigen::Index n) {
    if (n < 2) {
        throw std::invalid_argument("critical_coupling: n must be >= 2, got " + std::to_string(n));
    }
    if (omega.size() != n) {
        throw std::invalid_argument("critical_coupling: omega has length " + std::to_string(omega.size()) +
                                    ", expected " + std::to_string(n));
    }
    ThresholdReport report;
    report.n = n;
    report.omega_max_abs = omega.cwiseAbs().maxCoeff();
    report.omega_max = omega.maxCoeff();
    report.omega_min = omega.minCoeff();
    report.theta_opt = theta_opt(n);
    report.identical_frequencies = (report.omega_max == report.omega_min);

    const Real nn = static_cast<Real>(n);
    report.term_order_param = report.omega_max_abs * (nn * nn + 1.0) / (nn * nn - nn + std::sqrt(2.0 * nn));
    const Real denom = 2.0 * std::sin(report.theta_opt) + 2.0 * (nn - 2.0) * std::sin(0.5 * report.theta_opt);
    report.term_chopra_spong = (report.omega_max - report.omega_min) * nn / denom;
    report.lambda_c = std::max(report.term_order_param, report.term_chopra_spong);
    return report;
}

Real r_upper_bound(Real omega_max_abs, Real lambda, Eigen::Index n) {
    if (n < 2) {
        throw std::domain_error("r_upper_bound: n must be >= 2, got " + std::to_string(n));
    }
    if (!(omega_max_abs > 0.0)) {
        throw std::domain_error("r_upper_bound: requires omega_max_abs > 0");
    }
    if (!(lambda > omega_max_abs)) {
        throw std::domain_error("r_upper_bound: requires lambda > omega_max_abs");
    }
    const Real ratio = omega_max_abs / lambda;
    const Real nn = static_cast<Real>(n);
    return 1.0 - 1.0 / nn + std::sqrt(1.0 - ratio * ratio) / nn;
}

Real two_oscillator_threshold(Real omega_1, Real omega_2) {
    return std::abs(omega_2 - omega_1);
}

} // namespace kuramoto
