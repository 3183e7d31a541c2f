#pragma once

#include <Eigen/Dense>

#include <complex>
#include <numbers>
#include <stdexcept>

namespace kuramoto {

using Real = double;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Complex = std::complex<double>;

inline constexpr Real kPi = std::numbers::pi_v<Real>;
inline constexpr Real kTwoPi = 2.0 * std::numbers::pi_v<Real>;

/// Thrown when the flow leaves the representable range: non-finite state
/// during integration or adaptive step-size underflow. The CLI maps this to
/// exit code 2, as opposed to exit code 1 for usage and validation errors.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace kuramoto
