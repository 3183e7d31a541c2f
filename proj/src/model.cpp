#include "kuramoto/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kuramoto {

namespace {

[[noreturn]] void fail(const std::string& message) {
    throw std::invalid_argument("invalid system: " + message);
}

} // namespace

void validate(const OscillatorSystem& system) {
    const Eigen::Index n = system.n;
    if (n < 2) {
        fail("needs at least 2 oscillators, got n = " + std::to_string(n));
    }
    if (system.d.size() != n) {
        fail("d has length " + std::to_string(system.d.size()) + ", expected " + std::to_string(n));
    }
    if (system.omega.size() != n) {
        fail("omega has length " + std::to_string(system.omega.size()) + ", expected " + std::to_string(n));
    }
    if (system.coupling.rows() != n || system.coupling.cols() != n) {
        fail("coupling is " + std::to_string(system.coupling.rows()) + "x" + std::to_string(system.coupling.cols()) +
             ", expected " + std::to_string(n) + "x" + std::to_string(n));
    }
    for (Eigen::Index j = 0; j < n; ++j) {
        if (!(system.d[j] > 0.0) || !std::isfinite(system.d[j])) {
            fail("nonpositive d at " + std::to_string(j + 1));
        }
    }
    for (Eigen::Index j = 0; j < n; ++j) {
        if (!std::isfinite(system.omega[j])) {
            fail("non-finite omega at " + std::to_string(j + 1));
        }
    }
    for (Eigen::Index j = 0; j < n; ++j) {
        if (system.coupling(j, j) != 0.0) {
            fail("nonzero diagonal at " + std::to_string(j + 1));
        }
    }
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = j + 1; k < n; ++k) {
            const Real a = system.coupling(j, k);
            const Real b = system.coupling(k, j);
            if (!std::isfinite(a)) {
                fail("non-finite coupling at (" + std::to_string(j + 1) + "," + std::to_string(k + 1) + ")");
            }
            if (a != b) {
                fail("asymmetric at (" + std::to_string(j + 1) + "," + std::to_string(k + 1) + ")");
            }
        }
    }
}

OscillatorSystem normalize_frequencies(const OscillatorSystem& system) {
    validate(system);
    OscillatorSystem out = system;
    const Real shift = system.omega.sum() / system.d.sum();
    out.omega = system.omega - shift * system.d;
    return out;
}

Vector vector_field(const OscillatorSystem& system, const Eigen::Ref<const Vector>& theta) {
    const Vector s = theta.array().sin();
    const Vector c = theta.array().cos();
    const Vector coupling_s = system.coupling * s;
    const Vector coupling_c = system.coupling * c;
    const Real inv_n = 1.0 / static_cast<Real>(system.n);
    // sum_k lambda_jk sin(theta_k - theta_j) = cos(theta_j)(L s)_j - sin(theta_j)(L c)_j
    return (system.omega.array() +
            inv_n * (c.array() * coupling_s.array() - s.array() * coupling_c.array())) /
           system.d.array();
}

OrderParameter order_parameter(const Eigen::Ref<const Vector>& theta) {
    if (theta.size() == 0) {
        throw std::invalid_argument("order_parameter: empty phase vector");
    }
    OrderParameter op;
    op.z_re = theta.array().cos().mean();
    op.z_im = theta.array().sin().mean();
    op.r = std::hypot(op.z_re, op.z_im);
    if (op.r < 1e-12) {
        op.phi = 0.0;
        op.phi_indeterminate = true;
    } else {
        op.phi = std::atan2(op.z_im, op.z_re);
        if (op.phi < 0.0) {
            op.phi += kTwoPi;
        }
    }
    return op;
}

Vector velocity_bound(const OscillatorSystem& system) {
    const Real inv_n = 1.0 / static_cast<Real>(system.n);
    return (system.omega.cwiseAbs().array() +
            inv_n * system.coupling.cwiseAbs().rowwise().sum().array()) /
           system.d.array();
}

Real potential_energy(const OscillatorSystem& system, const Eigen::Ref<const Vector>& theta) {
    const Vector s = theta.array().sin();
    const Vector c = theta.array().cos();
    // sum_{j<k} lambda_jk cos(theta_k - theta_j) = (c' L c + s' L s) / 2
    return 0.5 * (c.dot(system.coupling * c) + s.dot(system.coupling * s));
}

Real kinetic_density(const OscillatorSystem& system, const Eigen::Ref<const Vector>& theta_dot) {
    return (system.d.array() * theta_dot.array().square()).sum();
}

Vector reduced_vector_field(const OscillatorSystem& system, const Eigen::Ref<const Vector>& psi) {
    const Eigen::Index n = system.n;
    if (psi.size() != n - 1) {
        throw std::invalid_argument("reduced_vector_field: psi has length " + std::to_string(psi.size()) +
                                    ", expected " + std::to_string(n - 1));
    }
    const Real inv_n = 1.0 / static_cast<Real>(n);
    // Shared tail: (1/N) sum_{l<N} lambda_Nl sin(psi_l), the motion of the
    // reference oscillator N expressed in the difference coordinates.
    Real tail = 0.0;
    for (Eigen::Index l = 0; l + 1 < n; ++l) {
        tail += system.coupling(n - 1, l) * std::sin(psi[l]);
    }
    Vector f(n - 1);
    for (Eigen::Index j = 0; j + 1 < n; ++j) {
        Real acc = 0.0;
        for (Eigen::Index l = 0; l < n; ++l) {
            const Real psi_l = (l + 1 < n) ? psi[l] : 0.0;
            acc += system.coupling(j, l) * std::sin(psi_l - psi[j]);
        }
        f[j] = system.omega[j] - system.omega[n - 1] + inv_n * acc - inv_n * tail;
    }
    return f;
}

} // namespace kuramoto
