#include "kuramoto/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace kuramoto {

namespace {

constexpr Real kNewtonTol = 1e-13;  ///< inner Newton residual target
constexpr Real kDedupeRadius = 1e-6; ///< torus max-metric merge radius
constexpr Real kStabilityBand = 1e-8;

Real wrap_to_canonical(Real angle) {
    Real out = std::fmod(angle, kTwoPi);
    if (out < 0.0) {
        out += kTwoPi;
    }
    // fmod can return exactly 2*pi after the adjustment when angle is a tiny
    // negative number; fold that back to 0.
    if (out >= kTwoPi) {
        out = 0.0;
    }
    return out;
}

Real torus_distance(const Vector& a, const Vector& b) {
    Real out = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        Real diff = std::abs(a[i] - b[i]);
        diff = std::min(diff, kTwoPi - diff);
        out = std::max(out, diff);
    }
    return out;
}

std::optional<Vector> newton_root(const OscillatorSystem& system, Vector psi) {
    constexpr int kMaxIter = 80;
    for (int iter = 0; iter < kMaxIter; ++iter) {
        const Vector f = reduced_vector_field(system, psi);
        if (f.cwiseAbs().maxCoeff() <= kNewtonTol) {
            return psi;
        }
        const Matrix jac = reduced_jacobian(system, psi);
        const Vector step = jac.fullPivLu().solve(-f);
        if (!step.allFinite() || step.cwiseAbs().maxCoeff() > 1e3) {
            return std::nullopt; // singular Jacobian or wild step: seed rejected
        }
        psi += step;
    }
    const Vector f = reduced_vector_field(system, psi);
    if (f.cwiseAbs().maxCoeff() <= kNewtonTol) {
        return psi;
    }
    return std::nullopt;
}

long long binomial(long long n, long long k) {
    long long out = 1;
    for (long long i = 1; i <= k; ++i) {
        out = out * (n - k + i) / i;
    }
    return out;
}

} // namespace

const char* to_string(Stability stability) {
    switch (stability) {
        case Stability::stable: return "stable";
        case Stability::unstable: return "unstable";
        default: return "marginal";
    }
}

Matrix reduced_jacobian(const OscillatorSystem& system, const Eigen::Ref<const Vector>& psi) {
    const Eigen::Index n = system.n;
    if (psi.size() != n - 1) {
        throw std::invalid_argument("reduced_jacobian: psi has length " + std::to_string(psi.size()) +
                                    ", expected " + std::to_string(n - 1));
    }
    const Real inv_n = 1.0 / static_cast<Real>(n);
    const Eigen::Index m = n - 1;
    Matrix jac(m, m);
    for (Eigen::Index j = 0; j < m; ++j) {
        Real diag = 0.0;
        for (Eigen::Index l = 0; l < n; ++l) {
            if (l == j) {
                continue;
            }
            const Real psi_l = (l < m) ? psi[l] : 0.0;
            diag -= system.coupling(j, l) * std::cos(psi_l - psi[j]);
        }
        for (Eigen::Index k = 0; k < m; ++k) {
            if (k == j) {
                jac(j, j) = inv_n * (diag - system.coupling(m, j) * std::cos(psi[j]));
            } else {
                jac(j, k) = inv_n * (system.coupling(j, k) * std::cos(psi[k] - psi[j]) -
                                     system.coupling(m, k) * std::cos(psi[k]));
            }
        }
    }
    return jac;
}

Matrix flow_jacobian(const OscillatorSystem& system, const Eigen::Ref<const Vector>& theta) {
    const Eigen::Index n = system.n;
    if (theta.size() != n) {
        throw std::invalid_argument("flow_jacobian: theta has length " + std::to_string(theta.size()) +
                                    ", expected " + std::to_string(n));
    }
    Matrix jac(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const Real factor = 1.0 / (static_cast<Real>(n) * system.d[j]);
        Real diag = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
            if (k == j) {
                continue;
            }
            const Real entry = factor * system.coupling(j, k) * std::cos(theta[k] - theta[j]);
            jac(j, k) = entry;
            diag -= entry;
        }
        jac(j, j) = diag;
    }
    return jac;
}

Matrix reduced_flow_jacobian(const OscillatorSystem& system, const Eigen::Ref<const Vector>& psi) {
    const Eigen::Index n = system.n;
    if (psi.size() != n - 1) {
        throw std::invalid_argument("reduced_flow_jacobian: psi has length " + std::to_string(psi.size()) +
                                    ", expected " + std::to_string(n - 1));
    }
    Vector theta(n);
    theta.head(n - 1) = psi;
    theta[n - 1] = 0.0;
    const Matrix full = flow_jacobian(system, theta);
    const Eigen::Index m = n - 1;
    Matrix out(m, m);
    for (Eigen::Index j = 0; j < m; ++j) {
        for (Eigen::Index k = 0; k < m; ++k) {
            out(j, k) = full(j, k) - full(m, k);
        }
    }
    return out;
}

Stability stability_tag(const OscillatorSystem& system, const Eigen::Ref<const Vector>& root) {
    const Matrix jac = reduced_flow_jacobian(system, root);
    const Eigen::EigenSolver<Matrix> solver(jac);
    const Vector real_parts = solver.eigenvalues().real();
    if ((real_parts.array() < -kStabilityBand).all()) {
        return Stability::stable;
    }
    if ((real_parts.array() > kStabilityBand).any()) {
        return Stability::unstable;
    }
    return Stability::marginal;
}

EquilibriumSet find_equilibria(const OscillatorSystem& system, int grid_per_dim, Real tol) {
    validate(system);
    const Eigen::Index n = system.n;
    const Eigen::Index m = n - 1;
    if (m > 6) {
        throw std::invalid_argument("find_equilibria: reduced dimension " + std::to_string(m) +
                                    " exceeds the supported maximum of 6");
    }
    if (grid_per_dim < 8) {
        throw std::invalid_argument("find_equilibria: grid_per_dim must be >= 8, got " +
                                    std::to_string(grid_per_dim));
    }
    if (!(tol > 0.0)) {
        throw std::invalid_argument("find_equilibria: tol must be positive");
    }
    // Locked states are rest points of the reduced flow only when the weighted
    // mean frequency vanishes; demand a normalized system instead of silently
    // returning rotating-frame artifacts.
    const Real omega_sum = system.omega.sum();
    if (std::abs(omega_sum) > 1e-9 * (1.0 + system.omega.cwiseAbs().sum())) {
        throw std::invalid_argument("find_equilibria: system is not normalized (sum omega = " +
                                    std::to_string(omega_sum) + "); call normalize_frequencies first");
    }

    EquilibriumSet set;
    set.binomial_bound = binomial(2 * static_cast<long long>(n) - 2, static_cast<long long>(n) - 1);

    std::vector<Vector> unique_roots;
    const Real cell = kTwoPi / static_cast<Real>(grid_per_dim);
    const long long total = [&] {
        long long out = 1;
        for (Eigen::Index i = 0; i < m; ++i) {
            out *= grid_per_dim;
        }
        return out;
    }();

    Vector seed(m);
    for (long long index = 0; index < total; ++index) {
        long long rest = index;
        for (Eigen::Index i = 0; i < m; ++i) {
            seed[i] = (static_cast<Real>(rest % grid_per_dim) + 0.5) * cell;
            rest /= grid_per_dim;
        }
        const auto root = newton_root(system, seed);
        if (!root) {
            continue;
        }
        Vector canonical = root->unaryExpr([](Real v) { return wrap_to_canonical(v); });
        if (reduced_vector_field(system, canonical).cwiseAbs().maxCoeff() > tol) {
            continue;
        }
        const bool duplicate = std::any_of(unique_roots.begin(), unique_roots.end(), [&](const Vector& r) {
            return torus_distance(r, canonical) <= kDedupeRadius;
        });
        if (!duplicate) {
            unique_roots.push_back(std::move(canonical));
        }
    }

    std::sort(unique_roots.begin(), unique_roots.end(), [](const Vector& a, const Vector& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    });

    set.roots = std::move(unique_roots);
    set.residuals.reserve(set.roots.size());
    set.stability.reserve(set.roots.size());
    for (const Vector& root : set.roots) {
        set.residuals.push_back(reduced_vector_field(system, root).cwiseAbs().maxCoeff());
        set.stability.push_back(stability_tag(system, root));
    }
    return set;
}

BoundReport count_vs_bound(const EquilibriumSet& set) {
    BoundReport report;
    report.count = static_cast<long long>(set.roots.size());
    report.bound = set.binomial_bound;
    report.within = report.count <= report.bound;
    return report;
}

} // namespace kuramoto
