#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "sqgp/errors.hpp"
#include "sqgp/kernels.hpp"
#include "sqgp/laplace.hpp"
#include "sqgp/limits.hpp"
#include "sqgp/matrix.hpp"

namespace sqgp {

namespace detail {

struct EigenDecomposition {
    std::size_t n;
    std::vector<double> values;   // eigenvalues, unordered
    std::vector<double> vectors;  // row-major; column j is the j-th eigenvector

    double q(std::size_t i, std::size_t j) const { return vectors[i * n + j]; }
};

/// Cyclic Jacobi for dense symmetric matrices. Rotations are swept until the
/// off-diagonal Frobenius mass falls below 1e-15 of the total, which leaves
/// eigenpair residuals far inside the 1e-9 * ||K|| budget at the t <= 256
/// sizes used here.
inline EigenDecomposition jacobi_eigh(const SymMatrix& m) {
    const std::size_t n = m.size();
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j);
    std::vector<double> v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

    double total = 0.0;
    for (double x : a) total += x * x;
    const double stop = 1e-30 * (total > 0.0 ? total : 1.0);

    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += 2.0 * a[p * n + q] * a[p * n + q];
        if (off <= stop) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) continue;
                const double diff = a[q * n + q] - a[p * n + p];
                double t;
                if (std::abs(apq) < 1e-300 * std::abs(diff)) {
                    t = apq / diff;
                } else {
                    const double phi = diff / (2.0 * apq);
                    t = 1.0 / (std::abs(phi) + std::sqrt(phi * phi + 1.0));
                    if (phi < 0.0) t = -t;
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                const double app = a[p * n + p], aqq = a[q * n + q];
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (i == p || i == q) continue;
                    const double aip = a[i * n + p], aiq = a[i * n + q];
                    a[i * n + p] = aip - s * (aiq + tau * aip);
                    a[p * n + i] = a[i * n + p];
                    a[i * n + q] = aiq + s * (aip - tau * aiq);
                    a[q * n + i] = a[i * n + q];
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vip = v[i * n + p], viq = v[i * n + q];
                    v[i * n + p] = vip - s * (viq + tau * vip);
                    v[i * n + q] = viq + s * (vip - tau * viq);
                }
            }
        }
    }

    EigenDecomposition out;
    out.n = n;
    out.values.resize(n);
    for (std::size_t j = 0; j < n; ++j) out.values[j] = a[j * n + j];
    out.vectors = std::move(v);
    return out;
}

}  // namespace detail

enum class ComponentKind { gamma, compound_poisson, deterministic };

/**
 * One factor of the infinitely divisible decomposition of sum X_s^2: per
 * eigenpair (v_j, mu_j) of (K_t, Q* m_t), the square of a Gaussian with mean
 * mu_j and variance v_j contributes a Gamma(1/2, 2 v_j) factor plus, when
 * mu_j != 0, a compound Poisson of exponentials with mean 2 v_j and Poisson
 * rate mu_j^2 / (2 v_j). A zero-variance eigenpair is a deterministic shift
 * by mu_j^2.
 */
struct IDComponent {
    ComponentKind kind;
    std::size_t source;  // eigenpair index
    double shape = 0.0;     // gamma
    double scale = 0.0;     // gamma: 2 v
    double rate = 0.0;      // compound poisson: mu^2 / (2 v)
    double exp_mean = 0.0;  // compound poisson: 2 v
    double shift = 0.0;     // deterministic: mu^2

    double log_laplace(double alpha) const {
        switch (kind) {
            case ComponentKind::gamma:
                return -shape * std::log1p(alpha * scale);
            case ComponentKind::compound_poisson:
                return -rate * (1.0 - 1.0 / (1.0 + alpha * exp_mean));
            case ComponentKind::deterministic:
                return -alpha * shift;
        }
        return 0.0;
    }
};

/// Component list whose log-Laplace product reconstructs log L_t exactly.
struct IDDecomposition {
    std::size_t t;
    std::vector<IDComponent> components;

    double log_laplace(double alpha) const {
        double acc = 0.0;
        for (const IDComponent& c : components) acc += c.log_laplace(alpha);
        return acc;
    }

    /// The distribution raised to the power p: shapes, rates and shifts
    /// scale linearly (infinite divisibility).
    IDDecomposition power(double p) const {
        IDDecomposition out{t, components};
        for (IDComponent& c : out.components) {
            c.shape *= p;
            c.rate *= p;
            c.shift *= p;
        }
        return out;
    }
};

/// Diagonalizes K_t and emits the per-eigenpair factors. Budgeted for
/// t <= 256 (dense eigendecomposition).
inline IDDecomposition decompose(const ProcessModel& model, std::size_t t) {
    if (t == 0) throw DomainError("decompose requires t >= 1");
    if (t > 256) throw DomainError("decompose budgeted for t <= 256");

    const SymMatrix kt = covariance_matrix(model, t);
    const detail::EigenDecomposition eig = detail::jacobi_eigh(kt);
    const std::vector<double> m = model.mean_vector(t);

    double max_ev = 0.0;
    for (double v : eig.values) max_ev = std::max(max_ev, v);
    const double scale = max_ev > 0.0 ? max_ev : 1.0;
    for (double v : eig.values)
        if (v < -1e-9 * scale)
            throw NotPositiveSemidefinite("negative eigenvalue " + std::to_string(v));
    const double eps_v = 1e-12 * scale;

    IDDecomposition out{t, {}};
    for (std::size_t j = 0; j < t; ++j) {
        const double v = eig.values[j];
        double mu = 0.0;
        for (std::size_t i = 0; i < t; ++i) mu += eig.q(i, j) * m[i];
        const double mu2 = mu * mu;

        if (v > eps_v) {
            IDComponent gamma{};
            gamma.kind = ComponentKind::gamma;
            gamma.source = j;
            gamma.shape = 0.5;
            gamma.scale = 2.0 * v;
            out.components.push_back(gamma);
            if (mu2 > 0.0) {
                IDComponent cp{};
                cp.kind = ComponentKind::compound_poisson;
                cp.source = j;
                cp.rate = mu2 / (2.0 * v);
                cp.exp_mean = 2.0 * v;
                out.components.push_back(cp);
            }
        } else if (mu2 > 0.0) {
            IDComponent det{};
            det.kind = ComponentKind::deterministic;
            det.source = j;
            det.shift = mu2;
            out.components.push_back(det);
        }
    }
    return out;
}

/// Parameters of the limit factors: e^{-ell0} (Thorin-class Gamma limit,
/// reported through its log-Laplace at the probe point) and e^{-ell1}
/// (compound Poisson of exponentials with mean 2 f(lambda*), rate
/// m_inf^2 / (2 f(lambda*))).
struct LimitComponents {
    double alpha_probe;
    double thorin_log_laplace;  // -ell0(alpha_probe)
    bool has_compound;
    double rate;
    double exp_mean;
    double ell1_value;  // ell1(alpha_probe) reproduced by the compound factor
};

inline LimitComponents limit_components(const KernelSpec& kernel,
                                        const MeanSpec& mean, double alpha_probe) {
    LimitComponents out{};
    out.alpha_probe = alpha_probe;
    out.thorin_log_laplace = -ell0(kernel, alpha_probe);
    out.ell1_value = ell1(kernel, mean, alpha_probe);

    const double m_inf = mean.m_inf();
    if (m_inf == 0.0) {
        out.has_compound = false;
        return out;
    }
    const double f_star = kernel.f(mean.lambda_star());
    if (!(f_star > 0.0))
        throw DegenerateSpectrum("f(lambda*) = " + std::to_string(f_star) +
                                 " with m_inf != 0");
    out.has_compound = true;
    out.rate = m_inf * m_inf / (2.0 * f_star);
    out.exp_mean = 2.0 * f_star;

    const double reproduced =
        out.rate * (1.0 - 1.0 / (1.0 + 2.0 * alpha_probe * f_star));
    if (std::abs(reproduced - out.ell1_value) >
        1e-12 * std::max(1.0, std::abs(out.ell1_value)))
        throw FactorizationFailure("compound factor failed to reproduce ell1");
    return out;
}

/// Density of the limit distribution of the AR(1) case,
/// f_0(x) = e^{-(1+theta^2)x/2} (2 pi)^{-1/2} |theta|^{-1} x^{-3/2}
/// sinh(|theta| x), switching to the sinh(y)/y series for tiny |theta| x.
inline double ar1_limit_density(double theta, double x) {
    if (!(std::abs(theta) < 1.0) || theta == 0.0)
        throw DomainError("ar1 density requires 0 < |theta| < 1");
    if (!(x > 0.0)) throw DomainError("ar1 density requires x > 0");
    const double y = std::abs(theta) * x;
    if (y < 1e-4) {
        const double envelope = std::exp(-0.5 * (1.0 + theta * theta) * x) /
                                std::sqrt(2.0 * std::numbers::pi * x);
        return envelope * (1.0 + y * y / 6.0);
    }
    // sinh written as a difference of decaying exponentials so the density
    // stays finite where sinh(y) alone would overflow.
    const double om = 1.0 - std::abs(theta);
    return -std::expm1(-2.0 * y) * std::exp(-0.5 * om * om * x) /
           (2.0 * y * std::sqrt(2.0 * std::numbers::pi * x));
}

}  // namespace sqgp
