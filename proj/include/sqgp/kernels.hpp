#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "sqgp/errors.hpp"
#include "sqgp/matrix.hpp"

namespace sqgp {

enum class KernelKind { white, ar1, ma, table };

/**
 * Stationary covariance kernel k together with its spectral density f,
 * the symbol of the Toeplitz operator. Four constructible kinds:
 *
 *   white      k(t) = delta_0(t),                 f = 1
 *   ar1        k(t) = theta^|t| / (1 - theta^2),  f(l) = 1/(1+theta^2-2 theta cos l)
 *   ma         k(t) = sum_j c_j c_{j+|t|},        f via the finite cosine sum
 *   table      k(0..T) given, symmetric, zero beyond T
 *
 * All kinds have summable covariances with an exactly computable
 * M = sum_t |k(t)|, and f >= 0 (checked on a 4096-point grid for tables).
 */
class KernelSpec {
public:
    static KernelSpec white() { return KernelSpec(KernelKind::white, 0.0, {}); }

    static KernelSpec ar1(double theta) {
        if (!(std::abs(theta) < 1.0))
            throw DomainError("ar1 kernel requires |theta| < 1");
        return KernelSpec(KernelKind::ar1, theta, {});
    }

    /// Moving-average coefficients c_0..c_q of X_t = sum_j c_j eps_{t-j}.
    static KernelSpec ma(std::vector<double> coeffs) {
        if (coeffs.empty()) throw DomainError("ma kernel requires coefficients");
        return KernelSpec(KernelKind::ma, 0.0, std::move(coeffs));
    }

    /// Covariance values k(0..T), extended symmetrically, zero beyond T.
    /// Rejects tables whose spectral density goes negative on the reference
    /// grid (positive-definiteness proxy).
    static KernelSpec table(std::vector<double> values) {
        if (values.empty()) throw DomainError("table kernel requires values");
        KernelSpec spec(KernelKind::table, 0.0, std::move(values));
        const double tol = 1e-10 * std::max(1.0, spec.abs_sum());
        constexpr int grid = 4096;
        for (int j = 0; j < grid; ++j) {
            const double lambda = 2.0 * std::numbers::pi * j / grid;
            if (spec.f(lambda) < -tol)
                throw DomainError("table kernel has negative spectral density");
        }
        return spec;
    }

    KernelKind kind() const { return kind_; }

    double theta() const {
        if (kind_ != KernelKind::ar1) throw DomainError("theta is ar1-only");
        return theta_;
    }

    const std::vector<double>& coeffs() const { return coeffs_; }

    /// Covariance at lag t (symmetric in t).
    double k(std::int64_t t) const {
        const std::int64_t lag = t < 0 ? -t : t;
        switch (kind_) {
            case KernelKind::white:
                return lag == 0 ? 1.0 : 0.0;
            case KernelKind::ar1:
                return std::pow(theta_, static_cast<double>(lag)) /
                       (1.0 - theta_ * theta_);
            case KernelKind::ma: {
                const std::size_t q = coeffs_.size();
                if (static_cast<std::size_t>(lag) >= q) return 0.0;
                double acc = 0.0;
                for (std::size_t j = 0; j + lag < q; ++j)
                    acc += coeffs_[j] * coeffs_[j + lag];
                return acc;
            }
            case KernelKind::table:
                if (static_cast<std::size_t>(lag) >= coeffs_.size()) return 0.0;
                return coeffs_[static_cast<std::size_t>(lag)];
        }
        return 0.0;
    }

    /// Spectral density f(lambda) = sum_t e^{i lambda t} k(t). Closed form for
    /// white/ar1; the finite symmetric cosine sum for ma/table.
    double f(double lambda) const {
        switch (kind_) {
            case KernelKind::white:
                return 1.0;
            case KernelKind::ar1:
                return 1.0 / (1.0 + theta_ * theta_ - 2.0 * theta_ * std::cos(lambda));
            case KernelKind::ma:
            case KernelKind::table: {
                double acc = k(0);
                for (std::int64_t t = 1; t <= support(); ++t)
                    acc += 2.0 * k(t) * std::cos(lambda * static_cast<double>(t));
                return acc;
            }
        }
        return 0.0;
    }

    /// M = sum_t |k(t)|, exact per kind.
    double abs_sum() const {
        switch (kind_) {
            case KernelKind::white:
                return 1.0;
            case KernelKind::ar1: {
                const double a = std::abs(theta_);
                return (1.0 + 2.0 * a / (1.0 - a)) / (1.0 - theta_ * theta_);
            }
            case KernelKind::ma:
            case KernelKind::table: {
                double acc = std::abs(k(0));
                for (std::int64_t t = 1; t <= support(); ++t)
                    acc += 2.0 * std::abs(k(t));
                return acc;
            }
        }
        return 0.0;
    }

    /// Largest lag with a (possibly) nonzero covariance, or -1 when the
    /// support is infinite (ar1 with theta != 0).
    std::int64_t support() const {
        switch (kind_) {
            case KernelKind::white:
                return 0;
            case KernelKind::ar1:
                return theta_ == 0.0 ? 0 : -1;
            case KernelKind::ma:
            case KernelKind::table:
                return static_cast<std::int64_t>(coeffs_.size()) - 1;
        }
        return 0;
    }

private:
    KernelSpec(KernelKind kind, double theta, std::vector<double> coeffs)
        : kind_(kind), theta_(theta), coeffs_(std::move(coeffs)) {}

    KernelKind kind_;
    double theta_;
    std::vector<double> coeffs_;  // ma coefficients or table values
};

enum class MeanKind { constant, alternating, decaying };

/// Mean sequence m(t) with a known asymptotic value m_inf. The alternating
/// kind targets the f(pi) variant of the mean limit instead of f(0).
class MeanSpec {
public:
    static MeanSpec constant(double m_inf) {
        return MeanSpec(MeanKind::constant, m_inf, 0.0, 0.0);
    }

    static MeanSpec alternating(double m_inf) {
        return MeanSpec(MeanKind::alternating, m_inf, 0.0, 0.0);
    }

    /// m(t) = m_inf + c * rho^t with rho in (0,1).
    static MeanSpec decaying(double m_inf, double c, double rho) {
        if (!(rho > 0.0 && rho < 1.0))
            throw DomainError("decaying mean requires rho in (0,1)");
        return MeanSpec(MeanKind::decaying, m_inf, c, rho);
    }

    MeanKind kind() const { return kind_; }
    double m_inf() const { return m_inf_; }

    double m(std::int64_t t) const {
        switch (kind_) {
            case MeanKind::constant:
                return m_inf_;
            case MeanKind::alternating:
                return (t % 2 == 0) ? m_inf_ : -m_inf_;
            case MeanKind::decaying:
                return m_inf_ + c_ * std::pow(rho_, static_cast<double>(t));
        }
        return 0.0;
    }

    /// sup_t |m(t)| over t >= 0, the (H1) bound.
    double sup_abs() const {
        switch (kind_) {
            case MeanKind::constant:
            case MeanKind::alternating:
                return std::abs(m_inf_);
            case MeanKind::decaying:
                // |m(t)| is monotone between its t=0 value and the limit.
                return std::max(std::abs(m_inf_ + c_), std::abs(m_inf_));
        }
        return 0.0;
    }

    /// Frequency carrying the asymptotic mean: pi for alternating, else 0.
    double lambda_star() const {
        return kind_ == MeanKind::alternating ? std::numbers::pi : 0.0;
    }

private:
    MeanSpec(MeanKind kind, double m_inf, double c, double rho)
        : kind_(kind), m_inf_(m_inf), c_(c), rho_(rho) {}

    MeanKind kind_;
    double m_inf_;
    double c_;
    double rho_;
};

enum class PerturbationKind { none, separable };

/// Optional summable covariance perturbation P(s,r) added to the stationary
/// kernel; the separable kind is P(s,r) = c * rho^s * rho^r.
class Perturbation {
public:
    static Perturbation none() { return Perturbation(PerturbationKind::none, 0.0, 0.0); }

    static Perturbation separable(double c, double rho) {
        if (!(rho > 0.0 && rho < 1.0))
            throw DomainError("separable perturbation requires rho in (0,1)");
        return Perturbation(PerturbationKind::separable, c, rho);
    }

    PerturbationKind kind() const { return kind_; }
    bool is_none() const { return kind_ == PerturbationKind::none; }

    double p(std::int64_t s, std::int64_t r) const {
        if (kind_ == PerturbationKind::none) return 0.0;
        return c_ * std::pow(rho_, static_cast<double>(s)) *
               std::pow(rho_, static_cast<double>(r));
    }

private:
    Perturbation(PerturbationKind kind, double c, double rho)
        : kind_(kind), c_(c), rho_(rho) {}

    PerturbationKind kind_;
    double c_;
    double rho_;
};

/// Gaussian process model: mean sequence plus covariance K(t,s) =
/// k(t-s) + P(t,s). With no perturbation, K_t is exactly Toeplitz.
struct ProcessModel {
    MeanSpec mean;
    KernelSpec kernel;
    Perturbation perturbation = Perturbation::none();

    double covariance(std::int64_t t, std::int64_t s) const {
        return kernel.k(t - s) + perturbation.p(t, s);
    }

    std::vector<double> mean_vector(std::size_t t) const {
        std::vector<double> out(t);
        for (std::size_t s = 0; s < t; ++s)
            out[s] = mean.m(static_cast<std::int64_t>(s));
        return out;
    }
};

inline double spectral_density(const KernelSpec& kernel, double lambda) {
    return kernel.f(lambda);
}

/// K_t = (K(s,r))_{s,r < t}, exactly symmetric.
inline SymMatrix covariance_matrix(const ProcessModel& model, std::size_t t) {
    return SymMatrix::from_generator(t, [&](std::size_t s, std::size_t r) {
        return model.covariance(static_cast<std::int64_t>(s),
                                static_cast<std::int64_t>(r));
    });
}

/// Mean and covariance of the process pinned to X_0 = x.
struct ConditionedStart {
    std::vector<double> mean;  // m_{x,t}, with mean[0] == x exactly
    SymMatrix cov;             // K_t^bullet, first row and column zero
};

/// Conditions the model on the start value x: m_x(s) = m(s) +
/// (K(0,s)/K(0,0)) (x - m(s)) and K*(s,r) = K(s,r) - K(s,0) K(r,0) / K(0,0).
/// The first coordinate becomes deterministic: mean x, variance 0.
inline ConditionedStart condition_on_start(const ProcessModel& model, double x,
                                           std::size_t t) {
    const double k00 = model.covariance(0, 0);
    if (!(k00 > 1e-12))
        throw ZeroStartVariance("K(0,0) = " + std::to_string(k00));

    std::vector<double> mean(t);
    mean[0] = x;
    for (std::size_t s = 1; s < t; ++s) {
        const auto si = static_cast<std::int64_t>(s);
        const double ms = model.mean.m(si);
        mean[s] = ms + model.covariance(0, si) / k00 * (x - ms);
    }

    // Computing the rank-one update with the ratio K(s,0)/K(0,0) makes the
    // first row and column cancel exactly (ratio = 1 at s = 0).
    SymMatrix cov = SymMatrix::from_generator(t, [&](std::size_t s, std::size_t r) {
        const auto si = static_cast<std::int64_t>(s);
        const auto ri = static_cast<std::int64_t>(r);
        const double ratio = model.covariance(si, 0) / k00;
        return model.covariance(si, ri) - ratio * model.covariance(ri, 0);
    });
    return ConditionedStart{std::move(mean), std::move(cov)};
}

/// Finite-truncation diagnostics of the five standing hypotheses. These
/// report, they never fail.
struct HypothesisReport {
    std::size_t t;
    double h1_sup_mean_abs;      // sup_{s<t} |m(s)|
    double h2_max_row_abs_sum;   // max_s sum_r |K(s,r)|
    double h3_kernel_abs_sum;    // sum_{|s|<=t} |k(s)|
    double h4_mean_avg_dev;      // (1/t) sum_{s<t} |m(s) - m_inf|
    double h5_weak_gap;          // (1/t) sum_{s,r<t} |K(s,r) - k(r-s)|
};

inline HypothesisReport hypothesis_report(const ProcessModel& model, std::size_t t) {
    HypothesisReport rep{};
    rep.t = t;

    double sup_m = 0.0, dev = 0.0;
    for (std::size_t s = 0; s < t; ++s) {
        const double ms = model.mean.m(static_cast<std::int64_t>(s));
        sup_m = std::max(sup_m, std::abs(ms));
        dev += std::abs(ms - model.mean.m_inf());
    }
    rep.h1_sup_mean_abs = sup_m;
    rep.h4_mean_avg_dev = dev / static_cast<double>(t);

    double h3 = std::abs(model.kernel.k(0));
    for (std::size_t s = 1; s <= t; ++s)
        h3 += 2.0 * std::abs(model.kernel.k(static_cast<std::int64_t>(s)));
    rep.h3_kernel_abs_sum = h3;

    const SymMatrix kt = covariance_matrix(model, t);
    rep.h2_max_row_abs_sum = strong_norm(kt);

    double gap = 0.0;
    for (std::size_t s = 0; s < t; ++s)
        for (std::size_t r = 0; r < t; ++r)
            gap += std::abs(kt(s, r) - model.kernel.k(static_cast<std::int64_t>(r) -
                                                      static_cast<std::int64_t>(s)));
    rep.h5_weak_gap = gap / static_cast<double>(t);
    return rep;
}

}  // namespace sqgp
