#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <vector>

#include "sqgp/errors.hpp"
#include "sqgp/factorization.hpp"
#include "sqgp/kernels.hpp"

namespace sqgp {

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Standard normal keyed by (seed, counter): a pure function, so paths can
/// be partitioned across workers by counter range without changing any draw.
inline double counter_normal(std::uint64_t seed, std::uint64_t counter) {
    const std::uint64_t key = mix64(seed);
    const std::uint64_t h1 = mix64(key ^ (2 * counter));
    const std::uint64_t h2 = mix64(key ^ (2 * counter + 1));
    // (0,1) uniforms; the half-ulp offset keeps log away from zero.
    const double u1 = (static_cast<double>(h1 >> 11) + 0.5) * 0x1.0p-53;
    const double u2 = (static_cast<double>(h2 >> 11) + 0.5) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace detail

/// Streams exact Gaussian paths x = m + L z with L the Cholesky square root
/// of K_t; a deterministic function of (model, t, seed, path index).
class PathSampler {
public:
    PathSampler(const std::vector<double>& mean, const SymMatrix& cov,
                std::uint64_t seed)
        : mean_(mean), fact_(factorize(cov)), seed_(seed), t_(cov.size()) {
        if (mean.size() != cov.size()) throw SizeMismatch("path sampler");
    }

    PathSampler(const ProcessModel& model, std::size_t t, std::uint64_t seed)
        : PathSampler(model.mean_vector(t), covariance_matrix(model, t), seed) {}

    std::size_t horizon() const { return t_; }

    std::vector<double> path(std::uint64_t index) const {
        std::vector<double> z(t_);
        for (std::size_t s = 0; s < t_; ++s)
            z[s] = detail::counter_normal(seed_, index * t_ + s);
        std::vector<double> x = fact_.apply_sqrt(z);
        for (std::size_t s = 0; s < t_; ++s) x[s] += mean_[s];
        return x;
    }

private:
    std::vector<double> mean_;
    Factorization fact_;
    std::uint64_t seed_;
    std::size_t t_;
};

inline std::vector<std::vector<double>> sample_paths(const ProcessModel& model,
                                                     std::size_t t, std::size_t n,
                                                     std::uint64_t seed) {
    PathSampler sampler(model, t, seed);
    std::vector<std::vector<double>> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(sampler.path(i));
    return out;
}

/// Empirical mean of exp(-alpha sum x_s^2) with its standard error.
struct MCEstimate {
    std::size_t t;
    double alpha;
    std::size_t n_samples;
    double estimate;
    double std_error;
    std::uint64_t seed;
};

namespace detail {

inline MCEstimate estimate_from_sampler(const PathSampler& sampler, double alpha,
                                        std::size_t n, std::uint64_t seed) {
    if (!(alpha >= 0.0)) throw DomainError("mc estimate requires alpha >= 0");
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::vector<double> x = sampler.path(i);
        double s = 0.0;
        for (double xs : x) s += xs * xs;
        const double w = std::exp(-alpha * s);
        sum += w;
        sumsq += w * w;
    }
    MCEstimate out{};
    out.t = sampler.horizon();
    out.alpha = alpha;
    out.n_samples = n;
    out.seed = seed;
    out.estimate = n > 0 ? sum / static_cast<double>(n) : 0.0;
    if (n > 1) {
        const double var =
            std::max(0.0, (sumsq - sum * sum / static_cast<double>(n)) /
                              static_cast<double>(n - 1));
        out.std_error = std::sqrt(var / static_cast<double>(n));
    }
    return out;
}

}  // namespace detail

inline MCEstimate estimate_log_laplace(const ProcessModel& model, double alpha,
                                       std::size_t t, std::size_t n,
                                       std::uint64_t seed) {
    PathSampler sampler(model, t, seed);
    return detail::estimate_from_sampler(sampler, alpha, n, seed);
}

}  // namespace sqgp
