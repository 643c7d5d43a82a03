#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "sqgp/errors.hpp"
#include "sqgp/factorization.hpp"
#include "sqgp/kernels.hpp"
#include "sqgp/laplace.hpp"

namespace sqgp {

/// The limit ell(alpha) = ell0(alpha) + ell1(alpha) of -(1/t) log L_t(alpha).
struct LimitResult {
    double alpha;
    double ell0;
    double ell1;
    double ell;
    std::size_t nodes;   // quadrature nodes used for ell0
    double lambda_star;  // frequency carrying the mean limit: 0 or pi
};

/// ell0(alpha) = (1/4 pi) int_0^{2pi} log(1 + 2 alpha f(lambda)) dlambda by
/// the uniform trapezoid rule, which is spectrally accurate for the periodic
/// analytic integrand.
inline double ell0(const KernelSpec& kernel, double alpha, std::size_t nodes = 4096) {
    if (!(alpha >= 0.0)) throw DomainError("ell0 requires alpha >= 0");
    if (nodes == 0) throw DomainError("ell0 requires nodes >= 1");
    double acc = 0.0;
    for (std::size_t j = 0; j < nodes; ++j) {
        const double lambda = 2.0 * std::numbers::pi * static_cast<double>(j) /
                              static_cast<double>(nodes);
        acc += std::log1p(2.0 * alpha * kernel.f(lambda));
    }
    return acc / (2.0 * static_cast<double>(nodes));
}

/// ell1(alpha) = m_inf^2 alpha (1 + 2 alpha f(lambda*))^{-1} with lambda* = 0
/// for constant and decaying means, pi for alternating ones.
inline double ell1(const KernelSpec& kernel, const MeanSpec& mean, double alpha) {
    if (!(alpha >= 0.0)) throw DomainError("ell1 requires alpha >= 0");
    const double m = mean.m_inf();
    return m * m * alpha / (1.0 + 2.0 * alpha * kernel.f(mean.lambda_star()));
}

inline LimitResult limit(const KernelSpec& kernel, const MeanSpec& mean,
                         double alpha, std::size_t nodes = 4096) {
    LimitResult out{};
    out.alpha = alpha;
    out.nodes = nodes;
    out.lambda_star = mean.lambda_star();
    out.ell0 = ell0(kernel, alpha, nodes);
    out.ell1 = ell1(kernel, mean, alpha);
    out.ell = out.ell0 + out.ell1;
    return out;
}

/**
 * Truncated solution of the semi-infinite system
 *
 *     g(s) + 2 alpha sum_{r>=0} g(r) k(s-r) = delta_{s,0},
 *
 * obtained as the last finite-section row g_T, together with the closed-form
 * functionals it converges to:
 *
 *     g(0)        = exp(-(1/2pi) int log(1 + 2 alpha f))        (= e^{-2 ell0})
 *     sum_s g(s)  = exp(-1/2 log(1+2 alpha f(0)) - ell0).
 *
 * Requires 2 alpha M < 1, the regime where the Neumann series converges.
 */
struct WienerHopfSolution {
    double alpha;
    std::size_t truncation;  // row index T; values for s = 0..T
    std::vector<double> g;
    double g0_closed;
    double sum_closed;
    double kernel_abs_sum;  // M

    double sum() const {
        double acc = 0.0;
        for (double v : g) acc += v;
        return acc;
    }
};

inline WienerHopfSolution wiener_hopf(const KernelSpec& kernel, double alpha,
                                      double tol = 1e-8) {
    if (!(alpha >= 0.0)) throw DomainError("wiener_hopf requires alpha >= 0");
    const double m = kernel.abs_sum();
    if (!(2.0 * alpha * m < 1.0))
        throw AlphaOutOfRange("2*alpha*M = " + std::to_string(2.0 * alpha * m) +
                              " >= 1");

    constexpr std::size_t t_start = 256;
    constexpr std::size_t t_cap = 1u << 15;

    LevinsonRecursion rec(kernel, alpha);
    rec.extend_to(t_start);
    GtRow row = rec.row();
    double g0 = row.values[0];
    double sum = row.sum();

    std::size_t order = t_start;
    for (;;) {
        if (order * 2 > t_cap)
            throw NoConvergence("wiener_hopf truncation exceeded " +
                                std::to_string(t_cap));
        order *= 2;
        rec.extend_to(order);
        row = rec.row();
        const double g0_next = row.values[0];
        const double sum_next = row.sum();
        const bool done =
            std::abs(g0_next - g0) < tol && std::abs(sum_next - sum) < tol;
        g0 = g0_next;
        sum = sum_next;
        if (done) break;
    }

    WienerHopfSolution out{};
    out.alpha = alpha;
    out.truncation = order;
    out.g = std::move(row.values);
    out.kernel_abs_sum = m;
    const double l0 = ell0(kernel, alpha);
    out.g0_closed = std::exp(-2.0 * l0);
    out.sum_closed = std::exp(-0.5 * std::log1p(2.0 * alpha * kernel.f(0.0)) - l0);
    return out;
}

/// Residual of the order-T system evaluated on s = 0..T (tail dropped);
/// zero up to roundoff for an exact finite-section solution.
inline double wiener_hopf_residual(const WienerHopfSolution& sol,
                                   const KernelSpec& kernel) {
    const std::size_t n = sol.g.size();
    double worst = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
        double acc = sol.g[s];
        for (std::size_t r = 0; r < n; ++r)
            acc += 2.0 * sol.alpha * sol.g[r] *
                   kernel.k(static_cast<std::int64_t>(s) - static_cast<std::int64_t>(r));
        acc -= (s == 0 ? 1.0 : 0.0);
        worst = std::max(worst, std::abs(acc));
    }
    return worst;
}

/// One row of the finite-horizon convergence experiment for
/// (1/t) log L_t(alpha) -> -ell(alpha).
struct ConvergenceRow {
    std::size_t t;
    double scaled_log_laplace;
    double neg_ell;
    double abs_error;
};

inline std::vector<ConvergenceRow> convergence_table(
    const ProcessModel& model, double alpha, const std::vector<std::size_t>& t_grid,
    std::size_t nodes = 4096) {
    const LimitResult lim = limit(model.kernel, model.mean, alpha, nodes);
    std::vector<ConvergenceRow> rows;
    rows.reserve(t_grid.size());
    for (std::size_t t : t_grid) {
        const double scaled = scaled_log_laplace(model, alpha, t);
        rows.push_back({t, scaled, -lim.ell, std::abs(scaled + lim.ell)});
    }
    return rows;
}

/// Same experiment started from X_0 = x; the limit is unchanged (weak
/// multiplicative ergodicity).
inline std::vector<ConvergenceRow> convergence_table_conditioned(
    const ProcessModel& model, double x, double alpha,
    const std::vector<std::size_t>& t_grid, std::size_t nodes = 4096) {
    const LimitResult lim = limit(model.kernel, model.mean, alpha, nodes);
    std::vector<ConvergenceRow> rows;
    rows.reserve(t_grid.size());
    for (std::size_t t : t_grid) {
        const double scaled = scaled_log_laplace_conditioned(model, x, alpha, t);
        rows.push_back({t, scaled, -lim.ell, std::abs(scaled + lim.ell)});
    }
    return rows;
}

}  // namespace sqgp
