#pragma once

#include <cstddef>
#include <vector>

#include "sqgp/errors.hpp"
#include "sqgp/factorization.hpp"
#include "sqgp/kernels.hpp"
#include "sqgp/matrix.hpp"

namespace sqgp {

/**
 * log L_t(alpha) for L_t(alpha) = E[exp(-alpha sum_{s<t} X_s^2)], split into
 * its two parts:
 *
 *     log L_t = -1/2 log det(I + 2 alpha K_t) - alpha m* (I + 2 alpha K_t)^{-1} m.
 *
 * Everything stays in the log domain; L_t itself underflows at large t.
 */
struct LogLaplace {
    std::size_t t;
    double alpha;
    double log_value;
    double det_part;   // -1/2 log det(I + 2 alpha K_t)
    double mean_part;  // -alpha m* (I + 2 alpha K_t)^{-1} m
};

namespace detail {

inline LogLaplace log_laplace_of(const std::vector<double>& mean,
                                 const SymMatrix& cov, double alpha,
                                 std::size_t t) {
    if (!(alpha >= 0.0)) throw DomainError("log_laplace requires alpha >= 0");
    if (t == 0) throw DomainError("log_laplace requires t >= 1");
    const SymMatrix a = shifted_identity(cov, 2.0 * alpha);
    const Factorization f = factorize(a);
    LogLaplace out{};
    out.t = t;
    out.alpha = alpha;
    out.det_part = -0.5 * log_det_via_pivots(f);
    out.mean_part = -alpha * quad_form_via_pivots(f, mean);
    out.log_value = out.det_part + out.mean_part;
    return out;
}

}  // namespace detail

inline LogLaplace log_laplace(const ProcessModel& model, double alpha,
                              std::size_t t) {
    return detail::log_laplace_of(model.mean_vector(t), covariance_matrix(model, t),
                                  alpha, t);
}

/// log L_{x,t}(alpha), the transform conditioned on X_0 = x, computed from
/// the conditioned pair (m_{x,t}, K_t^bullet). The pinned first coordinate
/// enters through the mean term as exactly -alpha x^2.
inline LogLaplace log_laplace_conditioned(const ProcessModel& model, double x,
                                          double alpha, std::size_t t) {
    if (t == 0) throw DomainError("log_laplace requires t >= 1");
    ConditionedStart cs = condition_on_start(model, x, t);
    return detail::log_laplace_of(cs.mean, cs.cov, alpha, t);
}

/// (1/t) log L_t(alpha), the finite-horizon object whose limit is -ell(alpha).
inline double scaled_log_laplace(const ProcessModel& model, double alpha,
                                 std::size_t t) {
    return log_laplace(model, alpha, t).log_value / static_cast<double>(t);
}

inline double scaled_log_laplace_conditioned(const ProcessModel& model, double x,
                                             double alpha, std::size_t t) {
    return log_laplace_conditioned(model, x, alpha, t).log_value /
           static_cast<double>(t);
}

}  // namespace sqgp
