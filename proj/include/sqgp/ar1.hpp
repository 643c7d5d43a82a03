#pragma once

#include <cmath>
#include <utility>

#include "sqgp/errors.hpp"

namespace sqgp {

/**
 * Closed forms for the Gauss-Markov case Y_t = theta Y_{t-1} + eps_t with
 * stationary variance (1-theta^2)^{-1}:
 *
 *     ell0(alpha) = 1/2 log(theta zeta+)
 *                 = 1/2 log(1/2 (theta^2 + 1 + 2 alpha + sqrt(((theta+1)^2
 *                   + 2 alpha)((theta-1)^2 + 2 alpha))))
 *     ell1(alpha) = m_inf^2 alpha (1-theta)^2 / ((1-theta)^2 + 2 alpha)
 *
 * where zeta-+ are the roots of zeta^2 - (theta + 1/theta + 2 alpha/theta)
 * zeta + 1. Used as ground truth across the test suite.
 */
struct Ar1Limit {
    double theta;
    double m_inf;
    double alpha;
    double zeta_minus;
    double zeta_plus;
    double ell0;
    double ell1;
};

/// Roots of zeta^2 - (theta + 1/theta + 2 alpha/theta) zeta + 1, larger
/// magnitude first computed by the standard formula, the smaller from the
/// unit product. Both share theta's sign; 0 < |zeta-| < 1 < |zeta+|.
inline std::pair<double, double> ar1_roots(double theta, double alpha) {
    if (theta == 0.0)
        throw DomainError("ar1 roots undefined at theta = 0 (white-noise case)");
    if (!(std::abs(theta) < 1.0)) throw DomainError("ar1 requires |theta| < 1");
    if (!(alpha >= 0.0)) throw DomainError("ar1 requires alpha >= 0");
    const double b = theta + 1.0 / theta + 2.0 * alpha / theta;
    const double disc = std::sqrt(b * b - 4.0);
    const double zeta_plus = (b > 0.0 ? b + disc : b - disc) / 2.0;
    const double zeta_minus = 1.0 / zeta_plus;
    return {zeta_minus, zeta_plus};
}

/// ell0 by the expanded radical, valid for all |theta| < 1 including the
/// white-noise limit theta = 0 where it collapses to 1/2 log(1 + 2 alpha).
inline double ar1_ell0(double theta, double alpha) {
    if (!(std::abs(theta) < 1.0)) throw DomainError("ar1 requires |theta| < 1");
    if (!(alpha >= 0.0)) throw DomainError("ar1 requires alpha >= 0");
    const double p = (theta + 1.0) * (theta + 1.0) + 2.0 * alpha;
    const double q = (theta - 1.0) * (theta - 1.0) + 2.0 * alpha;
    return 0.5 * std::log(0.5 * (theta * theta + 1.0 + 2.0 * alpha + std::sqrt(p * q)));
}

inline double ar1_ell1(double theta, double m_inf, double alpha) {
    if (!(std::abs(theta) < 1.0)) throw DomainError("ar1 requires |theta| < 1");
    if (!(alpha >= 0.0)) throw DomainError("ar1 requires alpha >= 0");
    const double om = (1.0 - theta) * (1.0 - theta);
    return m_inf * m_inf * alpha * om / (om + 2.0 * alpha);
}

inline Ar1Limit ar1_limit(double theta, double m_inf, double alpha) {
    const auto [zm, zp] = ar1_roots(theta, alpha);
    return Ar1Limit{theta,      m_inf, alpha, zm, zp, ar1_ell0(theta, alpha),
                    ar1_ell1(theta, m_inf, alpha)};
}

}  // namespace sqgp
