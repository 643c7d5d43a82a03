#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "sqgp/errors.hpp"
#include "sqgp/factorization.hpp"
#include "sqgp/kernels.hpp"
#include "sqgp/matrix.hpp"

namespace sqgp {

/// H_t(s,r) = k(s-r), the Toeplitz matrix with symbol k.
inline SymMatrix toeplitz(const KernelSpec& kernel, std::size_t t) {
    return SymMatrix::from_generator(t, [&](std::size_t s, std::size_t r) {
        return kernel.k(static_cast<std::int64_t>(s) - static_cast<std::int64_t>(r));
    });
}

/// Solves (I + 2 alpha H_t) u = v for a complex right-hand side by two real
/// Cholesky solves plus one step of iterative refinement. For alpha >= 0 and
/// a valid kernel the system is positive definite; failure signals a bad
/// kernel table.
inline std::vector<std::complex<double>> resolvent_apply(
    const KernelSpec& kernel, double alpha, std::size_t t,
    const std::vector<std::complex<double>>& v) {
    if (!(alpha >= 0.0)) throw DomainError("resolvent requires alpha >= 0");
    if (v.size() != t) throw SizeMismatch("resolvent right-hand side");

    const SymMatrix a = shifted_identity(toeplitz(kernel, t), 2.0 * alpha);
    Factorization f = [&] {
        try {
            return factorize(a);
        } catch (const NotPositiveSemidefinite& e) {
            throw FactorizationFailure(e.what());
        }
    }();

    auto solve_refined = [&](const std::vector<double>& rhs) {
        std::vector<double> u = f.solve(rhs);
        std::vector<double> resid = a.apply(u);
        for (std::size_t s = 0; s < t; ++s) resid[s] = rhs[s] - resid[s];
        const std::vector<double> corr = f.solve(resid);
        for (std::size_t s = 0; s < t; ++s) u[s] += corr[s];
        return u;
    };

    std::vector<double> re(t), im(t);
    for (std::size_t s = 0; s < t; ++s) {
        re[s] = v[s].real();
        im[s] = v[s].imag();
    }
    const std::vector<double> ure = solve_refined(re);
    const std::vector<double> uim = solve_refined(im);
    std::vector<std::complex<double>> out(t);
    for (std::size_t s = 0; s < t; ++s) out[s] = {ure[s], uim[s]};
    return out;
}

/// (1/t) l1 gap between (I + 2 alpha H_t)^{-1} d and (1 + 2 alpha f(lambda))^{-1} d
/// for the quasi-eigenvector d = (e^{-i lambda s})_{s<t}. Vanishes as t grows:
/// d is an exact eigenvector of the infinite Toeplitz operator.
inline double eigen_approx_gap(const KernelSpec& kernel, double alpha,
                               double lambda, std::size_t t) {
    std::vector<std::complex<double>> d(t);
    for (std::size_t s = 0; s < t; ++s) {
        const double phase = -lambda * static_cast<double>(s);
        d[s] = {std::cos(phase), std::sin(phase)};
    }
    const std::vector<std::complex<double>> u = resolvent_apply(kernel, alpha, t, d);
    const double scalar = 1.0 / (1.0 + 2.0 * alpha * kernel.f(lambda));
    double acc = 0.0;
    for (std::size_t s = 0; s < t; ++s) acc += std::abs(u[s] - scalar * d[s]);
    return acc / static_cast<double>(t);
}

}  // namespace sqgp
