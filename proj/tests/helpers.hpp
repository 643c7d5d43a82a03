#pragma once

// Test-side oracles, deliberately independent of the library's computational
// paths: Gauss-Jordan inversion, LU log-determinants, adaptive Simpson
// quadrature, general (non-symmetric) matrix norms, and the shared model
// fixtures.

#include <cmath>
#include <cstddef>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sqgp/kernels.hpp"
#include "sqgp/matrix.hpp"

namespace testutil {

struct DenseMat {
    std::size_t n = 0;
    std::vector<double> a;  // row-major

    explicit DenseMat(std::size_t size) : n(size), a(size * size, 0.0) {}
    double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

inline DenseMat to_dense(const sqgp::SymMatrix& m) {
    DenseMat out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) out.at(i, j) = m(i, j);
    return out;
}

inline DenseMat multiply(const DenseMat& x, const DenseMat& y) {
    DenseMat out(x.n);
    for (std::size_t i = 0; i < x.n; ++i)
        for (std::size_t k = 0; k < x.n; ++k) {
            const double v = x.at(i, k);
            if (v == 0.0) continue;
            for (std::size_t j = 0; j < x.n; ++j) out.at(i, j) += v * y.at(k, j);
        }
    return out;
}

inline double strong_norm(const DenseMat& m) {
    double best = 0.0;
    for (std::size_t i = 0; i < m.n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < m.n; ++j) acc += std::abs(m.at(i, j));
        best = std::max(best, acc);
    }
    return best;
}

inline double weak_norm(const DenseMat& m) {
    double acc = 0.0;
    for (double v : m.a) acc += std::abs(v);
    return m.n ? acc / static_cast<double>(m.n) : 0.0;
}

/// Gauss-Jordan inverse with partial pivoting.
inline DenseMat dense_inverse(const DenseMat& m) {
    const std::size_t n = m.n;
    DenseMat a = m;
    DenseMat inv(n);
    for (std::size_t i = 0; i < n; ++i) inv.at(i, i) = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a.at(r, col)) > std::abs(a.at(piv, col))) piv = r;
        if (a.at(piv, col) == 0.0) throw std::runtime_error("singular matrix");
        if (piv != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a.a[piv * n + j], a.a[col * n + j]);
                std::swap(inv.a[piv * n + j], inv.a[col * n + j]);
            }
        const double d = a.at(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a.a[col * n + j] /= d;
            inv.a[col * n + j] /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a.at(r, col);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                a.a[r * n + j] -= f * a.a[col * n + j];
                inv.a[r * n + j] -= f * inv.a[col * n + j];
            }
        }
    }
    return inv;
}

/// log |det| by LU with partial pivoting; throws if the sign comes out
/// negative (all oracle uses are positive definite).
inline double dense_log_det(const DenseMat& m) {
    const std::size_t n = m.n;
    DenseMat a = m;
    double log_abs = 0.0;
    int sign = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a.at(r, col)) > std::abs(a.at(piv, col))) piv = r;
        if (a.at(piv, col) == 0.0) throw std::runtime_error("singular matrix");
        if (piv != col) {
            sign = -sign;
            for (std::size_t j = 0; j < n; ++j) std::swap(a.a[piv * n + j], a.a[col * n + j]);
        }
        const double d = a.at(col, col);
        log_abs += std::log(std::abs(d));
        if (d < 0.0) sign = -sign;
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a.at(r, col) / d;
            if (f == 0.0) continue;
            for (std::size_t j = col; j < n; ++j) a.a[r * n + j] -= f * a.a[col * n + j];
        }
    }
    if (sign < 0) throw std::runtime_error("negative determinant");
    return log_abs;
}

namespace detail {
inline double simpson_step(const std::function<double(double)>& f, double a, double b,
                           double fa, double fm, double fb, double eps, int depth) {
    const double m = 0.5 * (a + b);
    const double flm = f(0.5 * (a + m));
    const double frm = f(0.5 * (m + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * eps)
        return left + right + (left + right - whole) / 15.0;
    return simpson_step(f, a, m, fa, flm, fm, eps / 2.0, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, eps / 2.0, depth - 1);
}
}  // namespace detail

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double eps) {
    const double m = 0.5 * (a + b);
    return detail::simpson_step(f, a, b, f(a), f(m), f(b), eps, 48);
}

/// Random symmetric matrix with entries U[-1, 1].
inline sqgp::SymMatrix random_symmetric(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    return sqgp::SymMatrix::from_generator(n, [&](std::size_t, std::size_t) { return u(rng); });
}

/// Random positive definite matrix B B* + 0.1 I.
inline sqgp::SymMatrix random_psd(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> b(n * n);
    for (double& v : b) v = u(rng);
    return sqgp::SymMatrix::from_generator(n, [&](std::size_t s, std::size_t r) {
        double acc = (s == r) ? 0.1 : 0.0;
        for (std::size_t k = 0; k < n; ++k) acc += b[s * n + k] * b[r * n + k];
        return acc;
    });
}

/// The model fixtures exercised across the suite.
inline std::vector<std::pair<std::string, sqgp::ProcessModel>> fixtures() {
    using namespace sqgp;
    std::vector<std::pair<std::string, ProcessModel>> out;
    out.emplace_back("white_centered",
                     ProcessModel{MeanSpec::constant(0.0), KernelSpec::white()});
    out.emplace_back("white_mean",
                     ProcessModel{MeanSpec::constant(1.0), KernelSpec::white()});
    out.emplace_back("ar1_mean",
                     ProcessModel{MeanSpec::constant(1.0), KernelSpec::ar1(0.5)});
    out.emplace_back("ar1_neg_alternating",
                     ProcessModel{MeanSpec::alternating(1.0), KernelSpec::ar1(-0.5)});
    out.emplace_back("ar1_decaying_mean",
                     ProcessModel{MeanSpec::decaying(1.0, 2.0, 0.8), KernelSpec::ar1(0.9)});
    out.emplace_back("ma_mean",
                     ProcessModel{MeanSpec::constant(0.5), KernelSpec::ma({1.0, 1.0})});
    out.emplace_back("ar1_perturbed",
                     ProcessModel{MeanSpec::constant(1.0), KernelSpec::ar1(0.5),
                                  Perturbation::separable(1.0, 0.5)});
    out.emplace_back("table_perturbed",
                     ProcessModel{MeanSpec::decaying(1.0, 2.0, 0.8),
                                  KernelSpec::table({1.0, 0.4, 0.1}),
                                  Perturbation::separable(0.5, 0.6)});
    return out;
}

}  // namespace testutil
