#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sqgp/errors.hpp"
#include "sqgp/kernels.hpp"
#include "sqgp/matrix.hpp"

namespace sqgp {

/**
 * Unit-style lower-triangular factorization of a positive semidefinite A:
 * the rows G(tau, s), s <= tau, solving
 *
 *     sum_{r<=tau} G(tau,r) A(r,s) = delta_{tau,s}   for all s <= tau,
 *
 * together with the Cholesky factor L (A = L L*) they are derived from.
 * The pivots G(tau,tau) = 1/L(tau,tau)^2 are the reciprocal innovation
 * variances; det(A) = prod 1/G(tau,tau) and m* A^{-1} m =
 * sum (1/G(tau,tau)) (sum_r G(tau,r) m(r))^2.
 *
 * Coordinates whose Cholesky pivot falls below 1e-12 * max diag are
 * deterministic: their G row is the Kronecker row, they are skipped in
 * determinants and quadratic forms, and their Cholesky column is zero.
 */
class Factorization {
public:
    Factorization(std::size_t n, std::vector<double> g, std::vector<double> chol,
                  std::vector<char> degenerate)
        : n_(n), g_(std::move(g)), l_(std::move(chol)),
          degenerate_(std::move(degenerate)) {}

    std::size_t size() const { return n_; }

    /// G(row, col) for col <= row.
    double g(std::size_t row, std::size_t col) const { return g_[idx(row, col)]; }

    /// Pivot G(row, row).
    double pivot(std::size_t row) const { return g_[idx(row, row)]; }

    bool degenerate(std::size_t row) const { return degenerate_[row] != 0; }

    std::size_t degenerate_count() const {
        std::size_t c = 0;
        for (char d : degenerate_) c += (d != 0);
        return c;
    }

    /// Cholesky factor L(row, col), col <= row; zero column for degenerate
    /// coordinates.
    double chol(std::size_t row, std::size_t col) const { return l_[idx(row, col)]; }

    /// Solves A u = rhs through the Cholesky factor. Degenerate coordinates
    /// are treated as fixed: their solution component is zero.
    std::vector<double> solve(const std::vector<double>& rhs) const {
        if (rhs.size() != n_) throw SizeMismatch("factorization solve");
        std::vector<double> y(n_, 0.0);
        for (std::size_t s = 0; s < n_; ++s) {
            if (degenerate_[s]) continue;
            double acc = rhs[s];
            for (std::size_t r = 0; r < s; ++r) acc -= l_[idx(s, r)] * y[r];
            y[s] = acc / l_[idx(s, s)];
        }
        for (std::size_t si = n_; si-- > 0;) {
            if (degenerate_[si]) { y[si] = 0.0; continue; }
            double acc = y[si];
            for (std::size_t r = si + 1; r < n_; ++r) acc -= l_[idx(r, si)] * y[r];
            y[si] = acc / l_[idx(si, si)];
        }
        return y;
    }

    /// L z for a standard-normal z: a sample of the centered Gaussian with
    /// covariance A.
    std::vector<double> apply_sqrt(const std::vector<double>& z) const {
        if (z.size() != n_) throw SizeMismatch("apply_sqrt");
        std::vector<double> out(n_, 0.0);
        for (std::size_t s = 0; s < n_; ++s) {
            double acc = 0.0;
            for (std::size_t r = 0; r <= s; ++r) acc += l_[idx(s, r)] * z[r];
            out[s] = acc;
        }
        return out;
    }

private:
    static std::size_t idx(std::size_t row, std::size_t col) {
        return row * (row + 1) / 2 + col;
    }

    std::size_t n_;
    std::vector<double> g_;           // packed lower triangle, row major
    std::vector<double> l_;           // packed lower triangle, row major
    std::vector<char> degenerate_;
};

/// Cholesky of a PSD matrix, then every G row by back substitution on the
/// defining linear system. Rejects inputs with a pivot below
/// -1e-9 * max diag; pivots in [-1e-9, 1e-12] * max diag become degenerate
/// coordinates.
inline Factorization factorize(const SymMatrix& a) {
    const std::size_t n = a.size();
    double max_diag = 0.0;
    for (std::size_t s = 0; s < n; ++s) max_diag = std::max(max_diag, a(s, s));
    const double scale = max_diag > 0.0 ? max_diag : 1.0;
    const double deg_tol = 1e-12 * scale;
    const double neg_tol = -1e-9 * scale;

    std::vector<double> l(n * (n + 1) / 2, 0.0);
    std::vector<char> deg(n, 0);
    auto idx = [](std::size_t row, std::size_t col) { return row * (row + 1) / 2 + col; };

    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j);
        for (std::size_t r = 0; r < j; ++r) d -= l[idx(j, r)] * l[idx(j, r)];
        if (d < neg_tol)
            throw NotPositiveSemidefinite("pivot " + std::to_string(d) + " at row " +
                                          std::to_string(j));
        if (d <= deg_tol) {
            deg[j] = 1;  // deterministic coordinate; leave column j zero
            continue;
        }
        const double ljj = std::sqrt(d);
        l[idx(j, j)] = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double acc = a(i, j);
            for (std::size_t r = 0; r < j; ++r) acc -= l[idx(i, r)] * l[idx(j, r)];
            l[idx(i, j)] = acc / ljj;
        }
    }

    std::vector<double> g(n * (n + 1) / 2, 0.0);
    std::vector<double> work(n, 0.0);
    for (std::size_t tau = 0; tau < n; ++tau) {
        if (deg[tau]) {
            for (std::size_t s = 0; s < tau; ++s) g[idx(tau, s)] = 0.0;
            g[idx(tau, tau)] = 1.0;  // Kronecker row, flagged degenerate
            continue;
        }
        // Solve L* w = e_tau / L(tau,tau) over rows 0..tau; then
        // G(tau, .) = w. Degenerate columns contribute nothing.
        work[tau] = 1.0 / (l[idx(tau, tau)] * l[idx(tau, tau)]);
        for (std::size_t si = tau; si-- > 0;) {
            if (deg[si]) { work[si] = 0.0; continue; }
            double acc = 0.0;
            for (std::size_t r = si + 1; r <= tau; ++r)
                acc -= l[idx(r, si)] * work[r];
            work[si] = acc / l[idx(si, si)];
        }
        for (std::size_t s = 0; s <= tau; ++s) g[idx(tau, s)] = work[s];
    }

    return Factorization(n, std::move(g), std::move(l), std::move(deg));
}

/// log det(A) = -sum_tau log G(tau,tau), degenerate rows contributing
/// factor 1.
inline double log_det_via_pivots(const Factorization& f) {
    double acc = 0.0;
    for (std::size_t tau = 0; tau < f.size(); ++tau)
        if (!f.degenerate(tau)) acc -= std::log(f.pivot(tau));
    return acc;
}

/// m* A^{-1} m = sum_tau (1/G(tau,tau)) (sum_r G(tau,r) m(r))^2 over the
/// non-degenerate rows.
inline double quad_form_via_pivots(const Factorization& f,
                                   const std::vector<double>& m) {
    if (m.size() != f.size()) throw SizeMismatch("quad_form_via_pivots");
    double acc = 0.0;
    for (std::size_t tau = 0; tau < f.size(); ++tau) {
        if (f.degenerate(tau)) continue;
        double inner = 0.0;
        for (std::size_t r = 0; r <= tau; ++r) inner += f.g(tau, r) * m[r];
        acc += inner * inner / f.pivot(tau);
    }
    return acc;
}

/// Reversed factorization row g_t(s) = G(t, t-s) of I + 2 alpha H, the
/// unique solution of g_t(s) + 2 alpha sum_{r<=t} g_t(r) k(s-r) = delta_{s,0}.
struct GtRow {
    std::size_t t;
    std::vector<double> values;  // values[s] = g_t(s), s = 0..t

    double sum() const {
        double acc = 0.0;
        for (double v : values) acc += v;
        return acc;
    }
};

/**
 * Incremental Levinson-Durbin recursion on the symbol b(j) = delta_{j0} +
 * 2 alpha k(j). Maintains the monic prediction coefficients a_n (a_n(0) = 1)
 * and innovation variance E_n with
 *
 *     (I_{n+1} + 2 alpha H_{n+1}) a_n = E_n e_0,
 *
 * so g_n = a_n / E_n solves the order-n reversed system. Extending from
 * order n-1 to n costs O(n); a full sweep to order t costs O(t^2).
 */
class LevinsonRecursion {
public:
    LevinsonRecursion(const KernelSpec& kernel, double alpha)
        : kernel_(kernel), alpha_(alpha), a_{1.0} {
        if (!(alpha >= 0.0)) throw DomainError("levinson requires alpha >= 0");
        e_ = symbol(0);
        if (!(e_ > 0.0))
            throw NotPositiveSemidefinite("leading symbol value not positive");
    }

    std::size_t order() const { return a_.size() - 1; }
    double innovation_variance() const { return e_; }

    void extend_to(std::size_t order) {
        while (a_.size() - 1 < order) step();
    }

    GtRow row() const {
        GtRow out;
        out.t = order();
        out.values.resize(a_.size());
        for (std::size_t s = 0; s < a_.size(); ++s) out.values[s] = a_[s] / e_;
        return out;
    }

    double pivot() const { return 1.0 / e_; }

private:
    double symbol(std::size_t j) {
        while (b_.size() <= j)
            b_.push_back((b_.size() == 0 ? 1.0 : 0.0) +
                         2.0 * alpha_ * kernel_.k(static_cast<std::int64_t>(b_.size())));
        return b_[j];
    }

    void step() {
        const std::size_t n = a_.size();  // moving from order n-1 to order n
        double num = 0.0;
        for (std::size_t j = 0; j < n; ++j) num += a_[j] * symbol(n - j);
        const double refl = num / e_;
        if (!(std::abs(refl) < 1.0))
            throw NotPositiveSemidefinite("reflection coefficient magnitude >= 1 at order " +
                                          std::to_string(n));
        std::vector<double> next(n + 1);
        next[0] = 1.0;
        for (std::size_t j = 1; j <= n; ++j)
            next[j] = (j < n ? a_[j] : 0.0) - refl * a_[n - j];
        a_ = std::move(next);
        e_ *= (1.0 - refl * refl);
    }

    KernelSpec kernel_;
    double alpha_;
    std::vector<double> a_;
    std::vector<double> b_;  // cached symbol values delta_{j0} + 2 alpha k(j)
    double e_ = 0.0;
};

enum class GPath { fast, reference };

/// All reversed rows g_tau, tau = 0..t-1. The fast path runs the Levinson
/// recursion; the reference path factorizes I + 2 alpha H_t densely and
/// reads G(tau, tau-s).
inline std::vector<GtRow> g_rows(const KernelSpec& kernel, double alpha,
                                 std::size_t t, GPath path = GPath::fast) {
    if (!(alpha >= 0.0)) throw DomainError("g_rows requires alpha >= 0");
    std::vector<GtRow> rows;
    if (t == 0) return rows;
    rows.reserve(t);
    if (path == GPath::fast) {
        LevinsonRecursion rec(kernel, alpha);
        rows.push_back(rec.row());
        for (std::size_t tau = 1; tau < t; ++tau) {
            rec.extend_to(tau);
            rows.push_back(rec.row());
        }
    } else {
        const SymMatrix b = SymMatrix::from_generator(t, [&](std::size_t s, std::size_t r) {
            return (s == r ? 1.0 : 0.0) +
                   2.0 * alpha * kernel.k(static_cast<std::int64_t>(s) -
                                          static_cast<std::int64_t>(r));
        });
        const Factorization f = factorize(b);
        for (std::size_t tau = 0; tau < t; ++tau) {
            GtRow row;
            row.t = tau;
            row.values.resize(tau + 1);
            for (std::size_t s = 0; s <= tau; ++s) row.values[s] = f.g(tau, tau - s);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

/// Pivot g_t(0) of the last row and the filtering error 1 - g_t(0).
struct FilteringStats {
    double pivot;
    double error;
};

inline FilteringStats filtering_stats(const KernelSpec& kernel, double alpha,
                                      std::size_t t) {
    if (t == 0) throw DomainError("filtering_stats requires t >= 1");
    LevinsonRecursion rec(kernel, alpha);
    rec.extend_to(t - 1);
    const double pivot = rec.pivot();
    if (!(pivot > 0.0 && pivot <= 1.0 + 1e-12))
        throw FactorizationFailure("filter pivot outside (0,1]");
    return FilteringStats{pivot, 1.0 - pivot};
}

}  // namespace sqgp
