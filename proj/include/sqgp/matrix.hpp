#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "sqgp/errors.hpp"

namespace sqgp {

/**
 * Dense symmetric matrix with exact symmetry by construction: every entry
 * generator is evaluated once per unordered pair and mirrored, so
 * A(s,r) == A(r,s) holds bit for bit.
 */
class SymMatrix {
public:
    explicit SymMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

    template <typename F>
    static SymMatrix from_generator(std::size_t n, F&& entry) {
        SymMatrix m(n);
        for (std::size_t s = 0; s < n; ++s) {
            for (std::size_t r = s; r < n; ++r) {
                const double v = entry(s, r);
                m.a_[s * n + r] = v;
                m.a_[r * n + s] = v;
            }
        }
        return m;
    }

    static SymMatrix identity(std::size_t n) {
        SymMatrix m(n);
        for (std::size_t s = 0; s < n; ++s) m.a_[s * n + s] = 1.0;
        return m;
    }

    std::size_t size() const { return n_; }

    double operator()(std::size_t s, std::size_t r) const { return a_[s * n_ + r]; }

    /// Sets both (s,r) and (r,s).
    void set(std::size_t s, std::size_t r, double v) {
        a_[s * n_ + r] = v;
        a_[r * n_ + s] = v;
    }

    const double* row(std::size_t s) const { return a_.data() + s * n_; }

    std::vector<double> apply(const std::vector<double>& v) const {
        if (v.size() != n_) throw SizeMismatch("matrix-vector apply");
        std::vector<double> out(n_, 0.0);
        for (std::size_t s = 0; s < n_; ++s) {
            const double* rs = row(s);
            double acc = 0.0;
            for (std::size_t r = 0; r < n_; ++r) acc += rs[r] * v[r];
            out[s] = acc;
        }
        return out;
    }

private:
    std::size_t n_;
    std::vector<double> a_;
};

/// I + c*A, used throughout as I + 2*alpha*K.
inline SymMatrix shifted_identity(const SymMatrix& a, double c) {
    const std::size_t n = a.size();
    return SymMatrix::from_generator(n, [&](std::size_t s, std::size_t r) {
        return (s == r ? 1.0 : 0.0) + c * a(s, r);
    });
}

/// Strong norm: maximum absolute row sum (equals the max column sum for
/// symmetric input).
inline double strong_norm(const SymMatrix& a) {
    const std::size_t n = a.size();
    double best = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
        double acc = 0.0;
        for (std::size_t r = 0; r < n; ++r) acc += std::abs(a(s, r));
        if (acc > best) best = acc;
    }
    return best;
}

/// Weak norm: (1/t) * sum of all absolute entries.
inline double weak_norm(const SymMatrix& a) {
    const std::size_t n = a.size();
    if (n == 0) return 0.0;
    double acc = 0.0;
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t r = 0; r < n; ++r) acc += std::abs(a(s, r));
    return acc / static_cast<double>(n);
}

/// Both norms of a matrix; weak <= strong always.
struct NormReport {
    double strong;
    double weak;
};

inline NormReport norms(const SymMatrix& a) {
    return NormReport{strong_norm(a), weak_norm(a)};
}

/// Weak norm of the difference |A - B|; the matrix half of the asymptotic
/// equivalence diagnostic (uniform strong-norm boundedness is tracked by the
/// caller via strong_norm).
inline double equivalence_gap(const SymMatrix& a, const SymMatrix& b) {
    if (a.size() != b.size()) throw SizeMismatch("equivalence_gap");
    const std::size_t n = a.size();
    if (n == 0) return 0.0;
    double acc = 0.0;
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t r = 0; r < n; ++r) acc += std::abs(a(s, r) - b(s, r));
    return acc / static_cast<double>(n);
}

/// (1/t) * l1 distance between two vectors of equal length.
inline double vector_equivalence_gap(const std::vector<double>& v,
                                     const std::vector<double>& w) {
    if (v.size() != w.size()) throw SizeMismatch("vector_equivalence_gap");
    if (v.empty()) return 0.0;
    double acc = 0.0;
    for (std::size_t s = 0; s < v.size(); ++s) acc += std::abs(v[s] - w[s]);
    return acc / static_cast<double>(v.size());
}

}  // namespace sqgp
