#pragma once

// Forward and inverse two-band transform, its triangle kernels, the Maddox
// paranorms and the Schauder-basis machinery of the transformed spaces.
//
// Conventions:
//   y_n = (r_n x_n + s_{n-1} x_{n-1}) / alpha_n   with x_{-1} = 0.
//   V[n][k] = (-1)^{n-k} (alpha_k / r_n) prod_{i=k}^{n-1} (s_i / r_i)   (n >= k)
// V is the inverse of the triangle; the inverse transform is x = V y. The
// closed form is the one obtained by solving the recurrence, i.e. it carries the
// factor y_j inside the sum (the form the duality identities rely on).

#include <cmath>
#include <cstddef>
#include <vector>

#include "seqcore/types.hpp"

namespace seqcore {

enum class ParanormKind { sup, sum };

namespace detail {

/// Prefix sums L_m = sum_{i<m} log|s_i / r_i| with Neumaier compensation, and the
/// matching sign prefix. Products over [k, n) are exp(L_n - L_k) * sign_n * sign_k.
class LogRatioPrefix {
public:
    LogRatioPrefix(const BandSystem& sys, std::size_t n) : hi_(n, 0.0), lo_(n, 0.0), sign_(n, 1) {
        double sum = 0.0;
        double comp = 0.0;
        int sgn = 1;
        for (std::size_t m = 1; m < n; ++m) {
            const double ratio = sys.s(m - 1) / sys.r(m - 1);
            const double term = std::log(std::abs(ratio));
            const double t = sum + term;
            if (std::abs(sum) >= std::abs(term)) {
                comp += (sum - t) + term;
            } else {
                comp += (term - t) + sum;
            }
            sum = t;
            if (ratio < 0) sgn = -sgn;
            hi_[m] = sum;
            lo_[m] = comp;
            sign_[m] = sgn;
        }
    }

    /// log|prod_{i=k}^{n-1} s_i/r_i| for k <= n.
    double log_product(std::size_t k, std::size_t n) const { return (hi_[n] - hi_[k]) + (lo_[n] - lo_[k]); }

    int sign_product(std::size_t k, std::size_t n) const { return sign_[n] * sign_[k]; }

private:
    std::vector<double> hi_;
    std::vector<double> lo_;
    std::vector<int> sign_;
};

inline void require_positive(std::size_t n, const char* who) {
    if (n == 0) throw InvalidArgument(std::string(who) + ": truncation length must be at least 1");
}

/// Entry V[n][k] from the log-magnitude prefix.
inline double inverse_entry(const BandSystem& sys, const LogRatioPrefix& pre, std::size_t n, std::size_t k) {
    const double log_mag = std::log(sys.alpha(k)) - std::log(std::abs(sys.r(n))) + pre.log_product(k, n);
    int sgn = pre.sign_product(k, n) * (sys.r(n) < 0 ? -1 : 1);
    if ((n - k) % 2 == 1) sgn = -sgn;
    return sgn * std::exp(log_mag);
}

}  // namespace detail

inline FiniteSeq forward_transform(const FiniteSeq& x, const BandSystem& sys) {
    const std::size_t n = x.size();
    sys.require_length(n, "forward_transform");
    std::vector<Complex> y(n);
    y[0] = sys.r(0) * x[0] / sys.alpha(0);
    for (std::size_t k = 1; k < n; ++k) {
        y[k] = (sys.r(k) * x[k] + sys.s(k - 1) * x[k - 1]) / sys.alpha(k);
    }
    return FiniteSeq(std::move(y));
}

/// Solves the two-band recurrence x_k = (alpha_k y_k - s_{k-1} x_{k-1}) / r_k.
inline FiniteSeq inverse_transform(const FiniteSeq& y, const BandSystem& sys) {
    const std::size_t n = y.size();
    sys.require_length(n, "inverse_transform");
    std::vector<Complex> x(n);
    x[0] = sys.alpha(0) * y[0] / sys.r(0);
    for (std::size_t k = 1; k < n; ++k) {
        x[k] = (sys.alpha(k) * y[k] - sys.s(k - 1) * x[k - 1]) / sys.r(k);
    }
    return FiniteSeq(std::move(x));
}

inline TriangleKernel triangle_kernel(const BandSystem& sys, std::size_t n) {
    detail::require_positive(n, "triangle_kernel");
    sys.require_length(n, "triangle_kernel");
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = sys.r(i) / sys.alpha(i);
        if (i > 0) m(i, i - 1) = sys.s(i - 1) / sys.alpha(i);
    }
    return TriangleKernel(std::move(m));
}

/// Inverse of triangle_kernel, with the ratio products evaluated in log magnitude
/// so that long products neither overflow nor underflow prematurely.
inline TriangleKernel inverse_kernel(const BandSystem& sys, std::size_t n) {
    detail::require_positive(n, "inverse_kernel");
    sys.require_length(n, "inverse_kernel");
    const detail::LogRatioPrefix pre(sys, n);
    Matrix v(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k <= i; ++k) v(i, k) = detail::inverse_entry(sys, pre, i, k);
    }
    return TriangleKernel(std::move(v));
}

/// Same matrix as inverse_kernel with the products multiplied out directly.
/// Only reliable while the products stay in range (roughly N <= 64); used as a cross-check.
inline TriangleKernel inverse_kernel_direct(const BandSystem& sys, std::size_t n) {
    detail::require_positive(n, "inverse_kernel_direct");
    sys.require_length(n, "inverse_kernel_direct");
    Matrix v(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        double prod = 1.0;
        for (std::size_t i = k; i < n; ++i) {
            if (i > k) prod *= sys.s(i - 1) / sys.r(i - 1);
            const double sgn = ((i - k) % 2 == 0) ? 1.0 : -1.0;
            v(i, k) = sgn * (sys.alpha(k) / sys.r(i)) * prod;
        }
    }
    return TriangleKernel(std::move(v));
}

/// Inverse transform through the closed-form kernel: x = V y.
inline FiniteSeq inverse_transform_kernel(const FiniteSeq& y, const BandSystem& sys) {
    return inverse_kernel(sys, y.size()).apply(y);
}

/// b^(k): column k of the inverse kernel, truncated to length n.
inline FiniteSeq basis_vector(const BandSystem& sys, std::size_t k, std::size_t n) {
    detail::require_positive(n, "basis_vector");
    if (k >= n) throw InvalidArgument("basis_vector: index k must be below the truncation length");
    sys.require_length(n, "basis_vector");
    const detail::LogRatioPrefix pre(sys, n);
    std::vector<Complex> b(n, Complex{});
    for (std::size_t i = k; i < n; ++i) b[i] = detail::inverse_entry(sys, pre, i, k);
    return FiniteSeq(std::move(b));
}

/// z_k = sum_{j<=k} V[k][j], the preimage of the all-ones sequence.
inline FiniteSeq z_vector(const BandSystem& sys, std::size_t n) {
    detail::require_positive(n, "z_vector");
    sys.require_length(n, "z_vector");
    const detail::LogRatioPrefix pre(sys, n);
    std::vector<Complex> z(n);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j <= i; ++j) acc += detail::inverse_entry(sys, pre, i, j);
        z[i] = acc;
    }
    return FiniteSeq(std::move(z));
}

/// sup: sup_k |v_k|^{p_k/M}   (requires inf p_k > 0)
/// sum: (sum_k |v_k|^{p_k})^{1/M}
inline double maddox_paranorm(const FiniteSeq& v, const ExponentSeq& p, ParanormKind kind) {
    p.require_length(v.size(), "maddox_paranorm");
    const double M = p.M();
    if (kind == ParanormKind::sup) {
        if (!p.inf_positive()) throw InvalidArgument("maddox_paranorm: sup paranorm requires inf p_k > 0");
        double m = 0.0;
        for (std::size_t k = 0; k < v.size(); ++k) m = std::max(m, std::pow(std::abs(v[k]), p[k] / M));
        return m;
    }
    double acc = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) acc += std::pow(std::abs(v[k]), p[k]);
    return std::pow(acc, 1.0 / M);
}

/// Paranorm of x in the transformed space: the Maddox paranorm of its transform.
inline double space_paranorm(const FiniteSeq& x, const BandSystem& sys, const ExponentSeq& p, ParanormKind kind) {
    return maddox_paranorm(forward_transform(x, sys), p, kind);
}

/// Paranorm of x - sum_{k<=n} mu_k b^(k) with mu = transform of x, the residual formed by
/// explicit subtraction of the basis vectors.
inline double expansion_residual(const FiniteSeq& x, const BandSystem& sys, const ExponentSeq& p, std::size_t n,
                                 ParanormKind kind = ParanormKind::sup) {
    const std::size_t len = x.size();
    if (n >= len) throw InvalidArgument("expansion_residual: n must be below the sequence length");
    const FiniteSeq mu = forward_transform(x, sys);
    const TriangleKernel v = inverse_kernel(sys, len);
    std::vector<Complex> u(x.values().begin(), x.values().end());
    for (std::size_t k = 0; k <= n; ++k) {
        const Complex coef = mu[k];
        for (std::size_t i = k; i < len; ++i) u[i] -= coef * v(i, k);
    }
    return space_paranorm(FiniteSeq(std::move(u)), sys, p, kind);
}

/// sup_{k>n} |y_k|^{p_k/M}: the closed-form value of the sup-residual.
inline double tail_paranorm(const FiniteSeq& y, const ExponentSeq& p, std::size_t n) {
    p.require_length(y.size(), "tail_paranorm");
    double m = 0.0;
    for (std::size_t k = n + 1; k < y.size(); ++k) m = std::max(m, std::pow(std::abs(y[k]), p[k] / p.M()));
    return m;
}

}  // namespace seqcore
