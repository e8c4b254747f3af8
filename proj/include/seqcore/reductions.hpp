#pragma once

// Row and column reductions shared by the dual-set and matrix-class probes.
// All loops run in ascending index order.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "seqcore/types.hpp"

namespace seqcore::reduce {

/// w_k = base^{sign / p_k} for k < n.
inline std::vector<double> exponent_weights(const ExponentSeq& p, std::size_t n, double base, double sign) {
    p.require_length(n, "exponent_weights");
    std::vector<double> w(n);
    for (std::size_t k = 0; k < n; ++k) w[k] = std::pow(base, sign / p[k]);
    return w;
}

/// Leading n x n block.
inline Matrix leading_square(const Matrix& m, std::size_t n) {
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) out(i, k) = m(i, k);
    }
    return out;
}

/// Columns summed in row n: k <= n for triangle sums, every column otherwise.
inline std::size_t row_extent(const Matrix& m, std::size_t n, bool triangle) {
    return triangle ? std::min(n + 1, m.cols()) : m.cols();
}

/// sum_k |m_nk - beta_k| w_k   (beta and w optional)
inline double row_abs(const Matrix& m, std::size_t n, std::span<const double> w, std::span<const Complex> beta,
                      bool triangle) {
    double acc = 0.0;
    const std::size_t len = row_extent(m, n, triangle);
    for (std::size_t k = 0; k < len; ++k) {
        const Complex v = beta.empty() ? m(n, k) : m(n, k) - beta[k];
        acc += w.empty() ? std::abs(v) : std::abs(v) * w[k];
    }
    return acc;
}

inline Complex row_sum(const Matrix& m, std::size_t n, bool triangle) {
    Complex acc{};
    const std::size_t len = row_extent(m, n, triangle);
    for (std::size_t k = 0; k < len; ++k) acc += m(n, k);
    return acc;
}

/// max over n of f(n), n in [lo, hi).
template <class F>
double max_over_rows(std::size_t lo, std::size_t hi, F&& f) {
    double m = 0.0;
    for (std::size_t n = lo; n < hi; ++n) {
        const double v = f(n);
        if (!std::isfinite(v)) return v;
        m = std::max(m, v);
    }
    return m;
}

/// max over rows n in [n0, hi) and columns k < max(n0, 1) of f(n, k): the tail-window
/// read of a per-column limit.
template <class F>
double column_window_deviation(std::size_t n0, std::size_t hi, F&& f) {
    const std::size_t kcap = std::max<std::size_t>(n0, 1);
    double m = 0.0;
    for (std::size_t n = n0; n < hi; ++n) {
        for (std::size_t k = 0; k < kcap && k <= n; ++k) {
            const double v = f(n, k);
            if (!std::isfinite(v)) return v;
            m = std::max(m, v);
        }
    }
    return m;
}

}  // namespace seqcore::reduce
