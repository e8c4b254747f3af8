#pragma once

// Independent reference computations used only by tests and the acceptance
// suite. Each avoids the code path it checks: plain loops, no log-prefix sums,
// no pruning.

#include <cmath>
#include <cstddef>
#include <vector>

#include "seqcore/subset_sup.hpp"
#include "seqcore/types.hpp"

namespace seqcore::oracle {

/// Dense triangle T: diagonal r_n / alpha_n, subdiagonal s_{n-1} / alpha_n.
inline Matrix band_triangle(const BandSystem& sys, std::size_t n) {
    Matrix t(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        t(i, i) = sys.r(i) / sys.alpha(i);
        if (i > 0) t(i, i - 1) = sys.s(i - 1) / sys.alpha(i);
    }
    return t;
}

/// Solves T x = y by forward substitution.
inline std::vector<Complex> forward_substitution(const BandSystem& sys, std::span<const Complex> y) {
    std::vector<Complex> x(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        Complex rhs = sys.alpha(i) * y[i];
        if (i > 0) rhs -= sys.s(i - 1) * x[i - 1];
        x[i] = rhs / sys.r(i);
    }
    return x;
}

/// Inverse of T column by column, by forward substitution on unit vectors.
inline Matrix inverse_by_substitution(const BandSystem& sys, std::size_t n) {
    Matrix v(n, n);
    std::vector<Complex> e(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::fill(e.begin(), e.end(), Complex{});
        e[k] = 1.0;
        const auto col = forward_substitution(sys, e);
        for (std::size_t i = 0; i < n; ++i) v(i, k) = col[i];
    }
    return v;
}

/// max over all 2^count subsets, summing each subset in ascending index order.
inline double subset_sup_brute(const Matrix& m, const SubsetSupOptions& opt = {}) {
    const bool by_cols = opt.axis == Axis::columns;
    const std::size_t outer = by_cols ? m.rows() : m.cols();
    const std::size_t count = by_cols ? m.cols() : m.rows();
    if (count > 24) throw InvalidArgument("subset_sup_brute: too many subset indices");
    auto entry = [&](std::size_t o, std::size_t i) {
        const Complex v = by_cols ? m(o, i) : m(i, o);
        return opt.weights.empty() ? v : v * opt.weights[i];
    };
    double best = 0.0;
    std::vector<Complex> acc(outer);
    for (std::size_t mask = 0; mask < (std::size_t{1} << count); ++mask) {
        std::fill(acc.begin(), acc.end(), Complex{});
        for (std::size_t i = 0; i < count; ++i) {
            if (mask & (std::size_t{1} << i)) {
                for (std::size_t o = 0; o < outer; ++o) acc[o] += entry(o, i);
            }
        }
        double total = 0.0;
        for (std::size_t o = 0; o < outer; ++o) {
            total += opt.outer_exponents.empty() ? std::abs(acc[o]) : std::pow(std::abs(acc[o]), opt.outer_exponents[o]);
        }
        best = std::max(best, total);
    }
    return best;
}

/// sum_o sum_i |w_i e(o, i)|.
inline double full_abs_sum(const Matrix& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t k = 0; k < m.cols(); ++k) s += std::abs(m(i, k));
    }
    return s;
}

/// (a_n x_n) and (sum_{k<=n} a_k x_k) for x = T^{-1} y, computed from forward
/// substitution.
struct DualitySides {
    std::vector<Complex> products;
    std::vector<Complex> partial_sums;
};

inline DualitySides duality_sides(std::span<const Complex> a, const BandSystem& sys, std::span<const Complex> y) {
    const auto x = forward_substitution(sys, y);
    DualitySides d;
    Complex run{};
    for (std::size_t n = 0; n < y.size(); ++n) {
        d.products.push_back(a[n] * x[n]);
        run += a[n] * x[n];
        d.partial_sums.push_back(run);
    }
    return d;
}

}  // namespace seqcore::oracle
