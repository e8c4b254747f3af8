#pragma once

// sup over finite index subsets K of  sum_o | sum_{i in K} w_i e(o, i) |^{x_o}
//
// For axis = columns the subset ranges over columns (i = k) and the outer sum
// over rows (o = n); for axis = rows the roles swap. Exact for at most
// kExactLimit subset indices by depth-first branch and bound; above that a
// (lower, upper) bracket is returned.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <vector>

#include "seqcore/rng.hpp"
#include "seqcore/types.hpp"

namespace seqcore {

enum class Axis { columns, rows };

struct SubsetSupOptions {
    Axis axis = Axis::columns;
    std::vector<double> weights;          // per subset index, empty = all ones
    std::vector<double> outer_exponents;  // per outer index, empty = no exponent
};

struct SubsetSupResult {
    double lower = 0.0;
    double upper = 0.0;
    bool exact = false;
    std::vector<std::size_t> subset;      // best subset found, ascending
};

inline constexpr std::size_t kExactLimit = 20;

namespace detail {

/// Weighted entries laid out as one column per subset index.
struct SubsetProblem {
    std::size_t outer = 0;
    std::size_t count = 0;
    std::vector<std::vector<Complex>> cols;  // cols[i][o]
    std::vector<double> exps;                // empty or size outer

    SubsetProblem(const Matrix& m, const SubsetSupOptions& opt) {
        const bool by_cols = opt.axis == Axis::columns;
        outer = by_cols ? m.rows() : m.cols();
        count = by_cols ? m.cols() : m.rows();
        if (!opt.weights.empty() && opt.weights.size() != count) {
            throw InvalidArgument("subset_sup: weights length differs from the subset axis");
        }
        if (!opt.outer_exponents.empty() && opt.outer_exponents.size() != outer) {
            throw InvalidArgument("subset_sup: outer exponent length differs from the outer axis");
        }
        for (double w : opt.weights) {
            if (!(w > 0) || !std::isfinite(w)) throw InvalidArgument("subset_sup: weights must be positive");
        }
        for (double x : opt.outer_exponents) {
            if (!(x > 0) || !std::isfinite(x)) throw InvalidArgument("subset_sup: outer exponents must be positive");
        }
        exps = opt.outer_exponents;
        cols.assign(count, std::vector<Complex>(outer));
        for (std::size_t i = 0; i < count; ++i) {
            const double w = opt.weights.empty() ? 1.0 : opt.weights[i];
            for (std::size_t o = 0; o < outer; ++o) {
                const Complex e = by_cols ? m(o, i) : m(i, o);
                cols[i][o] = opt.weights.empty() ? e : e * w;
            }
        }
    }

    double term(std::size_t o, double mag) const { return exps.empty() ? mag : std::pow(mag, exps[o]); }

    double value(const std::vector<Complex>& partial) const {
        double acc = 0.0;
        for (std::size_t o = 0; o < outer; ++o) acc += term(o, std::abs(partial[o]));
        return acc;
    }

    double full_abs_bound() const {
        double acc = 0.0;
        for (std::size_t o = 0; o < outer; ++o) {
            double s = 0.0;
            for (std::size_t i = 0; i < count; ++i) s += std::abs(cols[i][o]);
            acc += term(o, s);
        }
        return acc;
    }
};

class BranchAndBound {
public:
    explicit BranchAndBound(const SubsetProblem& p) : p_(p), suffix_(p.count + 1, std::vector<double>(p.outer, 0.0)) {
        for (std::size_t i = p.count; i-- > 0;) {
            for (std::size_t o = 0; o < p.outer; ++o) suffix_[i][o] = suffix_[i + 1][o] + std::abs(p.cols[i][o]);
        }
        stack_.assign(p.count + 1, std::vector<Complex>(p.outer, Complex{}));
        chosen_.reserve(p.count);
    }

    SubsetSupResult solve() {
        best_ = 0.0;
        best_set_.clear();
        descend(0);
        return {best_, best_, true, best_set_};
    }

private:
    void descend(std::size_t i) {
        std::vector<Complex>& partial = stack_[i];
        if (i == p_.count) {
            const double v = p_.value(partial);
            if (v > best_) {
                best_ = v;
                best_set_ = chosen_;
            }
            return;
        }
        double bound = 0.0;
        for (std::size_t o = 0; o < p_.outer; ++o) bound += p_.term(o, std::abs(partial[o]) + suffix_[i][o]);
        if (bound * (1.0 + 1e-12) < best_) return;

        std::vector<Complex>& next = stack_[i + 1];
        for (std::size_t o = 0; o < p_.outer; ++o) next[o] = partial[o] + p_.cols[i][o];
        chosen_.push_back(i);
        descend(i + 1);
        chosen_.pop_back();

        for (std::size_t o = 0; o < p_.outer; ++o) next[o] = partial[o];
        descend(i + 1);
    }

    const SubsetProblem& p_;
    std::vector<std::vector<double>> suffix_;
    std::vector<std::vector<Complex>> stack_;
    std::vector<std::size_t> chosen_;
    std::vector<std::size_t> best_set_;
    double best_ = 0.0;
};

/// Single-flip local search from `in`; returns the value reached.
inline double local_search(const SubsetProblem& p, std::vector<char>& in) {
    std::vector<Complex> partial(p.outer, Complex{});
    for (std::size_t i = 0; i < p.count; ++i) {
        if (in[i]) {
            for (std::size_t o = 0; o < p.outer; ++o) partial[o] += p.cols[i][o];
        }
    }
    double cur = p.value(partial);
    std::vector<Complex> trial(p.outer);
    for (int pass = 0; pass < 64; ++pass) {
        bool improved = false;
        for (std::size_t i = 0; i < p.count; ++i) {
            const double sgn = in[i] ? -1.0 : 1.0;
            for (std::size_t o = 0; o < p.outer; ++o) trial[o] = partial[o] + sgn * p.cols[i][o];
            const double v = p.value(trial);
            if (v > cur * (1.0 + 1e-14)) {
                partial.swap(trial);
                in[i] = !in[i];
                cur = v;
                improved = true;
            }
        }
        if (!improved) break;
    }
    return cur;
}

}  // namespace detail

/// Exact maximum; throws when the subset axis exceeds kExactLimit.
inline SubsetSupResult subset_sup_exact(const Matrix& m, const SubsetSupOptions& opt = {}) {
    const detail::SubsetProblem p(m, opt);
    if (p.count > kExactLimit) {
        throw InvalidArgument("subset_sup: exact mode supports at most 20 subset indices, got " + std::to_string(p.count));
    }
    return detail::BranchAndBound(p).solve();
}

/// Bracket: lower from sign-pattern starts refined by local search, upper = full absolute sum.
inline SubsetSupResult subset_sup_bound(const Matrix& m, const SubsetSupOptions& opt = {}) {
    const detail::SubsetProblem p(m, opt);
    SubsetSupResult res;
    res.upper = p.full_abs_bound();

    std::vector<std::vector<char>> starts;
    starts.emplace_back(p.count, 1);
    CounterRng rng(0x5eedULL);
    for (int t = 0; t < 8; ++t) {
        std::vector<Complex> phase(p.outer);
        for (auto& ph : phase) ph = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
        std::vector<char> in(p.count, 0);
        for (std::size_t i = 0; i < p.count; ++i) {
            double proj = 0.0;
            for (std::size_t o = 0; o < p.outer; ++o) proj += (std::conj(phase[o]) * p.cols[i][o]).real();
            in[i] = proj > 0 ? 1 : 0;
        }
        starts.push_back(std::move(in));
    }
    for (auto& in : starts) {
        const double v = detail::local_search(p, in);
        if (v > res.lower) {
            res.lower = v;
            res.subset.clear();
            for (std::size_t i = 0; i < p.count; ++i) {
                if (in[i]) res.subset.push_back(i);
            }
        }
    }
    res.lower = std::min(res.lower, res.upper);
    return res;
}

/// Exact when the subset axis fits the exact solver, bracketed otherwise.
inline SubsetSupResult subset_sup(const Matrix& m, const SubsetSupOptions& opt = {}) {
    const std::size_t count = opt.axis == Axis::columns ? m.cols() : m.rows();
    return count <= kExactLimit ? subset_sup_exact(m, opt) : subset_sup_bound(m, opt);
}

inline SubsetSupResult subset_sup(const TriangleKernel& k, const SubsetSupOptions& opt = {}) {
    return subset_sup(k.matrix(), opt);
}

/// max over subsets K of |sum_{v in K} v|. The optimum is the set of vectors in an
/// open half-plane, i.e. an angular arc of span below pi.
inline double max_subset_abs_sum(std::span<const Complex> z) {
    bool real = true;
    for (auto v : z) real = real && v.imag() == 0.0;
    if (real) {
        double pos = 0.0, neg = 0.0;
        for (auto v : z) (v.real() > 0 ? pos : neg) += std::abs(v.real());
        return std::max(pos, neg);
    }
    std::vector<std::pair<double, Complex>> pts;
    for (auto v : z) {
        if (v != Complex{}) pts.emplace_back(std::arg(v), v);
    }
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    const std::size_t m = pts.size();
    double best = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        Complex acc{};
        for (std::size_t step = 0; step < m; ++step) {
            const std::size_t j = (i + step) % m;
            double diff = pts[j].first - pts[i].first;
            if (diff < 0) diff += 2.0 * std::numbers::pi;
            if (diff >= std::numbers::pi) break;
            acc += pts[j].second;
            best = std::max(best, std::abs(acc));
        }
    }
    return best;
}

/// sup over row subsets K, sup over columns k of |sum_{n in K} m_nk|^{x_k}.
inline double subset_sup_columnwise_max(const Matrix& m, std::span<const double> exps = {}) {
    if (!exps.empty() && exps.size() != m.cols()) throw InvalidArgument("subset_sup: exponent length differs from column count");
    double best = 0.0;
    std::vector<Complex> col(m.rows());
    for (std::size_t k = 0; k < m.cols(); ++k) {
        for (std::size_t n = 0; n < m.rows(); ++n) col[n] = m(n, k);
        const double s = max_subset_abs_sum(col);
        best = std::max(best, exps.empty() ? s : std::pow(s, exps[k]));
    }
    return best;
}

}  // namespace seqcore
