#pragma once

// Natural density and A-density of index sets along a truncation ladder.
// delta_N(E) = #{k < N : k in E} / N; the A-density uses row N-1 of a
// nonnegative matrix A, delta_A(E) = lim_n sum_{k in E} a_nk, so that the
// Cesaro matrix reproduces the natural density.

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "seqcore/generators.hpp"
#include "seqcore/matrix_spec.hpp"
#include "seqcore/types.hpp"
#include "seqcore/verdict.hpp"

namespace seqcore {

struct IndexSet {
    std::string name;
    std::function<bool(std::size_t)> contains;
};

inline bool is_power_of_two(std::size_t k) { return k != 0 && (k & (k - 1)) == 0; }

inline IndexSet index_set(std::string_view name) {
    if (name == "evens") return {"evens", [](std::size_t k) { return k % 2 == 0; }};
    if (name == "odds") return {"odds", [](std::size_t k) { return k % 2 == 1; }};
    if (name == "squares") return {"squares", [](std::size_t k) { return is_perfect_square(k); }};
    if (name == "powers_of_2") return {"powers_of_2", [](std::size_t k) { return is_power_of_two(k); }};
    if (name == "empty") return {"empty", [](std::size_t) { return false; }};
    if (name == "all") return {"all", [](std::size_t) { return true; }};
    throw InvalidArgument("unknown index set '" + std::string(name) + "' (expected evens, odds, squares, powers_of_2, empty or all)");
}

struct DensityEstimate {
    std::string set;
    std::vector<std::size_t> ladder;
    std::vector<double> values;
    double limit_estimate = 0.0;  // value at the largest truncation
    double trend = 0.0;           // log-log slope of the values
};

namespace detail {

inline void require_increasing(std::span<const std::size_t> ladder, const char* who) {
    if (ladder.empty()) throw InvalidArgument(std::string(who) + ": empty ladder");
    if (ladder.front() == 0) throw InvalidArgument(std::string(who) + ": ladder entries must be positive");
    for (std::size_t i = 1; i < ladder.size(); ++i) {
        if (ladder[i] <= ladder[i - 1]) throw InvalidArgument(std::string(who) + ": ladder must be increasing");
    }
}

inline void finish(DensityEstimate& d) {
    d.limit_estimate = d.values.back();
    d.trend = log_log_slope(d.ladder, d.values, 1e-300);
}

}  // namespace detail

inline DensityEstimate natural_density(const IndexSet& e, std::span<const std::size_t> ladder) {
    detail::require_increasing(ladder, "natural_density");
    DensityEstimate d{e.name, {ladder.begin(), ladder.end()}, {}, 0.0, 0.0};
    std::size_t count = 0;
    std::size_t k = 0;
    for (std::size_t n : ladder) {
        for (; k < n; ++k) count += e.contains(k) ? 1 : 0;
        d.values.push_back(static_cast<double>(count) / static_cast<double>(n));
    }
    detail::finish(d);
    return d;
}

inline DensityEstimate a_density(const MatrixSpec& a, const IndexSet& e, std::span<const std::size_t> ladder) {
    detail::require_increasing(ladder, "a_density");
    DensityEstimate d{e.name, {ladder.begin(), ladder.end()}, {}, 0.0, 0.0};
    for (std::size_t n : ladder) {
        const auto row = a.row(n - 1, n);
        double acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (row[k].imag() != 0.0 || row[k].real() < 0.0) {
                throw InvalidArgument("a_density: matrix entry (" + std::to_string(n - 1) + "," + std::to_string(k) + ") is not a nonnegative real");
            }
            if (e.contains(k)) acc += row[k].real();
        }
        d.values.push_back(acc);
    }
    detail::finish(d);
    return d;
}

}  // namespace seqcore
