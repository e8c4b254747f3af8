#pragma once

// Truncation-ladder verdicts. A condition on an infinite matrix or sequence is
// probed at a ladder of truncations N (and, for quantified conditions, at a
// ladder of witness integers). The verdict is a heuristic read of the trend:
//
//   bounded: holds when the last two estimates agree to `stabilization_rel`,
//            fails when log(value) grows faster than N^growth_threshold;
//   limit:   the estimate is the tail-window deviation from the target;
//            holds when it is numerically zero or decays, fails when it stays
//            above `fail_tol` without decaying.
//
// Anything else is inconclusive. None of this decides membership in the
// infinite-dimensional space; it reports evidence at finite truncation.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "seqcore/types.hpp"

namespace seqcore {

enum class Verdict { holds, fails, inconclusive };

inline std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::holds: return "holds";
        case Verdict::fails: return "fails";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

/// fails dominates inconclusive, which dominates holds.
inline Verdict aggregate(std::span<const Verdict> vs) {
    bool inconclusive = false;
    for (auto v : vs) {
        if (v == Verdict::fails) return Verdict::fails;
        if (v == Verdict::inconclusive) inconclusive = true;
    }
    return inconclusive ? Verdict::inconclusive : Verdict::holds;
}

enum class ConditionKind { bounded, limit };
enum class Quantifier { none, exists, forall, forall_exists };

inline std::string_view to_string(ConditionKind k) { return k == ConditionKind::bounded ? "bounded" : "limit"; }

inline std::string_view to_string(Quantifier q) {
    switch (q) {
        case Quantifier::none: return "none";
        case Quantifier::exists: return "exists";
        case Quantifier::forall: return "forall";
        case Quantifier::forall_exists: return "forall_exists";
    }
    return "?";
}

struct VerdictPolicy {
    double stabilization_rel = 0.01;
    double stabilization_abs = 1e-12;
    double growth_threshold = 0.05;
    double zero_tol = 1e-8;
    double fail_tol = 1e-6;
    double decay_threshold = -0.05;
    double window_fraction = 0.25;
    std::vector<double> quantifier_ladder{2, 4, 16, 256};

    /// First row of the tail window [n0, N).
    std::size_t window_start(std::size_t n) const {
        auto n0 = static_cast<std::size_t>(std::floor(window_fraction * static_cast<double>(n)));
        return std::min(n0, n == 0 ? 0 : n - 1);
    }

    void validate() const {
        if (!(stabilization_rel > 0) || !(growth_threshold > 0) || !(zero_tol >= 0) || !(fail_tol >= zero_tol)) {
            throw InvalidArgument("VerdictPolicy: thresholds must be positive with fail_tol >= zero_tol");
        }
        if (!(window_fraction >= 0 && window_fraction < 1)) throw InvalidArgument("VerdictPolicy: window_fraction must lie in [0, 1)");
        if (quantifier_ladder.empty()) throw InvalidArgument("VerdictPolicy: empty quantifier ladder");
        for (double b : quantifier_ladder) {
            if (!(b >= 2) || b != std::floor(b)) throw InvalidArgument("VerdictPolicy: quantifier ladder entries must be integers >= 2");
        }
    }
};

/// Quantified witness values. `outer` is B or L, `inner` is M.
struct Witness {
    std::optional<double> outer;
    std::optional<double> inner;
};

struct Estimate {
    std::size_t n = 0;                  // truncation
    std::string witness;                // "", "B=4", "L=2,M=16"
    double value = 0.0;                 // bounded: upper estimate; limit: deviation from target
    std::optional<double> lower;        // lower estimate when value is only an upper bound
    std::optional<double> observed;     // limit conditions: quantity at the last row
};

struct ProbeValue {
    double value = 0.0;
    std::optional<double> lower;
    std::optional<double> observed;
};

using Probe = std::function<ProbeValue(std::size_t n, const Witness& w)>;

struct ConditionSpec {
    std::string id;
    std::string anchor;      // formula text
    ConditionKind kind = ConditionKind::bounded;
    Quantifier quantifier = Quantifier::none;
};

struct ConditionVerdict {
    std::string id;
    std::string anchor;
    ConditionKind kind = ConditionKind::bounded;
    Quantifier quantifier = Quantifier::none;
    Verdict verdict = Verdict::inconclusive;
    bool tested_ladder_only = false;
    double growth_exponent = 0.0;
    std::string decided_by;             // witness of the deciding series
    std::vector<Estimate> estimates;
    std::string fitted_name;            // "beta_k", "beta" or empty
    std::vector<Complex> fitted;
    std::string note;

    std::string verdict_label() const {
        std::string s(to_string(verdict));
        if (verdict == Verdict::holds && tested_ladder_only) s += " (tested ladder)";
        return s;
    }
};

namespace detail {

inline std::string witness_label(const Witness& w, Quantifier q) {
    auto fmt = [](double v) { return std::to_string(static_cast<long long>(v)); };
    switch (q) {
        case Quantifier::none: return "";
        case Quantifier::exists:
        case Quantifier::forall: return "B=" + fmt(*w.outer);
        case Quantifier::forall_exists: return "L=" + fmt(*w.outer) + ",M=" + fmt(*w.inner);
    }
    return "";
}

}  // namespace detail

/// Least-squares slope of log(max(v, floor)) against log N.
inline double log_log_slope(std::span<const std::size_t> ns, std::span<const double> vs, double floor) {
    if (ns.size() < 2) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(ns.size());
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const double x = std::log(static_cast<double>(ns[i]));
        const double y = std::log(std::max(vs[i], floor));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double den = m * sxx - sx * sx;
    if (den == 0.0) return 0.0;
    return (m * sxy - sx * sy) / den;
}

struct SeriesVerdict {
    Verdict verdict = Verdict::inconclusive;
    double slope = 0.0;
};

/// Verdict of one estimate series (fixed witness) ordered by truncation.
inline SeriesVerdict series_verdict(ConditionKind kind, std::span<const Estimate> est, const VerdictPolicy& pol) {
    SeriesVerdict out;
    if (est.empty()) return out;
    std::vector<std::size_t> ns;
    std::vector<double> vs;
    for (const auto& e : est) {
        if (!std::isfinite(e.value) || (e.lower && !std::isfinite(*e.lower))) {
            out.verdict = Verdict::fails;
            out.slope = std::numeric_limits<double>::infinity();
            return out;
        }
        ns.push_back(e.n);
        vs.push_back(kind == ConditionKind::bounded ? e.lower.value_or(e.value) : e.value);
    }
    if (kind == ConditionKind::bounded) {
        out.slope = log_log_slope(ns, vs, pol.stabilization_abs);
        bool stable = false;
        if (est.size() >= 2) {
            const double a = est[est.size() - 2].value;
            const double b = est.back().value;
            const double scale = std::max(std::abs(a), std::abs(b));
            stable = (std::abs(a) <= pol.stabilization_abs && std::abs(b) <= pol.stabilization_abs) ||
                     std::abs(a - b) <= pol.stabilization_rel * scale;
        }
        if (stable) {
            out.verdict = Verdict::holds;
        } else if (out.slope > pol.growth_threshold) {
            out.verdict = Verdict::fails;
        }
        return out;
    }
    out.slope = log_log_slope(ns, vs, std::max(pol.zero_tol * 1e-4, 1e-300));
    const double last = vs.back();
    bool non_increasing = true;
    for (std::size_t i = 1; i < vs.size(); ++i) non_increasing = non_increasing && vs[i] <= vs[i - 1] * (1 + 1e-12);
    if (last <= pol.zero_tol) {
        out.verdict = Verdict::holds;
    } else if (vs.size() >= 2 && out.slope < pol.decay_threshold && non_increasing) {
        out.verdict = Verdict::holds;
    } else if (last > pol.fail_tol && out.slope >= pol.decay_threshold) {
        out.verdict = Verdict::fails;
    }
    return out;
}

namespace detail {

struct WitnessOutcome {
    Witness witness;
    SeriesVerdict result;
};

inline WitnessOutcome run_series(const ConditionSpec& spec, std::span<const std::size_t> ladder, const Probe& probe,
                                 const Witness& w, const VerdictPolicy& pol, std::vector<Estimate>& sink) {
    const std::size_t start = sink.size();
    for (std::size_t n : ladder) {
        const ProbeValue pv = probe(n, w);
        sink.push_back(Estimate{n, witness_label(w, spec.quantifier), pv.value, pv.lower, pv.observed});
    }
    const std::span<const Estimate> series(sink.data() + start, sink.size() - start);
    return {w, series_verdict(spec.kind, series, pol)};
}

/// exists: first holding witness decides; otherwise fails only if every witness fails.
inline WitnessOutcome combine_exists(const std::vector<WitnessOutcome>& outs) {
    for (const auto& o : outs) {
        if (o.result.verdict == Verdict::holds) return o;
    }
    const bool all_fail = std::all_of(outs.begin(), outs.end(), [](const auto& o) { return o.result.verdict == Verdict::fails; });
    WitnessOutcome best = outs.front();
    for (const auto& o : outs) {
        if (o.result.slope < best.result.slope) best = o;
    }
    best.result.verdict = all_fail ? Verdict::fails : Verdict::inconclusive;
    return best;
}

}  // namespace detail

/// Probes `spec` along the truncation ladder and the quantifier ladder of `pol`.
inline ConditionVerdict evaluate_condition(const ConditionSpec& spec, std::span<const std::size_t> ladder,
                                           const Probe& probe, const VerdictPolicy& pol) {
    if (ladder.empty()) throw InvalidArgument(spec.id + ": empty truncation ladder");
    for (std::size_t i = 1; i < ladder.size(); ++i) {
        if (ladder[i] <= ladder[i - 1]) throw InvalidArgument(spec.id + ": truncation ladder must be increasing");
    }
    ConditionVerdict cv;
    cv.id = spec.id;
    cv.anchor = spec.anchor;
    cv.kind = spec.kind;
    cv.quantifier = spec.quantifier;

    detail::WitnessOutcome decided;
    const auto& qs = pol.quantifier_ladder;
    switch (spec.quantifier) {
        case Quantifier::none:
            decided = detail::run_series(spec, ladder, probe, Witness{}, pol, cv.estimates);
            break;
        case Quantifier::exists: {
            std::vector<detail::WitnessOutcome> outs;
            for (double b : qs) {
                outs.push_back(detail::run_series(spec, ladder, probe, Witness{b, std::nullopt}, pol, cv.estimates));
                if (outs.back().result.verdict == Verdict::holds) break;
            }
            decided = detail::combine_exists(outs);
            break;
        }
        case Quantifier::forall: {
            bool any_inconclusive = false;
            std::optional<detail::WitnessOutcome> worst;
            for (double b : qs) {
                auto o = detail::run_series(spec, ladder, probe, Witness{b, std::nullopt}, pol, cv.estimates);
                if (o.result.verdict == Verdict::fails) {
                    worst = o;
                    break;
                }
                if (o.result.verdict == Verdict::inconclusive) any_inconclusive = true;
                if (!worst || o.result.slope > worst->result.slope) worst = o;
            }
            decided = *worst;
            if (decided.result.verdict != Verdict::fails) {
                decided.result.verdict = any_inconclusive ? Verdict::inconclusive : Verdict::holds;
            }
            cv.tested_ladder_only = true;
            break;
        }
        case Quantifier::forall_exists: {
            bool any_inconclusive = false;
            std::optional<detail::WitnessOutcome> worst;
            for (double l : qs) {
                std::vector<detail::WitnessOutcome> outs;
                for (double m : qs) {
                    outs.push_back(detail::run_series(spec, ladder, probe, Witness{l, m}, pol, cv.estimates));
                    if (outs.back().result.verdict == Verdict::holds) break;
                }
                auto o = detail::combine_exists(outs);
                if (o.result.verdict == Verdict::fails) {
                    worst = o;
                    break;
                }
                if (o.result.verdict == Verdict::inconclusive) any_inconclusive = true;
                if (!worst || o.result.slope > worst->result.slope) worst = o;
            }
            decided = *worst;
            if (decided.result.verdict != Verdict::fails) {
                decided.result.verdict = any_inconclusive ? Verdict::inconclusive : Verdict::holds;
            }
            cv.tested_ladder_only = true;
            break;
        }
    }
    cv.verdict = decided.result.verdict;
    cv.growth_exponent = decided.result.slope;
    cv.decided_by = detail::witness_label(decided.witness, spec.quantifier);
    return cv;
}

}  // namespace seqcore
