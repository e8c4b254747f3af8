#pragma once

// Alpha-, beta- and gamma-duals of the transformed spaces through the companion
// matrices of a sequence a:
//
//   C[n][k] = V[n][k] a_n                 (C y)_n = a_n x_n
//   D[n][k] = sum_{j=k..n} V[j][k] a_j    (D y)_n = sum_{k<=n} a_k x_k
//
// where x = V y. Each dual is an intersection of sets S1..S16; each set is a
// boundedness or limit condition on C or D probed along a truncation ladder.
// The alpha-dual sets (S1, S2, S8, S12, S13) act on C, all others on D.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "seqcore/band_ops.hpp"
#include "seqcore/reductions.hpp"
#include "seqcore/subset_sup.hpp"
#include "seqcore/types.hpp"
#include "seqcore/verdict.hpp"

namespace seqcore {

enum class SpaceId { s0, sc, sinf, lp };
enum class DualKind { alpha, beta, gamma };
enum class ExponentRegime { any, at_most_one, above_one };

inline std::string_view to_string(SpaceId s) {
    switch (s) {
        case SpaceId::s0: return "s0";
        case SpaceId::sc: return "sc";
        case SpaceId::sinf: return "sinf";
        case SpaceId::lp: return "lp";
    }
    return "?";
}

inline std::string_view to_string(DualKind d) {
    switch (d) {
        case DualKind::alpha: return "alpha";
        case DualKind::beta: return "beta";
        case DualKind::gamma: return "gamma";
    }
    return "?";
}

inline std::string_view to_string(ExponentRegime r) {
    switch (r) {
        case ExponentRegime::any: return "any";
        case ExponentRegime::at_most_one: return "p_le_1";
        case ExponentRegime::above_one: return "p_gt_1";
    }
    return "?";
}

inline SpaceId parse_space(std::string_view s) {
    for (auto v : {SpaceId::s0, SpaceId::sc, SpaceId::sinf, SpaceId::lp}) {
        if (to_string(v) == s) return v;
    }
    throw InvalidArgument("unknown space '" + std::string(s) + "' (expected s0, sc, sinf or lp)");
}

inline DualKind parse_dual(std::string_view s) {
    for (auto v : {DualKind::alpha, DualKind::beta, DualKind::gamma}) {
        if (to_string(v) == s) return v;
    }
    throw InvalidArgument("unknown dual '" + std::string(s) + "' (expected alpha, beta or gamma)");
}

inline TriangleKernel companion_C(const FiniteSeq& a, const BandSystem& sys, std::size_t n) {
    if (a.size() < n) throw InvalidArgument("companion_C: sequence a shorter than truncation");
    TriangleKernel v = inverse_kernel(sys, n);
    Matrix c = v.matrix();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k <= i; ++k) c(i, k) *= a[i];
    }
    return TriangleKernel(std::move(c));
}

inline TriangleKernel companion_D(const FiniteSeq& a, const BandSystem& sys, std::size_t n) {
    const TriangleKernel c = companion_C(a, sys, n);
    Matrix d(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        Complex acc{};
        for (std::size_t i = k; i < n; ++i) {
            acc += c(i, k);
            d(i, k) = acc;
        }
    }
    return TriangleKernel(std::move(d));
}

struct DualRule {
    SpaceId space;
    DualKind dual;
    ExponentRegime regime;
    std::vector<std::string> sets;
};

class DualRuleTable {
public:
    static const DualRuleTable& standard() {
        static const DualRuleTable t{{
            {SpaceId::s0, DualKind::alpha, ExponentRegime::any, {"S1"}},
            {SpaceId::s0, DualKind::beta, ExponentRegime::any, {"S3", "S4", "S5"}},
            {SpaceId::s0, DualKind::gamma, ExponentRegime::any, {"S3"}},
            {SpaceId::sc, DualKind::alpha, ExponentRegime::any, {"S1", "S2"}},
            {SpaceId::sc, DualKind::beta, ExponentRegime::any, {"S3", "S4", "S5", "S6"}},
            {SpaceId::sc, DualKind::gamma, ExponentRegime::any, {"S3", "S7"}},
            {SpaceId::sinf, DualKind::alpha, ExponentRegime::any, {"S8"}},
            {SpaceId::sinf, DualKind::beta, ExponentRegime::any, {"S9", "S10"}},
            {SpaceId::sinf, DualKind::gamma, ExponentRegime::any, {"S11"}},
            {SpaceId::lp, DualKind::alpha, ExponentRegime::at_most_one, {"S12"}},
            {SpaceId::lp, DualKind::alpha, ExponentRegime::above_one, {"S13"}},
            {SpaceId::lp, DualKind::beta, ExponentRegime::any, {"S14", "S15", "S16"}},
            {SpaceId::lp, DualKind::gamma, ExponentRegime::at_most_one, {"S15"}},
            {SpaceId::lp, DualKind::gamma, ExponentRegime::above_one, {"S14"}},
        }};
        return t;
    }

    std::span<const DualRule> rules() const noexcept { return rules_; }

    /// Regime selected by p; a rule split by regime needs p entirely on one side of 1.
    ExponentRegime regime_for(SpaceId space, DualKind dual, const ExponentSeq& p, std::size_t n) const {
        bool split = false;
        for (const auto& r : rules_) split = split || (r.space == space && r.dual == dual && r.regime != ExponentRegime::any);
        if (!split) return ExponentRegime::any;
        bool small = true, large = true;
        for (std::size_t k = 0; k < n; ++k) {
            small = small && p[k] <= 1.0;
            large = large && p[k] > 1.0;
        }
        if (small) return ExponentRegime::at_most_one;
        if (large) return ExponentRegime::above_one;
        throw InvalidArgument("dual_report: exponents straddle 1; the dual is characterized only for 0<p_k<=1 or 1<p_k<=H");
    }

    const DualRule& lookup(SpaceId space, DualKind dual, ExponentRegime regime) const {
        for (const auto& r : rules_) {
            if (r.space == space && r.dual == dual && r.regime == regime) return r;
        }
        throw InvalidArgument("DualRuleTable: no rule for " + std::string(to_string(space)) + "/" + std::string(to_string(dual)));
    }

private:
    explicit DualRuleTable(std::vector<DualRule> rules) : rules_(std::move(rules)) {}
    std::vector<DualRule> rules_;
};

struct DualSetInfo {
    std::string id;
    std::string formula;
    ConditionKind kind;
    Quantifier quantifier;
    bool needs_conjugate;
};

inline const std::vector<DualSetInfo>& dual_set_catalog() {
    using CK = ConditionKind;
    using Q = Quantifier;
    static const std::vector<DualSetInfo> cat{
        {"S1", "exists B: sup_K sum_n |sum_{k in K, k<=n} c_nk B^(-1/p_k)| < inf", CK::bounded, Q::exists, false},
        {"S2", "sum_n |sum_{k<=n} c_nk| < inf", CK::bounded, Q::none, false},
        {"S3", "exists B: sup_n sum_{k<=n} |d_nk| B^(-1/p_k) < inf", CK::bounded, Q::exists, false},
        {"S4", "lim_n d_nk exists for every k", CK::limit, Q::none, false},
        {"S5", "exists B, beta_k: sup_n sum_{k<=n} |d_nk - beta_k| B^(-1/p_k) < inf", CK::bounded, Q::exists, false},
        {"S6", "exists beta: lim_n |sum_{k<=n} d_nk - beta| = 0", CK::limit, Q::none, false},
        {"S7", "sup_n |sum_{k<=n} d_nk| < inf", CK::bounded, Q::none, false},
        {"S8", "forall B: sup_K sum_n |sum_{k in K, k<=n} c_nk B^(1/p_k)| < inf", CK::bounded, Q::forall, false},
        {"S9", "forall B: sup_n sum_{k<=n} |d_nk| B^(1/p_k) < inf", CK::bounded, Q::forall, false},
        {"S10", "forall B, exists beta_k: lim_n sum_{k<=n} |d_nk - beta_k| B^(1/p_k) = 0", CK::limit, Q::forall, false},
        {"S11", "forall B: sup_n sum_{k<=n} |d_nk| B^(1/p_k) < inf", CK::bounded, Q::forall, false},
        {"S12", "sup_K sup_k |sum_{n in K} c_nk|^(p_k) < inf", CK::bounded, Q::none, false},
        {"S13", "exists B: sup_K sum_k |sum_{n in K} c_nk B^(-1)|^(p'_k) < inf", CK::bounded, Q::exists, true},
        {"S14", "exists B: sup_n sum_{k<=n} |d_nk B^(-1)|^(p'_k) < inf", CK::bounded, Q::exists, true},
        {"S15", "sup_{n,k} |d_nk|^(p_k) < inf", CK::bounded, Q::none, false},
        {"S16", "lim_n d_nk exists for every k", CK::limit, Q::none, false},
    };
    return cat;
}

inline const DualSetInfo& dual_set_info(std::string_view id) {
    for (const auto& s : dual_set_catalog()) {
        if (s.id == id) return s;
    }
    throw InvalidArgument("unknown dual set '" + std::string(id) + "'");
}

struct DualReport {
    SpaceId space = SpaceId::s0;
    DualKind dual = DualKind::alpha;
    ExponentRegime regime = ExponentRegime::any;
    std::vector<std::size_t> ladder;
    std::vector<ConditionVerdict> conditions;
    Verdict aggregate = Verdict::inconclusive;
};

namespace detail {

inline Matrix leading_block(const Matrix& m, std::size_t n) {
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k <= i && k < n; ++k) out(i, k) = m(i, k);
    }
    return out;
}

/// Probes for one S-set over the companion matrices at the largest truncation.
class DualProbes {
public:
    DualProbes(const Matrix& c, const Matrix& d, const ExponentSeq& p, const VerdictPolicy& pol)
        : c_(c), d_(d), p_(p), pol_(pol), nmax_(c.rows()) {
        beta_k_.assign(d_.row(nmax_ - 1).begin(), d_.row(nmax_ - 1).end());
        beta_ = reduce::row_sum(d_, nmax_ - 1, true);
    }

    const std::vector<Complex>& beta_k() const { return beta_k_; }
    Complex beta() const { return beta_; }

    Probe make(std::string_view id) const {
        auto weights = [this](double base, double sign) { return reduce::exponent_weights(p_, nmax_, base, sign); };
        auto bounded = [](double v) { return ProbeValue{v, std::nullopt, std::nullopt}; };
        auto from_subset = [](const SubsetSupResult& r) {
            return r.exact ? ProbeValue{r.upper, std::nullopt, std::nullopt} : ProbeValue{r.upper, r.lower, std::nullopt};
        };
        auto sup_rows_d = [this](std::size_t n, std::span<const double> w, std::span<const Complex> beta) {
            return reduce::max_over_rows(0, n, [&](std::size_t i) { return reduce::row_abs(d_, i, w, beta, true); });
        };

        if (id == "S1" || id == "S8") {
            const double sign = id == "S1" ? -1.0 : 1.0;
            return [=, this](std::size_t n, const Witness& w) {
                const auto wt = weights(*w.outer, sign);
                SubsetSupOptions opt{Axis::columns, std::vector<double>(wt.begin(), wt.begin() + static_cast<std::ptrdiff_t>(n)), {}};
                return from_subset(subset_sup(leading_block(c_, n), opt));
            };
        }
        if (id == "S2") {
            return [=, this](std::size_t n, const Witness&) {
                double acc = 0.0;
                for (std::size_t i = 0; i < n; ++i) acc += std::abs(reduce::row_sum(c_, i, true));
                return bounded(acc);
            };
        }
        if (id == "S3") {
            return [=](std::size_t n, const Witness& w) { return bounded(sup_rows_d(n, weights(*w.outer, -1.0), {})); };
        }
        if (id == "S9" || id == "S11") {
            return [=](std::size_t n, const Witness& w) { return bounded(sup_rows_d(n, weights(*w.outer, 1.0), {})); };
        }
        if (id == "S5") {
            return [=, this](std::size_t n, const Witness& w) {
                return bounded(sup_rows_d(n, weights(*w.outer, -1.0), beta_k_));
            };
        }
        if (id == "S4" || id == "S16") {
            return [=, this](std::size_t n, const Witness&) {
                const double dev = reduce::column_window_deviation(pol_.window_start(n), n, [&](std::size_t i, std::size_t k) {
                    return std::abs(d_(i, k) - beta_k_[k]);
                });
                return ProbeValue{dev, std::nullopt, std::nullopt};
            };
        }
        if (id == "S6") {
            return [=, this](std::size_t n, const Witness&) {
                const double dev = reduce::max_over_rows(pol_.window_start(n), n, [&](std::size_t i) {
                    return std::abs(reduce::row_sum(d_, i, true) - beta_);
                });
                return ProbeValue{dev, std::nullopt, std::abs(reduce::row_sum(d_, n - 1, true))};
            };
        }
        if (id == "S7") {
            return [=, this](std::size_t n, const Witness&) {
                return bounded(reduce::max_over_rows(0, n, [&](std::size_t i) { return std::abs(reduce::row_sum(d_, i, true)); }));
            };
        }
        if (id == "S10") {
            return [=, this](std::size_t n, const Witness& w) {
                const auto wt = weights(*w.outer, 1.0);
                const double dev = reduce::max_over_rows(pol_.window_start(n), n, [&](std::size_t i) {
                    return reduce::row_abs(d_, i, wt, beta_k_, true);
                });
                return ProbeValue{dev, std::nullopt, std::nullopt};
            };
        }
        if (id == "S12") {
            return [=, this](std::size_t n, const Witness&) {
                std::vector<double> ex(p_.values().begin(), p_.values().begin() + static_cast<std::ptrdiff_t>(n));
                return bounded(subset_sup_columnwise_max(leading_block(c_, n), ex));
            };
        }
        if (id == "S13") {
            return [=, this](std::size_t n, const Witness& w) {
                std::vector<double> ex(n);
                for (std::size_t k = 0; k < n; ++k) ex[k] = p_.conjugate(k);
                SubsetSupOptions opt{Axis::rows, std::vector<double>(n, 1.0 / *w.outer), std::move(ex)};
                return from_subset(subset_sup(leading_block(c_, n), opt));
            };
        }
        if (id == "S14") {
            return [=, this](std::size_t n, const Witness& w) {
                const double b = *w.outer;
                return bounded(reduce::max_over_rows(0, n, [&](std::size_t i) {
                    double acc = 0.0;
                    for (std::size_t k = 0; k <= i; ++k) acc += std::pow(std::abs(d_(i, k)) / b, p_.conjugate(k));
                    return acc;
                }));
            };
        }
        if (id == "S15") {
            return [=, this](std::size_t n, const Witness&) {
                return bounded(reduce::max_over_rows(0, n, [&](std::size_t i) {
                    double m = 0.0;
                    for (std::size_t k = 0; k <= i; ++k) m = std::max(m, std::pow(std::abs(d_(i, k)), p_[k]));
                    return m;
                }));
            };
        }
        throw InvalidArgument("unknown dual set '" + std::string(id) + "'");
    }

private:
    const Matrix& c_;
    const Matrix& d_;
    const ExponentSeq& p_;
    const VerdictPolicy& pol_;
    std::size_t nmax_;
    std::vector<Complex> beta_k_;
    Complex beta_;
};

}  // namespace detail

namespace detail {

inline void require_conjugate(std::string_view id, const ExponentSeq& p, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
        if (p[k] <= 1.0) {
            throw InvalidArgument(std::string(id) + " uses the conjugate exponent and needs p_k > 1, but p_" +
                                  std::to_string(k) + " <= 1");
        }
    }
}

inline ConditionVerdict run_dual_set(std::string_view id, const DualProbes& probes, std::span<const std::size_t> ladder,
                                     const VerdictPolicy& pol) {
    const DualSetInfo& info = dual_set_info(id);
    ConditionVerdict cv = evaluate_condition({info.id, info.formula, info.kind, info.quantifier}, ladder, probes.make(id), pol);
    if (id == "S4" || id == "S5" || id == "S10" || id == "S16") {
        cv.fitted_name = "beta_k";
        cv.fitted = probes.beta_k();
    } else if (id == "S6") {
        cv.fitted_name = "beta";
        cv.fitted = {probes.beta()};
    }
    return cv;
}

inline void check_dual_inputs(const FiniteSeq& a, const BandSystem& sys, const ExponentSeq& p,
                              std::span<const std::size_t> ladder, const VerdictPolicy& pol) {
    if (ladder.empty()) throw InvalidArgument("dual_report: empty ladder");
    for (std::size_t i = 1; i < ladder.size(); ++i) {
        if (ladder[i] <= ladder[i - 1]) throw InvalidArgument("dual_report: ladder must be increasing");
    }
    pol.validate();
    const std::size_t nmax = ladder.back();
    if (a.size() < nmax) throw InvalidArgument("dual_report: sequence a shorter than the largest truncation");
    sys.require_length(nmax, "dual_report");
    p.require_length(nmax, "dual_report");
}

}  // namespace detail

/// Evaluates one S-set for the sequence a.
inline ConditionVerdict dual_condition(std::string_view id, const FiniteSeq& a, const BandSystem& sys,
                                       const ExponentSeq& p, std::span<const std::size_t> ladder,
                                       const VerdictPolicy& pol = {}) {
    detail::check_dual_inputs(a, sys, p, ladder, pol);
    const std::size_t nmax = ladder.back();
    if (dual_set_info(id).needs_conjugate) detail::require_conjugate(id, p, nmax);
    const TriangleKernel c = companion_C(a, sys, nmax);
    const TriangleKernel d = companion_D(a, sys, nmax);
    const detail::DualProbes probes(c.matrix(), d.matrix(), p, pol);
    return detail::run_dual_set(id, probes, ladder, pol);
}

/// Evaluates every S-set the rule table requires for (space, dual). Verdicts are
/// truncation-ladder evidence, not membership decisions.
inline DualReport dual_report(const FiniteSeq& a, const BandSystem& sys, const ExponentSeq& p, SpaceId space,
                              DualKind dual, std::span<const std::size_t> ladder, const VerdictPolicy& pol = {}) {
    detail::check_dual_inputs(a, sys, p, ladder, pol);
    const std::size_t nmax = ladder.back();
    const auto& table = DualRuleTable::standard();
    DualReport rep;
    rep.space = space;
    rep.dual = dual;
    rep.regime = table.regime_for(space, dual, p, nmax);
    rep.ladder.assign(ladder.begin(), ladder.end());
    const DualRule& rule = table.lookup(space, dual, rep.regime);
    for (const auto& id : rule.sets) {
        if (dual_set_info(id).needs_conjugate) detail::require_conjugate(id, p, nmax);
    }

    const TriangleKernel c = companion_C(a, sys, nmax);
    const TriangleKernel d = companion_D(a, sys, nmax);
    const detail::DualProbes probes(c.matrix(), d.matrix(), p, pol);
    std::vector<Verdict> vs;
    for (const auto& id : rule.sets) {
        ConditionVerdict cv = detail::run_dual_set(id, probes, ladder, pol);
        vs.push_back(cv.verdict);
        rep.conditions.push_back(std::move(cv));
    }
    rep.aggregate = aggregate(vs);
    return rep;
}

}  // namespace seqcore
