#pragma once

// Matrix classes into and out of the transformed spaces.
//
// For a matrix A acting on the transformed spaces the conditions act on
//   E[n][k] = sum_{j=k..N-1} a_nj V[j][k],   E^(n)[m][k] = sum_{j=k..m} a_nj V[j][k],
// with V the inverse kernel. For a matrix B mapping into the transformed space
// they act on btilde = T B, rows (r_n b_nk + s_{n-1} b_{n-1,k}) / alpha_n.
// A catalog entry fixes the formula, its quantifiers and the input it reads;
// class rules list the catalog entries a class requires. Verdicts are
// truncation-ladder evidence only.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "seqcore/band_ops.hpp"
#include "seqcore/density.hpp"
#include "seqcore/matrix_spec.hpp"
#include "seqcore/reductions.hpp"
#include "seqcore/subset_sup.hpp"
#include "seqcore/types.hpp"
#include "seqcore/verdict.hpp"

namespace seqcore {

inline bool same_system(const BandSystem& a, const BandSystem& b, std::size_t n) {
    if (a.size() < n || b.size() < n) return false;
    for (std::size_t k = 0; k < n; ++k) {
        if (a.r(k) != b.r(k) || a.s(k) != b.s(k) || a.alpha(k) != b.alpha(k)) return false;
    }
    return true;
}

/// btilde = T B for a dense block B.
inline Matrix btilde(const Matrix& b, const BandSystem& sys) {
    if (b.rows() == 0) throw InvalidArgument("btilde: empty matrix");
    sys.require_length(b.rows(), "btilde");
    Matrix out(b.rows(), b.cols());
    for (std::size_t n = 0; n < b.rows(); ++n) {
        for (std::size_t k = 0; k < b.cols(); ++k) {
            Complex v = sys.r(n) * b(n, k);
            if (n > 0) v += sys.s(n - 1) * b(n - 1, k);
            out(n, k) = v / sys.alpha(n);
        }
    }
    return out;
}

/// btilde of the leading N-block. A spec lifted through the same system maps back
/// to its inner matrix exactly.
inline Matrix btilde(const MatrixSpec& b, const BandSystem& sys, std::size_t n) {
    sys.require_length(n, "btilde");
    if (b.lift() && same_system(*b.lift(), sys, n)) {
        MatrixSpec inner = b.dense_block() ? MatrixSpec::dense(*b.dense_block()) : MatrixSpec::generator(*b.generator_spec());
        return inner.scaled(b.scale()).materialize(n);
    }
    return btilde(b.materialize(n), sys);
}

/// E and its partial-sum family for the leading N-block of A.
class EMatrix {
public:
    EMatrix(Matrix a, TriangleKernel v) : a_(std::move(a)), v_(std::move(v)) {
        if (a_.rows() != v_.size() || a_.cols() != v_.size()) throw InvalidArgument("e_matrix: dimension mismatch");
        const std::size_t n = size();
        e_ = Matrix(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < n; ++k) e_(i, k) = entry(i, k, n - 1);
        }
    }

    std::size_t size() const noexcept { return v_.size(); }
    const Matrix& matrix() const noexcept { return e_; }
    Complex operator()(std::size_t n, std::size_t k) const { return e_(n, k); }

    /// E^(n)[m][k] = sum_{j=k..m} a_nj V[j][k] for k <= m, 0 for k > m.
    Complex partial(std::size_t n, std::size_t m, std::size_t k) const { return k > m ? Complex{} : entry(n, k, m); }

    /// Row m of E^(n), all N columns.
    std::vector<Complex> partial_row(std::size_t n, std::size_t m) const {
        std::vector<Complex> out(size(), Complex{});
        for (std::size_t k = 0; k <= m && k < size(); ++k) out[k] = entry(n, k, m);
        return out;
    }

    /// Rows m = 0..N-1 of E^(n), built by running sums in the same order as entry().
    Matrix partial_family(std::size_t n) const {
        const std::size_t len = size();
        Matrix out(len, len);
        std::vector<Complex> run(len, Complex{});
        for (std::size_t m = 0; m < len; ++m) {
            const Complex anm = a_(n, m);
            for (std::size_t k = 0; k <= m; ++k) run[k] += anm * v_(m, k);
            for (std::size_t k = 0; k <= m; ++k) out(m, k) = run[k];
        }
        return out;
    }

private:
    Complex entry(std::size_t n, std::size_t k, std::size_t m) const {
        Complex acc{};
        for (std::size_t j = k; j <= m; ++j) acc += a_(n, j) * v_(j, k);
        return acc;
    }

    Matrix a_;
    TriangleKernel v_;
    Matrix e_;
};

inline EMatrix e_matrix(const MatrixSpec& a, const BandSystem& sys, std::size_t n) {
    return EMatrix(a.materialize(n), inverse_kernel(sys, n));
}

enum class ConditionSource { e, partial, btilde, matrix };

inline std::string_view to_string(ConditionSource s) {
    switch (s) {
        case ConditionSource::e: return "e";
        case ConditionSource::partial: return "e_partial";
        case ConditionSource::btilde: return "btilde";
        case ConditionSource::matrix: return "matrix";
    }
    return "?";
}

struct CatalogEntry {
    std::string id;
    std::string formula;
    ConditionKind kind;
    Quantifier quantifier;
    ConditionSource source;
    bool needs_q = false;
    bool needs_conjugate = false;
};

/// Every condition the class rules and the standalone checks refer to. Entries whose id
/// starts with "density_zero_rows" are parameterized by an index set.
inline const std::vector<CatalogEntry>& condition_catalog() {
    using CK = ConditionKind;
    using Q = Quantifier;
    using S = ConditionSource;
    static const std::vector<CatalogEntry> cat{
        {"mt23", "lim_m sum_{j=k..m} v_jk a_nj = e_nk exists (n, k fixed)", CK::limit, Q::none, S::partial},
        {"mt24", "forall L: sum_k |e_nk| L^(1/p_k) < inf (n fixed)", CK::bounded, Q::forall, S::e},
        {"mt25", "exists beta_k: lim_m |sum_{j=k..m} v_jk a_nj - beta_k| = 0 (n, k fixed)", CK::limit, Q::none, S::partial},
        {"mt26", "exists M: sup_m sum_{k<=m} |e^(n)_mk| M^(-1/p_k) < inf (n fixed)", CK::bounded, Q::exists, S::partial},
        {"mt27", "forall L exists M: sup_m sum_{k<=m} |e^(n)_mk| L^(1/q_n) M^(-1/p_k) < inf (n fixed)", CK::bounded, Q::forall_exists, S::partial, true},
        {"mt28", "lim_m sum_k e^(n)_mk exists (n fixed)", CK::limit, Q::none, S::partial},
        {"mt29", "forall L: sup_n sum_k |e_nk| L^(1/p_k) < inf", CK::bounded, Q::forall, S::e},
        {"mt30", "lim_n e_nk = beta_k for every k", CK::limit, Q::none, S::e},
        {"mt31", "forall L: lim_n sum_k |e_nk| L^(1/p_k) exists", CK::limit, Q::forall, S::e},
        {"mt32", "forall L: lim_n sum_k |e_nk| L^(1/p_k) = 0", CK::limit, Q::forall, S::e},
        {"mt33", "exists M: sup_n (sum_k |e_nk| M^(-1/p_k))^(q_n) < inf", CK::bounded, Q::exists, S::e, true},
        {"mt34", "lim_n |e_nk|^(q_n) = 0 for every k", CK::limit, Q::none, S::e, true},
        {"mt35", "forall L exists M: sup_n sum_k |e_nk| L^(1/q_n) M^(-1/p_k) < inf", CK::bounded, Q::forall_exists, S::e, true},
        {"mt36", "lim_n |e_nk - beta_k|^(q_n) = 0 for every k", CK::limit, Q::none, S::e, true},
        {"mt37", "exists M: sup_n sum_k |e_nk| M^(-1/p_k) < inf", CK::bounded, Q::exists, S::e},
        {"mt38", "forall L exists M: sup_n sum_k |e_nk - beta_k| L^(1/q_n) M^(-1/p_k) < inf", CK::bounded, Q::forall_exists, S::e, true},
        {"mt39", "sup_n |sum_k e_nk|^(q_n) < inf", CK::bounded, Q::none, S::e, true},
        {"mt40", "lim_n |sum_k e_nk|^(q_n) = 0", CK::limit, Q::none, S::e, true},
        {"mt41", "lim_n |sum_k e_nk - beta|^(q_n) = 0", CK::limit, Q::none, S::e, true},

        {"c0p_l1", "exists B: sup_K sum_n |sum_{k in K} a_nk B^(-1/p_k)| < inf", CK::bounded, Q::exists, S::matrix},
        {"c0p_c.bound", "exists B: sup_n sum_k |a_nk| B^(-1/p_k) < inf", CK::bounded, Q::exists, S::matrix},
        {"c0p_c.colimit", "exists beta_k: lim_n |a_nk - beta_k| = 0 for every k", CK::limit, Q::none, S::matrix},
        {"c0p_c.unif", "exists B, beta_k: sup_n sum_k |a_nk - beta_k| B^(-1/p_k) < inf", CK::bounded, Q::exists, S::matrix},
        {"c0p_linf", "exists B: sup_n sum_k |a_nk| B^(-1/p_k) < inf", CK::bounded, Q::exists, S::matrix},
        {"lp_l1.conj", "exists B: sup_K sum_k |sum_{n in K} a_nk B^(-1)|^(p'_k) < inf", CK::bounded, Q::exists, S::matrix, false, true},
        {"lp_l1.small", "sup_K sup_k |sum_{n in K} a_nk|^(p_k) < inf", CK::bounded, Q::none, S::matrix},
        {"lp_linf.conj", "exists B: sup_n sum_k |a_nk B^(-1)|^(p'_k) < inf", CK::bounded, Q::exists, S::matrix, false, true},
        {"lp_linf.small", "sup_{n,k} |a_nk|^(p_k) < inf", CK::bounded, Q::none, S::matrix},
        {"lp_c.colimit", "lim_n a_nk = beta_k for every k", CK::limit, Q::none, S::matrix},

        {"rowabs_bounded", "sup_n sum_k |bt_nk| < inf", CK::bounded, Q::none, S::btilde},
        {"col_limit", "lim_n bt_nk = beta_k for every k", CK::limit, Q::none, S::btilde},
        {"uniform_col_limit", "lim_n sum_k |bt_nk - beta_k| = 0", CK::limit, Q::none, S::btilde},
        {"col_limit_zero", "lim_n bt_nk = 0 for every k", CK::limit, Q::none, S::btilde},
        {"row_sum_one", "lim_n sum_k bt_nk = 1", CK::limit, Q::none, S::btilde},
        {"density_zero_rows", "lim_n sum_{k in E} |bt_nk| = 0 for E of A-density zero", CK::limit, Q::none, S::btilde},
        {"rowabs_sum_one", "lim_n sum_k |bt_nk| = 1", CK::limit, Q::none, S::btilde},
    };
    return cat;
}

inline const CatalogEntry& catalog_entry(std::string_view id) {
    const std::string_view base = id.substr(0, id.find(':'));
    for (const auto& e : condition_catalog()) {
        if (e.id == base) return e;
    }
    throw InvalidArgument("unknown condition '" + std::string(id) + "'");
}

/// Per-truncation copies of the matrix a condition reads.
struct MatrixLadder {
    std::vector<std::size_t> ns;
    std::vector<Matrix> mats;

    const Matrix& at(std::size_t i) const { return mats.at(i); }
    const Matrix& last() const { return mats.back(); }
};

struct ConditionInputs {
    const MatrixLadder* source = nullptr;          // E, btilde or A according to the catalog
    const EMatrix* partial = nullptr;              // E at the largest truncation, for partial-sum conditions
    std::optional<ExponentSeq> p;
    std::optional<ExponentSeq> q;
    std::optional<std::vector<Complex>> beta_k;    // pinned; fitted from the last row otherwise
    std::optional<Complex> beta;
    std::optional<IndexSet> index_set;             // density_zero_rows
    std::size_t fixed_rows = 8;                    // rows n probed by the fixed-n conditions
};

namespace detail {

inline long ladder_index(const MatrixLadder& ml, std::size_t n) {
    for (std::size_t i = 0; i < ml.ns.size(); ++i) {
        if (ml.ns[i] == n) return static_cast<long>(i);
    }
    return -1;
}

class CatalogProbes {
public:
    CatalogProbes(const CatalogEntry& entry, const ConditionInputs& in, const VerdictPolicy& pol)
        : entry_(entry), in_(in), pol_(pol) {
        const bool reads_matrix = entry.source != ConditionSource::partial;
        if (reads_matrix && (in.source == nullptr || in.source->mats.empty())) {
            throw InvalidArgument(entry.id + ": missing source matrix");
        }
        if (entry.source == ConditionSource::partial && in.partial == nullptr) {
            throw InvalidArgument(entry.id + ": missing partial-sum family");
        }
        if (!in.p) throw InvalidArgument(entry.id + ": missing exponent sequence p");
        if (entry.needs_q && !in.q) throw InvalidArgument(entry.id + ": missing target exponent sequence q");
        if (entry.id == "density_zero_rows" && !in.index_set) throw InvalidArgument(entry.id + ": missing index set");
        nmax_ = reads_matrix ? in.source->ns.back() : in.partial->size();
        in.p->require_length(nmax_, entry.id.c_str());
        if (in.q) in.q->require_length(nmax_, entry.id.c_str());
        if (entry.needs_conjugate) {
            for (std::size_t k = 0; k < nmax_; ++k) {
                if ((*in.p)[k] <= 1.0) throw InvalidArgument(entry.id + " uses the conjugate exponent and needs p_k > 1");
            }
        }
        if (reads_matrix) {
            const Matrix& last = in.source->last();
            if (in.beta_k) {
                if (in.beta_k->size() < last.cols()) throw InvalidArgument(entry.id + ": pinned beta_k shorter than truncation");
                beta_k_ = *in.beta_k;
            } else {
                beta_k_.assign(last.row(last.rows() - 1).begin(), last.row(last.rows() - 1).end());
            }
            beta_ = in.beta ? *in.beta : reduce::row_sum(last, last.rows() - 1, false);
        }
        if (entry.source == ConditionSource::partial) {
            rows_ = std::min(in.fixed_rows, nmax_);
            for (std::size_t n = 0; n < rows_; ++n) families_.push_back(in.partial->partial_family(n));
        }
    }

    const std::vector<Complex>& beta_k() const { return beta_k_; }
    Complex beta() const { return beta_; }
    bool beta_pinned_k() const { return in_.beta_k.has_value(); }
    bool beta_pinned() const { return in_.beta.has_value(); }

    Probe make() const {
        const std::string& id = entry_.id;
        const ExponentSeq& p = *in_.p;
        auto weights = [&p](std::size_t n, double base, double sign) { return reduce::exponent_weights(p, n, base, sign); };
        auto mat = [this](std::size_t n) -> const Matrix& {
            const long i = ladder_index(*in_.source, n);
            if (i < 0) throw InvalidArgument(entry_.id + ": truncation not on the source ladder");
            return in_.source->at(static_cast<std::size_t>(i));
        };
        auto q = [this](std::size_t n) { return (*in_.q)[n]; };
        auto bounded = [](double v) { return ProbeValue{v, std::nullopt, std::nullopt}; };
        auto limit = [](double dev, std::optional<double> obs = std::nullopt) { return ProbeValue{dev, std::nullopt, obs}; };
        auto n0 = [this](std::size_t n) { return pol_.window_start(n); };
        const std::size_t fixed = std::min(in_.fixed_rows, nmax_);

        // Partial-sum family E^(n), n < fixed rows.
        if (id == "mt23" || id == "mt25") {
            return [=, this](std::size_t n, const Witness&) {
                double dev = 0.0;
                const std::size_t lo = n0(n);
                const std::size_t kcap = std::max<std::size_t>(lo, 1);
                for (std::size_t r = 0; r < rows_; ++r) {
                    const Matrix& f = families_[r];
                    for (std::size_t m = lo; m < n; ++m) {
                        for (std::size_t k = 0; k < kcap && k <= m; ++k) dev = std::max(dev, std::abs(f(m, k) - f(n - 1, k)));
                    }
                }
                return limit(dev);
            };
        }
        if (id == "mt26" || id == "mt27") {
            const bool with_l = id == "mt27";
            return [=, this](std::size_t n, const Witness& w) {
                const double mw = with_l ? *w.inner : *w.outer;
                const auto wt = weights(n, mw, -1.0);
                double best = 0.0;
                for (std::size_t r = 0; r < rows_; ++r) {
                    const double lf = with_l ? std::pow(*w.outer, 1.0 / q(r)) : 1.0;
                    const Matrix& f = families_[r];
                    for (std::size_t m = 0; m < n; ++m) {
                        double acc = 0.0;
                        for (std::size_t k = 0; k <= m; ++k) acc += std::abs(f(m, k)) * wt[k];
                        best = std::max(best, acc * lf);
                    }
                }
                return bounded(best);
            };
        }
        if (id == "mt28") {
            return [=, this](std::size_t n, const Witness&) {
                double dev = 0.0;
                for (std::size_t r = 0; r < rows_; ++r) {
                    const Matrix& f = families_[r];
                    const Complex target = reduce::row_sum(f, n - 1, true);
                    for (std::size_t m = n0(n); m < n; ++m) dev = std::max(dev, std::abs(reduce::row_sum(f, m, true) - target));
                }
                return limit(dev);
            };
        }

        // E, btilde or A at truncation n.
        if (id == "mt24") {
            return [=](std::size_t n, const Witness& w) {
                const Matrix& e = mat(n);
                const auto wt = weights(n, *w.outer, 1.0);
                return bounded(reduce::max_over_rows(0, std::min(fixed, n), [&](std::size_t r) { return reduce::row_abs(e, r, wt, {}, false); }));
            };
        }
        if (id == "mt29") {
            return [=](std::size_t n, const Witness& w) {
                const Matrix& e = mat(n);
                const auto wt = weights(n, *w.outer, 1.0);
                return bounded(reduce::max_over_rows(0, n, [&](std::size_t r) { return reduce::row_abs(e, r, wt, {}, false); }));
            };
        }
        if (id == "mt30" || id == "c0p_c.colimit" || id == "lp_c.colimit" || id == "col_limit") {
            return [=, this](std::size_t n, const Witness&) {
                const Matrix& e = mat(n);
                return limit(reduce::column_window_deviation(n0(n), n, [&](std::size_t r, std::size_t k) { return std::abs(e(r, k) - beta_k_[k]); }));
            };
        }
        if (id == "col_limit_zero") {
            return [=](std::size_t n, const Witness&) {
                const Matrix& e = mat(n);
                return limit(reduce::column_window_deviation(n0(n), n, [&](std::size_t r, std::size_t k) { return std::abs(e(r, k)); }));
            };
        }
        if (id == "mt31" || id == "mt32") {
            const bool to_zero = id == "mt32";
            return [=](std::size_t n, const Witness& w) {
                const Matrix& e = mat(n);
                const auto wt = weights(n, *w.outer, 1.0);
                const double last = reduce::row_abs(e, n - 1, wt, {}, false);
                const double target = to_zero ? 0.0 : last;
                return limit(reduce::max_over_rows(n0(n), n, [&](std::size_t r) { return std::abs(reduce::row_abs(e, r, wt, {}, false) - target); }), last);
            };
        }
        if (id == "mt33") {
            return [=](std::size_t n, const Witness& w) {
                const Matrix& e = mat(n);
                const auto wt = weights(n, *w.outer, -1.0);
                return bounded(reduce::max_over_rows(0, n, [&](std::size_t r) { return std::pow(reduce::row_abs(e, r, wt, {}, false), q(r)); }));
            };
        }
        if (id == "mt34" || id == "mt36") {
            const bool centred = id == "mt36";
            return [=, this](std::size_t n, const Witness&) {
                const Matrix& e = mat(n);
                return limit(reduce::column_window_deviation(n0(n), n, [&](std::size_t r, std::size_t k) {
                    const Complex v = centred ? e(r, k) - beta_k_[k] : e(r, k);
                    return std::pow(std::abs(v), q(r));
                }));
            };
        }
        if (id == "mt35" || id == "mt38") {
            const bool centred = id == "mt38";
            return [=, this](std::size_t n, const Witness& w) {
                const Matrix& e = mat(n);
                const auto wt = weights(n, *w.inner, -1.0);
                const std::span<const Complex> beta = centred ? std::span<const Complex>(beta_k_) : std::span<const Complex>{};
                return bounded(reduce::max_over_rows(0, n, [&](std::size_t r) {
                    return reduce::row_abs(e, r, wt, beta.empty() ? beta : beta.first(n), false) * std::pow(*w.outer, 1.0 / q(r));
                }));
            };
        }
        if (id == "mt37" || id == "c0p_c.bound" || id == "c0p_linf") {
            return [=](std::size_t n, const Witness& w) {
                const Matrix& e = mat(n);
                const auto wt = weights(n, *w.outer, -1.0);
                return bounded(reduce::max_over_rows(0, n, [&](std::size_t r) { return reduce::row_abs(e, r, wt, {}, false); }));
            };
        }
        if (id == "c0p_c.unif") {
            return [=, this](std::size_t n, const Witness& w) {
                const Matrix& e = mat(n);
                const auto wt = weights(n, *w.outer, -1.0);
                return bounded(reduce::max_over_rows(0, n, [&](std::size_t r) {
                    return reduce::row_abs(e, r, wt, std::span<const Complex>(beta_k_).first(n), false);
                }));
            };
        }
        if (id == "mt39") {
            return [=](std::size_t n, const Witness&) {
                const Matrix& e = mat(n);
                return bounded(reduce::max_over_rows(0, n, [&](std::size_t r) { return std::pow(std::abs(reduce::row_sum(e, r, false)), q(r)); }));
            };
        }
        if (id == "mt40" || id == "mt41") {
            const bool centred = id == "mt41";
            return [=, this](std::size_t n, const Witness&) {
                const Matrix& e = mat(n);
                auto val = [&](std::size_t r) {
                    const Complex s = reduce::row_sum(e, r, false) - (centred ? beta_ : Complex{});
                    return std::pow(std::abs(s), q(r));
                };
                return limit(reduce::max_over_rows(n0(n), n, val), val(n - 1));
            };
        }
        if (id == "c0p_l1") {
            return [=](std::size_t n, const Witness& w) {
                SubsetSupOptions opt{Axis::columns, weights(n, *w.outer, -1.0), {}};
                const auto r = subset_sup(mat(n), opt);
                return r.exact ? bounded(r.upper) : ProbeValue{r.upper, r.lower, std::nullopt};
            };
        }
        if (id == "lp_l1.conj") {
            return [=, &p](std::size_t n, const Witness& w) {
                std::vector<double> ex(n);
                for (std::size_t k = 0; k < n; ++k) ex[k] = p.conjugate(k);
                SubsetSupOptions opt{Axis::rows, std::vector<double>(n, 1.0 / *w.outer), std::move(ex)};
                const auto r = subset_sup(mat(n), opt);
                return r.exact ? bounded(r.upper) : ProbeValue{r.upper, r.lower, std::nullopt};
            };
        }
        if (id == "lp_l1.small") {
            return [=, &p](std::size_t n, const Witness&) {
                std::vector<double> ex(p.values().begin(), p.values().begin() + static_cast<std::ptrdiff_t>(n));
                return bounded(subset_sup_columnwise_max(mat(n), ex));
            };
        }
        if (id == "lp_linf.conj") {
            return [=, &p](std::size_t n, const Witness& w) {
                const Matrix& e = mat(n);
                return bounded(reduce::max_over_rows(0, n, [&](std::size_t r) {
                    double acc = 0.0;
                    for (std::size_t k = 0; k < n; ++k) acc += std::pow(std::abs(e(r, k)) / *w.outer, p.conjugate(k));
                    return acc;
                }));
            };
        }
        if (id == "lp_linf.small") {
            return [=, &p](std::size_t n, const Witness&) {
                const Matrix& e = mat(n);
                return bounded(reduce::max_over_rows(0, n, [&](std::size_t r) {
                    double m = 0.0;
                    for (std::size_t k = 0; k < n; ++k) m = std::max(m, std::pow(std::abs(e(r, k)), p[k]));
                    return m;
                }));
            };
        }
        if (id == "rowabs_bounded") {
            return [=](std::size_t n, const Witness&) {
                const Matrix& e = mat(n);
                return bounded(reduce::max_over_rows(0, n, [&](std::size_t r) { return reduce::row_abs(e, r, {}, {}, false); }));
            };
        }
        if (id == "uniform_col_limit") {
            return [=, this](std::size_t n, const Witness&) {
                const Matrix& e = mat(n);
                return limit(reduce::max_over_rows(n0(n), n, [&](std::size_t r) {
                    return reduce::row_abs(e, r, {}, std::span<const Complex>(beta_k_).first(n), false);
                }));
            };
        }
        if (id == "row_sum_one") {
            return [=](std::size_t n, const Witness&) {
                const Matrix& e = mat(n);
                return limit(reduce::max_over_rows(n0(n), n, [&](std::size_t r) { return std::abs(reduce::row_sum(e, r, false) - 1.0); }),
                             std::abs(reduce::row_sum(e, n - 1, false)));
            };
        }
        if (id == "rowabs_sum_one") {
            return [=](std::size_t n, const Witness&) {
                const Matrix& e = mat(n);
                return limit(reduce::max_over_rows(n0(n), n, [&](std::size_t r) { return std::abs(reduce::row_abs(e, r, {}, {}, false) - 1.0); }),
                             reduce::row_abs(e, n - 1, {}, {}, false));
            };
        }
        if (id == "density_zero_rows") {
            const IndexSet set = *in_.index_set;
            return [=](std::size_t n, const Witness&) {
                const Matrix& e = mat(n);
                auto val = [&](std::size_t r) {
                    double acc = 0.0;
                    for (std::size_t k = 0; k < n; ++k) {
                        if (set.contains(k)) acc += std::abs(e(r, k));
                    }
                    return acc;
                };
                return limit(reduce::max_over_rows(n0(n), n, val), val(n - 1));
            };
        }
        throw InvalidArgument("no probe for condition '" + id + "'");
    }

    std::vector<std::size_t> ladder() const {
        if (entry_.source != ConditionSource::partial) return in_.source->ns;
        return partial_ladder_;
    }

    void set_partial_ladder(std::vector<std::size_t> l) { partial_ladder_ = std::move(l); }

private:
    const CatalogEntry& entry_;
    const ConditionInputs& in_;
    const VerdictPolicy& pol_;
    std::size_t nmax_ = 0;
    std::size_t rows_ = 0;
    std::vector<Complex> beta_k_;
    Complex beta_{};
    std::vector<Matrix> families_;
    std::vector<std::size_t> partial_ladder_;
};

inline bool uses_beta_k(std::string_view id) {
    return id == "mt30" || id == "mt36" || id == "mt38" || id == "c0p_c.colimit" || id == "c0p_c.unif" ||
           id == "lp_c.colimit" || id == "col_limit" || id == "uniform_col_limit";
}

}  // namespace detail

/// Evaluates one catalog condition. `ladder` is the truncation ladder; for the
/// partial-sum conditions it indexes the m-truncation of E^(n) and must end at
/// the size of `in.partial`.
inline ConditionVerdict eval_condition(std::string_view id, const ConditionInputs& in, std::span<const std::size_t> ladder,
                                       const VerdictPolicy& pol = {}) {
    pol.validate();
    const CatalogEntry& entry = catalog_entry(id);
    if (ladder.empty()) throw InvalidArgument(std::string(id) + ": empty ladder");
    if (entry.source == ConditionSource::partial) {
        if (in.partial && ladder.back() != in.partial->size()) {
            throw InvalidArgument(std::string(id) + ": ladder must end at the partial-sum family size");
        }
    } else if (in.source && !std::equal(ladder.begin(), ladder.end(), in.source->ns.begin(), in.source->ns.end())) {
        throw InvalidArgument(std::string(id) + ": ladder differs from the source matrix ladder");
    }
    detail::CatalogProbes probes(entry, in, pol);
    std::string shown(id);
    ConditionVerdict cv = evaluate_condition({shown, entry.formula, entry.kind, entry.quantifier}, ladder, probes.make(), pol);
    if (detail::uses_beta_k(entry.id)) {
        cv.fitted_name = probes.beta_pinned_k() ? "beta_k (pinned)" : "beta_k";
        cv.fitted = probes.beta_k();
    } else if (entry.id == "mt41") {
        cv.fitted_name = probes.beta_pinned() ? "beta (pinned)" : "beta";
        cv.fitted = {probes.beta()};
    }
    if (entry.source == ConditionSource::partial || entry.id == "mt24") {
        cv.note = "rows n < " + std::to_string(std::min(in.fixed_rows, ladder.back()));
    }
    return cv;
}

// ---------------------------------------------------------------------------
// Class rules and reports

struct ClassRule {
    std::string id;
    std::string description;
    ConditionSource source;                 // e or btilde
    std::vector<std::string> conditions;
    bool density_family = false;            // adds density_zero_rows per index set
};

inline const std::vector<ClassRule>& class_rules() {
    using S = ConditionSource;
    static const std::vector<ClassRule> rules{
        {"sinf:linf", "A maps the bounded transformed space into l_inf", S::e, {"mt23", "mt24", "mt29"}},
        {"sinf:c", "A maps the bounded transformed space into c", S::e, {"mt23", "mt24", "mt30", "mt31"}},
        {"sinf:c0", "A maps the bounded transformed space into c0", S::e, {"mt23", "mt24", "mt32"}},
        {"s0:linf_q", "A maps the null transformed space into l_inf(q)", S::e, {"mt25", "mt26", "mt27", "mt33"}},
        {"s0:c0_q", "A maps the null transformed space into c0(q)", S::e, {"mt25", "mt26", "mt27", "mt34", "mt35"}},
        {"s0:c_q", "A maps the null transformed space into c(q)", S::e, {"mt25", "mt26", "mt27", "mt36", "mt37", "mt38"}},
        {"sc:linf_q", "A maps the convergent transformed space into l_inf(q)", S::e, {"mt25", "mt26", "mt27", "mt28", "mt33", "mt39"}},
        {"sc:c0_q", "A maps the convergent transformed space into c0(q)", S::e, {"mt25", "mt26", "mt27", "mt28", "mt34", "mt35", "mt40"}},
        {"sc:c_q", "A maps the convergent transformed space into c(q)", S::e, {"mt25", "mt26", "mt27", "mt28", "mt36", "mt37", "mt38", "mt41"}},
        {"linf:sc", "B maps l_inf into the convergent transformed space", S::btilde, {"rowabs_bounded", "col_limit", "uniform_col_limit"}},
        {"c:sc_reg", "B maps c into the convergent transformed space preserving limits", S::btilde, {"rowabs_bounded", "col_limit_zero", "row_sum_one"}},
        {"st_linf:sc_reg", "B maps bounded A-statistically convergent sequences into the convergent transformed space preserving limits",
         S::btilde, {"rowabs_bounded", "col_limit_zero", "row_sum_one"}, true},
    };
    return rules;
}

inline const ClassRule& class_rule(std::string_view id) {
    for (const auto& r : class_rules()) {
        if (r.id == id) return r;
    }
    std::string known;
    for (const auto& r : class_rules()) known += (known.empty() ? "" : ", ") + r.id;
    throw InvalidArgument("unknown class '" + std::string(id) + "' (known: " + known + ")");
}

struct ClassOptions {
    std::optional<ExponentSeq> q;
    std::optional<std::vector<Complex>> beta_k;
    std::optional<Complex> beta;
    std::vector<IndexSet> density_sets;      // default: squares, powers_of_2
    std::optional<MatrixSpec> density_matrix; // default: Cesaro
    std::size_t fixed_rows = 8;
};

struct ClassReport {
    std::string class_id;
    std::vector<std::size_t> ladder;
    std::vector<ConditionVerdict> conditions;
    std::vector<DensityEstimate> densities;
    std::vector<std::string> warnings;
    Verdict aggregate = Verdict::inconclusive;
};

/// Warnings for q that is not non-decreasing or not bounded along [0, n).
inline std::vector<std::string> check_q(const ExponentSeq& q, std::size_t n) {
    std::vector<std::string> w;
    for (std::size_t k = 1; k < n; ++k) {
        if (q[k] < q[k - 1]) {
            w.push_back("q is not non-decreasing at index " + std::to_string(k));
            break;
        }
    }
    if (n >= 8) {
        double head = 0.0;
        for (std::size_t k = 0; k < n / 2; ++k) head = std::max(head, q[k]);
        double tail = 0.0;
        for (std::size_t k = n / 2; k < n; ++k) tail = std::max(tail, q[k]);
        if (tail > 2.0 * head) w.push_back("q appears unbounded along the truncation");
    }
    return w;
}

inline ClassReport class_report(const MatrixSpec& a, std::string_view class_id, const BandSystem& sys, const ExponentSeq& p,
                                std::span<const std::size_t> ladder, const ClassOptions& opt = {},
                                const VerdictPolicy& pol = {}) {
    pol.validate();
    const ClassRule& rule = class_rule(class_id);
    detail::require_increasing(ladder, "class_report");
    const std::size_t nmax = ladder.back();
    a.require_size(nmax);
    sys.require_length(nmax, "class_report");
    p.require_length(nmax, "class_report");

    ClassReport rep;
    rep.class_id = rule.id;
    rep.ladder.assign(ladder.begin(), ladder.end());

    bool needs_q = false;
    for (const auto& c : rule.conditions) needs_q = needs_q || catalog_entry(c).needs_q;
    if (needs_q && !opt.q) throw InvalidArgument("class " + rule.id + " targets a (q)-space and needs q");
    if (opt.q) {
        opt.q->require_length(nmax, "class_report");
        rep.warnings = check_q(*opt.q, nmax);
    }

    MatrixLadder source;
    source.ns = rep.ladder;
    std::optional<EMatrix> emax;
    if (rule.source == ConditionSource::e) {
        const Matrix amax = a.materialize(nmax);
        const TriangleKernel vmax = inverse_kernel(sys, nmax);
        bool lower = true;
        for (std::size_t n = 0; n < nmax && lower; ++n) {
            for (std::size_t k = n + 1; k < nmax; ++k) {
                if (amax(n, k) != Complex{}) {
                    lower = false;
                    break;
                }
            }
        }
        emax.emplace(amax, vmax);
        for (std::size_t n : ladder) {
            if (n == nmax) {
                source.mats.push_back(emax->matrix());
            } else if (lower) {
                source.mats.push_back(reduce::leading_square(emax->matrix(), n));
            } else {
                const Matrix an = reduce::leading_square(amax, n);
                source.mats.push_back(EMatrix(an, TriangleKernel(reduce::leading_square(vmax.matrix(), n))).matrix());
            }
        }
    } else {
        const Matrix bt = btilde(a, sys, nmax);
        for (std::size_t n : ladder) source.mats.push_back(reduce::leading_square(bt, n));
    }

    ConditionInputs in;
    in.source = &source;
    in.partial = emax ? &*emax : nullptr;
    in.p = p;
    in.q = opt.q;
    in.beta_k = opt.beta_k;
    in.beta = opt.beta;
    in.fixed_rows = std::min(opt.fixed_rows, ladder.front());

    std::vector<std::string> ids = rule.conditions;
    std::vector<IndexSet> sets = opt.density_sets;
    if (rule.density_family) {
        if (sets.empty()) sets = {index_set("squares"), index_set("powers_of_2")};
        const MatrixSpec dens = opt.density_matrix.value_or(MatrixSpec::generator(GeneratorName::cesaro));
        for (const auto& s : sets) {
            rep.densities.push_back(a_density(dens, s, ladder));
            const auto& d = rep.densities.back();
            if (d.limit_estimate > 0.05 && d.trend > -0.05) {
                rep.warnings.push_back("index set " + s.name + " does not look A-density zero (last value " +
                                       std::to_string(d.limit_estimate) + ")");
            }
        }
    }

    std::vector<Verdict> vs;
    for (const auto& id : ids) {
        rep.conditions.push_back(eval_condition(id, in, ladder, pol));
        vs.push_back(rep.conditions.back().verdict);
    }
    for (const auto& s : sets) {
        if (!rule.density_family) break;
        ConditionInputs din = in;
        din.index_set = s;
        rep.conditions.push_back(eval_condition("density_zero_rows:" + s.name, din, ladder, pol));
        vs.push_back(rep.conditions.back().verdict);
    }
    rep.aggregate = aggregate(vs);
    return rep;
}

}  // namespace seqcore
