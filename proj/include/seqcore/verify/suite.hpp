#pragma once

// Acceptance battery. Each criterion computes its quantities, compares them with
// the pinned tolerance and reports the measured values; nothing is relaxed to
// make a criterion pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "seqcore/band_ops.hpp"
#include "seqcore/cores.hpp"
#include "seqcore/duals.hpp"
#include "seqcore/generators.hpp"
#include "seqcore/io.hpp"
#include "seqcore/matclass.hpp"
#include "seqcore/matrix_spec.hpp"
#include "seqcore/rng.hpp"
#include "seqcore/subset_sup.hpp"
#include "seqcore/verify/oracles.hpp"

namespace seqcore::verify {

using json = nlohmann::json;

inline constexpr int kCriterionCount = 12;

struct SuiteConfig {
    std::optional<std::vector<int>> select;   // absent: every criterion
    double inclusion_scale = 1.0;             // btilde = scale * Cesaro in the inclusion checks
    std::filesystem::path rule_table_path;    // checked-in rule-table transcription
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    json details = json::object();
    double seconds = 0.0;  // wall time; kept out of the JSON report
};

struct SuiteReport {
    std::vector<CriterionResult> results;
    int exit_code = 2;
};

inline SuiteConfig parse_suite_config(const json& j) {
    io::require_keys(j, {"select", "inclusion_scale", "rule_table_path"}, "verify config");
    SuiteConfig c;
    if (j.contains("select")) {
        if (!j["select"].is_array()) throw io::SchemaError("verify config.select: expected an array of criterion numbers");
        std::vector<int> sel;
        for (const auto& v : j["select"]) {
            const auto id = static_cast<int>(io::get_size(v, "verify config.select"));
            if (id < 1 || id > kCriterionCount) throw io::SchemaError("verify config.select: criterion " + std::to_string(id) + " does not exist");
            sel.push_back(id);
        }
        c.select = sel;
    }
    if (j.contains("inclusion_scale")) c.inclusion_scale = io::get_double(j["inclusion_scale"], "verify config.inclusion_scale");
    if (j.contains("rule_table_path")) c.rule_table_path = io::get_string(j["rule_table_path"], "verify config.rule_table_path");
    return c;
}

namespace detail {

/// r_k, s_k with random sign and modulus in [lo, hi]; alpha_k in [lo, hi].
inline BandSystem random_system(CounterRng& rng, std::size_t n, double lo = 0.5, double hi = 2.0) {
    std::vector<double> r(n), s(n), a(n);
    for (std::size_t k = 0; k < n; ++k) {
        r[k] = rng.sign() * rng.uniform(lo, hi);
        s[k] = rng.sign() * rng.uniform(lo, hi);
        a[k] = rng.uniform(lo, hi);
    }
    return {std::move(r), std::move(s), std::move(a)};
}

inline std::vector<Complex> random_complex(CounterRng& rng, std::size_t n) {
    std::vector<Complex> v(n);
    for (auto& z : v) z = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    return v;
}

inline double sup_diff(std::span<const Complex> a, std::span<const Complex> b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

inline double sup_abs(std::span<const Complex> a) {
    double m = 0.0;
    for (auto v : a) m = std::max(m, std::abs(v));
    return m;
}

/// log10 of the largest |prod_{i=k}^{n-1} s_i / r_i|, the growth factor of V.
inline double log10_growth(const BandSystem& sys, std::size_t n) {
    double run = 0.0, lo = 0.0, worst = 0.0;
    for (std::size_t m = 1; m < n; ++m) {
        run += std::log10(std::abs(sys.s(m - 1) / sys.r(m - 1)));
        worst = std::max(worst, run - lo);
        lo = std::min(lo, run);
    }
    return worst;
}

/// Well-conditioned system for the inclusion checks: |s/r| < 1 everywhere.
inline BandSystem smooth_system(std::size_t n) {
    std::vector<double> r(n), s(n), a(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k);
        r[k] = 2.0 + 0.5 * std::sin(t);
        s[k] = 1.0 + 0.5 * std::cos(t);
        a[k] = 1.0 + 0.25 * std::sin(0.5 * t);
    }
    return {std::move(r), std::move(s), std::move(a)};
}

inline std::vector<std::pair<std::string, FiniteSeq>> core_family(std::size_t n) {
    SequenceSpec alt, roots, conv, rnd;
    alt.name = SequenceName::alternating;
    roots.name = SequenceName::roots_of_unity;
    roots.m = 4;
    conv.name = SequenceName::convergent;
    conv.limit = {0.3, -0.2};
    rnd.name = SequenceName::random_bounded;
    rnd.seed = 7;
    return {{"alternating", make_sequence(alt, n)},
            {"roots_of_unity(4)", make_sequence(roots, n)},
            {"convergent", make_sequence(conv, n)},
            {"random_bounded", make_sequence(rnd, n)}};
}

// --- criteria --------------------------------------------------------------

inline CriterionResult round_trip() {
    CriterionResult res{1, "round trip inverse(forward(x)) = x, 100 random systems, N = 512, rel < 1e-9, runtime < 5 s"};
    CounterRng rng(101);
    double worst = 0.0, growth = 0.0;
    std::size_t failing = 0;
    const auto t0 = std::chrono::steady_clock::now();
    for (int c = 0; c < 100; ++c) {
        const BandSystem sys = random_system(rng, 512);
        const FiniteSeq x(random_complex(rng, 512));
        const FiniteSeq back = inverse_transform(forward_transform(x, sys), sys);
        const double rel = sup_diff(back.values(), x.values()) / x.sup_norm();
        worst = std::max(worst, rel);
        growth = std::max(growth, log10_growth(sys, 512));
        failing += rel < 1e-9 ? 0 : 1;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    res.details = {{"max_rel_error", worst}, {"cases_over_tolerance", failing}, {"max_log10_growth_of_inverse", growth},
                   {"runtime_within_limit", secs < 5.0}};
    res.passed = failing == 0 && secs < 5.0;
    return res;
}

inline CriterionResult kernel_identity() {
    CriterionResult res{2, "triangle * inverse kernel = I at N = 256, max entry error < 1e-10, incl. |s/r| = 1.5"};
    const std::size_t n = 256;
    CounterRng rng(202);
    std::vector<std::pair<std::string, BandSystem>> systems;
    systems.emplace_back("random", random_system(rng, n));
    systems.emplace_back("ill_scaled_alpha_one", BandSystem::constant(1.0, 1.5, 1.0, n));
    {
        std::vector<double> a(n);
        for (std::size_t k = 0; k < n; ++k) a[k] = std::pow(1.5, static_cast<double>(k));
        systems.emplace_back("ill_scaled_alpha_balanced", BandSystem(std::vector<double>(n, 1.0), std::vector<double>(n, 1.5), a));
    }
    json per = json::array();
    bool ok = true;
    for (const auto& [name, sys] : systems) {
        const Matrix t = triangle_kernel(sys, n).matrix();
        const Matrix v = inverse_kernel(sys, n).matrix();
        const Matrix p = t * v;
        double abs_err = 0.0, scaled_err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                const double e = std::abs(p(i, k) - (i == k ? 1.0 : 0.0));
                double scale = 0.0;
                for (std::size_t j = 0; j < n; ++j) scale += std::abs(t(i, j)) * std::abs(v(j, k));
                abs_err = std::max(abs_err, e);
                if (scale > 0) scaled_err = std::max(scaled_err, e / scale);
            }
        }
        ok = ok && abs_err < 1e-10;
        per.push_back({{"system", name}, {"max_entry_error", abs_err}, {"max_scaled_error", scaled_err},
                       {"log10_growth_of_inverse", log10_growth(sys, n)}});
    }
    res.details = {{"systems", per}};
    res.passed = ok;
    return res;
}

inline CriterionResult duality_identities() {
    CriterionResult res{3, "companion identities C y = (a_n x_n), D y = (partial sums), 100 random cases, N = 64, rel < 1e-8"};
    const std::size_t n = 64;
    CounterRng rng(303);
    double worst_c = 0.0, worst_d = 0.0;
    for (int c = 0; c < 100; ++c) {
        const BandSystem sys = random_system(rng, n);
        const FiniteSeq a(random_complex(rng, n));
        const FiniteSeq y(random_complex(rng, n));
        const auto sides = oracle::duality_sides(a.values(), sys, y.values());
        const FiniteSeq cy = companion_C(a, sys, n).apply(y);
        const FiniteSeq dy = companion_D(a, sys, n).apply(y);
        worst_c = std::max(worst_c, sup_diff(cy.values(), sides.products) / sup_abs(sides.products));
        worst_d = std::max(worst_d, sup_diff(dy.values(), sides.partial_sums) / sup_abs(sides.partial_sums));
    }
    res.details = {{"max_rel_error_C", worst_c}, {"max_rel_error_D", worst_d}};
    res.passed = worst_c < 1e-8 && worst_d < 1e-8;
    return res;
}

inline CriterionResult subset_oracle() {
    CriterionResult res{4, "branch and bound = 2^N enumeration on 200 random matrices, N <= 10; sup <= sum|.| <= 4 sup (real)"};
    CounterRng rng(404);
    std::size_t mismatches = 0, sandwich_violations = 0;
    double worst_ratio = 0.0;
    for (int c = 0; c < 200; ++c) {
        const bool complex_case = c % 2 == 1;
        const std::size_t rows = 1 + rng.below(10);
        const std::size_t cols = 1 + rng.below(10);
        Matrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t k = 0; k < cols; ++k) m(i, k) = complex_case ? Complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) : Complex(rng.uniform(-1, 1));
        }
        SubsetSupOptions opt;
        if (c % 4 >= 2) {
            for (std::size_t k = 0; k < cols; ++k) opt.weights.push_back(rng.uniform(0.25, 2.0));
        }
        const SubsetSupResult bb = subset_sup_exact(m, opt);
        const double brute = oracle::subset_sup_brute(m, opt);
        mismatches += (bb.upper == brute && bb.lower == brute) ? 0 : 1;
        if (!complex_case && opt.weights.empty()) {
            const double total = oracle::full_abs_sum(m);
            sandwich_violations += (brute <= total && total <= 4.0 * brute) ? 0 : 1;
            if (brute > 0) worst_ratio = std::max(worst_ratio, total / brute);
        }
    }
    res.details = {{"exact_mismatches", mismatches}, {"sandwich_violations", sandwich_violations}, {"max_sum_over_sup", worst_ratio}};
    res.passed = mismatches == 0 && sandwich_violations == 0;
    return res;
}

inline CriterionResult basis_expansion() {
    CriterionResult res{5, "expansion residual = tail paranorm to 1e-10 and non-increasing in n, 50 random cases"};
    const std::size_t n = 64;
    CounterRng rng(505);
    double worst = 0.0;
    double max_increase = 0.0;
    std::size_t increases = 0;  // steps up by more than the pinned tolerance
    for (int c = 0; c < 50; ++c) {
        const BandSystem sys = random_system(rng, n);
        std::vector<double> pv(n);
        for (auto& v : pv) v = rng.uniform(0.5, 2.0);
        const ExponentSeq p(pv);
        const FiniteSeq y(random_complex(rng, n));
        const FiniteSeq x = inverse_transform(y, sys);
        const FiniteSeq mu = forward_transform(x, sys);
        double prev = std::numeric_limits<double>::infinity();
        for (std::size_t m = 0; m + 1 < n; ++m) {
            const double r = expansion_residual(x, sys, p, m);
            worst = std::max(worst, std::abs(r - tail_paranorm(mu, p, m)));
            if (m > 0) max_increase = std::max(max_increase, r - prev);
            increases += r <= prev + 1e-10 ? 0 : 1;
            prev = r;
        }
    }
    res.details = {{"max_abs_difference", worst}, {"increases", increases}, {"max_increase", max_increase}};
    res.passed = worst <= 1e-10 && increases == 0;
    return res;
}

inline CriterionResult paranorm_axioms() {
    CriterionResult res{6, "paranorm axioms on 1000 random triples: subadditive, g(bx) <= max(1,|b|) g(x), zero and symmetry exact"};
    const std::size_t n = 48;
    CounterRng rng(606);
    std::size_t sub = 0, scal = 0, zero = 0, sym = 0;
    for (int c = 0; c < 1000; ++c) {
        const BandSystem sys = random_system(rng, n);
        std::vector<double> pv(n);
        for (auto& v : pv) v = rng.uniform(0.25, 3.0);
        const ExponentSeq p(pv);
        const auto xv = random_complex(rng, n);
        const auto yv = random_complex(rng, n);
        const Complex beta{rng.uniform(-3, 3), rng.uniform(-3, 3)};
        std::vector<Complex> sum(n), scaled(n), neg(n);
        for (std::size_t k = 0; k < n; ++k) {
            sum[k] = xv[k] + yv[k];
            scaled[k] = beta * xv[k];
            neg[k] = -xv[k];
        }
        for (auto kind : {ParanormKind::sup, ParanormKind::sum}) {
            auto g = [&](const std::vector<Complex>& v) { return space_paranorm(FiniteSeq(v), sys, p, kind); };
            const double gx = g(xv);
            const double slack = 1e-12;
            sub += g(sum) <= (gx + g(yv)) * (1 + slack) ? 0 : 1;
            scal += g(scaled) <= std::max(1.0, std::abs(beta)) * gx * (1 + slack) ? 0 : 1;
            zero += g(std::vector<Complex>(n, Complex{})) == 0.0 ? 0 : 1;
            sym += g(neg) == gx ? 0 : 1;
        }
    }
    res.details = {{"subadditivity_violations", sub}, {"scalar_violations", scal}, {"zero_violations", zero}, {"symmetry_violations", sym}};
    res.passed = sub == 0 && scal == 0 && zero == 0 && sym == 0;
    return res;
}

inline CriterionResult core_agreement() {
    CriterionResult res{7, "cluster hull vs disc intersection, Hausdorff < 0.05, N = 4000, window [1000, 4000), runtime < 30 s"};
    const std::size_t n = 4000;
    const Window w{1000, n};
    const auto t0 = std::chrono::steady_clock::now();
    json per = json::array();
    bool ok = true;
    for (const auto& [name, x] : core_family(n)) {
        const double d = hausdorff_distance(cluster_hull(x, w), disc_core(x, w));
        ok = ok && d < 0.05;
        per.push_back({{"sequence", name}, {"hausdorff", d}});
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    res.details = {{"sequences", per}, {"runtime_within_limit", secs < 30.0}};
    res.passed = ok && secs < 30.0;
    return res;
}

inline MatrixSpec cesaro_lift(const BandSystem& sys, double scale) {
    return MatrixSpec::generator(GeneratorName::cesaro).scaled(scale).lifted(sys);
}

inline CriterionResult inclusion_k_core(double scale) {
    CriterionResult res{8, "alpha-core(Bx) in K-core(x) at tol 0.05 for btilde = Cesaro; btilde = 2 Cesaro on (-1)^k has violation > 0.5"};
    const std::size_t n = 4000;
    const Window w{1000, n};
    const BandSystem sys = smooth_system(n);
    SequenceSpec alt, roots, sq, rnd;
    alt.name = SequenceName::alternating;
    roots.name = SequenceName::roots_of_unity;
    sq.name = SequenceName::square_indicator;
    rnd.name = SequenceName::random_bounded;
    rnd.seed = 7;
    const std::vector<std::pair<std::string, FiniteSeq>> family{
        {"alternating", make_sequence(alt, n)}, {"roots_of_unity(4)", make_sequence(roots, n)},
        {"square_indicator", make_sequence(sq, n)}, {"random_bounded", make_sequence(rnd, n)}};

    const MatrixSpec b = cesaro_lift(sys, scale);
    json per = json::array();
    bool ok = true;
    for (const auto& [name, x] : family) {
        const FiniteSeq bx(b.apply(x.values()));
        const Inclusion inc = region_included(alpha_core(bx, sys, w), cluster_hull(x, w), 0.05);
        ok = ok && inc.included;
        per.push_back({{"sequence", name}, {"included", inc.included}, {"max_violation", inc.max_violation}});
    }

    const MatrixSpec neg = cesaro_lift(sys, 2.0);
    const FiniteSeq x = family[0].second;
    const Inclusion control = region_included(alpha_core(FiniteSeq(neg.apply(x.values())), sys, w), cluster_hull(x, w), 0.05);
    const bool control_ok = !control.included && control.max_violation > 0.5;

    // Diagnostic: a sequence on which the doubled matrix does leave the core.
    SequenceSpec ones;
    ones.name = SequenceName::ones;
    const FiniteSeq e = make_sequence(ones, n);
    const Inclusion witness = region_included(alpha_core(FiniteSeq(neg.apply(e.values())), sys, w), cluster_hull(e, w), 0.05);

    res.details = {{"btilde_scale", scale},
                   {"sequences", per},
                   {"negative_control", {{"sequence", "alternating"}, {"included", control.included}, {"max_violation", control.max_violation}}},
                   {"diagnostic_doubled_on_e", {{"included", witness.included}, {"max_violation", witness.max_violation}}}};
    res.passed = ok && control_ok;
    return res;
}

inline CriterionResult inclusion_st_core(double scale) {
    CriterionResult res{9, "square indicator: alpha-core(Bx) support <= 0.05 in every direction"};
    const std::size_t n = 4000;
    const Window w{1000, n};
    const BandSystem sys = smooth_system(n);
    SequenceSpec sq;
    sq.name = SequenceName::square_indicator;
    const FiniteSeq x = make_sequence(sq, n);
    const RegionEstimate core = alpha_core(FiniteSeq(cesaro_lift(sys, scale).apply(x.values())), sys, w);
    const double hmax = *std::max_element(core.support.begin(), core.support.end());
    const RegionEstimate st = st_core(x, w);
    const auto inc = region_included(core, st, 0.05);
    res.details = {{"btilde_scale", scale}, {"max_support", hmax}, {"included_in_st_core", inc.included}, {"st_core_max_violation", inc.max_violation}};
    res.passed = hmax <= 0.05;
    return res;
}

inline CriterionResult witness_blocks() {
    CriterionResult res{10, "sign witness on a 4-block matrix reaches the absolute row sums exactly"};
    const std::size_t n = 16;
    CounterRng rng(1010);
    Matrix a(n, n);
    std::vector<RowBlock> blocks;
    for (std::size_t b = 0; b < 4; ++b) {
        const std::size_t row = 4 * b + 3;
        for (std::size_t k = 4 * b; k < 4 * b + 4; ++k) a(row, k) = rng.sign() * rng.uniform(0.1, 2.0);
        blocks.push_back({row, 4 * b, 4 * b + 4});
    }
    const MatrixSpec spec = MatrixSpec::dense(a);
    const FiniteSeq y = sign_witness(spec, blocks, n);
    json per = json::array();
    bool ok = y.sup_norm() <= 1.0;
    for (const auto& blk : blocks) {
        Complex achieved{};
        double target = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            achieved += a(blk.row, k) * y[k];
            target += std::abs(a(blk.row, k));
        }
        ok = ok && achieved == Complex(target);
        per.push_back({{"row", blk.row}, {"achieved", io::to_json(achieved)}, {"abs_row_sum", target}});
    }
    res.details = {{"rows", per}, {"sup_norm_y", y.sup_norm()}};
    res.passed = ok;
    return res;
}

inline CriterionResult catalog_fidelity(const std::filesystem::path& table_path) {
    CriterionResult res{11, "rule tables match the checked-in transcription; worked condition examples"};
    bool tables_ok = false;
    std::string table_note;
    if (table_path.empty()) {
        table_note = "no transcription path configured";
    } else {
        try {
            const json expected = io::read_json_file(table_path);
            tables_ok = expected == io::rule_tables();
            if (!tables_ok) table_note = "serialized tables differ from the transcription";
        } catch (const std::exception& ex) {
            table_note = ex.what();
        }
    }

    // btilde = Cesaro: the row absolute sums equal 1.
    const std::vector<std::size_t> ladder{32, 64, 128, 256};
    const BandSystem sys = smooth_system(256);
    MatrixLadder bt;
    bt.ns = ladder;
    for (std::size_t n : ladder) bt.mats.push_back(btilde(cesaro_lift(sys, 1.0), sys, n));
    ConditionInputs in;
    in.source = &bt;
    in.p = ExponentSeq::constant(1.0, 256);
    in.q = ExponentSeq::constant(1.0, 256);
    const ConditionVerdict rowabs = eval_condition("rowabs_sum_one", in, ladder);
    const double observed = *rowabs.estimates.back().observed;
    const bool rowabs_ok = rowabs.verdict == Verdict::holds && std::abs(observed - 1.0) <= 1e-12;

    // E = identity.
    MatrixLadder eye;
    eye.ns = ladder;
    for (std::size_t n : ladder) eye.mats.push_back(Matrix::identity(n));
    ConditionInputs ein;
    ein.source = &eye;
    ein.p = ExponentSeq::constant(1.0, 256);
    ein.q = ExponentSeq::constant(1.0, 256);
    const ConditionVerdict m37 = eval_condition("mt37", ein, ladder);
    bool m37_values = true;
    for (const auto& e : m37.estimates) {
        const double mval = std::stod(e.witness.substr(2));
        m37_values = m37_values && std::abs(e.value - 1.0 / mval) <= 1e-15;
    }
    const bool m37_ok = m37.verdict == Verdict::holds && m37_values;
    const ConditionVerdict m40 = eval_condition("mt40", ein, ladder);
    const bool m40_ok = m40.verdict == Verdict::fails;

    res.details = {{"tables_match", tables_ok},
                   {"rowabs_sum_one", {{"verdict", to_string(rowabs.verdict)}, {"observed", observed}}},
                   {"mt37_identity", {{"verdict", to_string(m37.verdict)}, {"values_equal_one_over_m", m37_values}}},
                   {"mt40_identity", {{"verdict", to_string(m40.verdict)}}}};
    if (!table_note.empty()) res.details["table_note"] = table_note;
    res.passed = tables_ok && rowabs_ok && m37_ok && m40_ok;
    return res;
}

inline json results_json(const std::vector<CriterionResult>& rs) {
    json arr = json::array();
    for (const auto& r : rs) arr.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"details", r.details}});
    return arr;
}

}  // namespace detail

inline CriterionResult run_criterion(int id, const SuiteConfig& cfg);

namespace detail {

/// Criteria 1-11 evaluated twice must serialize identically and all pass.
inline CriterionResult determinism(const SuiteConfig& cfg) {
    CriterionResult res{12, "suite exits 0 and repeated runs are byte-identical"};
    std::vector<CriterionResult> first, second;
    for (int id = 1; id < kCriterionCount; ++id) first.push_back(run_criterion(id, cfg));
    for (int id = 1; id < kCriterionCount; ++id) second.push_back(run_criterion(id, cfg));
    const bool identical = io::stable_dump(results_json(first)) == io::stable_dump(results_json(second));
    std::vector<int> red;
    for (const auto& r : first) {
        if (!r.passed) red.push_back(r.id);
    }
    res.details = {{"byte_identical", identical}, {"failing_criteria", red}};
    res.passed = identical && red.empty();
    return res;
}

}  // namespace detail

inline CriterionResult run_criterion(int id, const SuiteConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    switch (id) {
        case 1: r = detail::round_trip(); break;
        case 2: r = detail::kernel_identity(); break;
        case 3: r = detail::duality_identities(); break;
        case 4: r = detail::subset_oracle(); break;
        case 5: r = detail::basis_expansion(); break;
        case 6: r = detail::paranorm_axioms(); break;
        case 7: r = detail::core_agreement(); break;
        case 8: r = detail::inclusion_k_core(cfg.inclusion_scale); break;
        case 9: r = detail::inclusion_st_core(cfg.inclusion_scale); break;
        case 10: r = detail::witness_blocks(); break;
        case 11: r = detail::catalog_fidelity(cfg.rule_table_path); break;
        case 12: r = detail::determinism(cfg); break;
        default: throw InvalidArgument("criterion " + std::to_string(id) + " does not exist");
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

/// Exit code: 0 all selected pass, 1 some fail, 2 nothing selected.
inline SuiteReport run_suite(const SuiteConfig& cfg, const std::function<void(const CriterionResult&)>& on_result = {}) {
    std::vector<int> ids;
    if (cfg.select) {
        ids = *cfg.select;
    } else {
        for (int i = 1; i <= kCriterionCount; ++i) ids.push_back(i);
    }
    SuiteReport rep;
    if (ids.empty()) return rep;
    bool all = true;
    for (int id : ids) {
        rep.results.push_back(run_criterion(id, cfg));
        all = all && rep.results.back().passed;
        if (on_result) on_result(rep.results.back());
    }
    rep.exit_code = all ? 0 : 1;
    return rep;
}

inline json to_json(const SuiteReport& r) {
    return {{"criteria", detail::results_json(r.results)}, {"exit_code", r.exit_code}};
}

inline std::string summary_line(const CriterionResult& r) {
    return std::string(r.passed ? "PASS" : "FAIL") + "  criterion " + std::to_string(r.id) + ": " + r.title;
}

}  // namespace seqcore::verify
