// seqcore: batch front end. Every subcommand reads a JSON config (--config) whose
// keys may be overridden by flags, prints a stable JSON report on stdout and
// optionally writes it to --out.
//
// Exit status: 0 verdicts hold / inclusion true, 1 some verdict fails / inclusion
// false, 2 inconclusive, 3 invalid input or any other error.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "seqcore/io.hpp"
#include "seqcore/seqcore.hpp"
#include "seqcore/verify/suite.hpp"

namespace {

using namespace seqcore;
using io::json;
using io::SchemaError;

constexpr std::size_t kDefaultLength = 4000;
const std::vector<std::size_t> kDefaultLadder{32, 64, 128, 256, 512};

struct Flags {
    std::string config;
    std::string out;
    std::string ladder;
    std::optional<double> tol;
    std::optional<std::size_t> directions;
    std::string window;
    std::string x;
    std::string y;
    std::string system;
    std::optional<std::size_t> length;
    std::string kind;
};

struct Outcome {
    json report;
    int exit_code = 0;
    std::optional<RegionEstimate> region;  // exported as CSV when --out is given
};

Outcome make(json report, int exit_code = 0) {
    Outcome o;
    o.report = std::move(report);
    o.exit_code = exit_code;
    return o;
}

int verdict_exit(Verdict v) {
    switch (v) {
        case Verdict::holds: return 0;
        case Verdict::fails: return 1;
        case Verdict::inconclusive: return 2;
    }
    return 2;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, sep);) out.push_back(item);
    return out;
}

std::size_t parse_count(const std::string& s, const char* flag) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.empty()) throw SchemaError(std::string(flag) + ": expected a non-negative integer, got '" + s + "'");
    return static_cast<std::size_t>(v);
}

/// A flag value that names a JSON file, holds inline JSON, or is a bare word.
json flag_value(const std::string& v) {
    if (!v.empty() && (v.front() == '{' || v.front() == '[')) {
        try {
            return json::parse(v);
        } catch (const json::parse_error& e) {
            throw SchemaError(std::string("inline JSON: ") + e.what());
        }
    }
    if (std::filesystem::is_regular_file(v)) return io::read_json_file(v);
    return json(v);
}

json load_config(const Flags& f) {
    json cfg = json::object();
    if (!f.config.empty()) {
        cfg = io::read_json_file(f.config);
        if (!cfg.is_object()) throw SchemaError("config: expected a JSON object");
    }
    if (!f.ladder.empty()) {
        json l = json::array();
        for (const auto& part : split(f.ladder, ',')) l.push_back(parse_count(part, "--ladder"));
        cfg["ladder"] = l;
    }
    if (f.tol) cfg["tol"] = *f.tol;
    if (f.directions) cfg["directions"] = *f.directions;
    if (!f.window.empty()) {
        const auto parts = split(f.window, ',');
        if (parts.size() != 2) throw SchemaError("--window: expected 'n0,n'");
        cfg["window"] = json::array({parse_count(parts[0], "--window"), parse_count(parts[1], "--window")});
    }
    if (!f.x.empty()) cfg["x"] = flag_value(f.x);
    if (!f.y.empty()) cfg["y"] = flag_value(f.y);
    if (!f.system.empty()) {
        json s = flag_value(f.system);
        cfg["system"] = s.is_string() ? json{{"generator", s}} : s;
    }
    if (f.length) cfg["length"] = *f.length;
    if (!f.kind.empty()) cfg["kind"] = f.kind;
    return cfg;
}

std::filesystem::path config_dir(const Flags& f) {
    return f.config.empty() ? std::filesystem::path{} : std::filesystem::path(f.config).parent_path();
}

const json& require(const json& cfg, const char* key, const char* cmd) {
    if (!cfg.contains(key)) throw SchemaError(std::string(cmd) + ": missing key '" + key + "'");
    return cfg.at(key);
}

/// Explicit values fix the length; otherwise "length" or the default.
std::size_t resolve_length(const json& cfg, const char* seq_key, std::size_t fallback) {
    std::optional<std::size_t> explicit_len;
    if (cfg.contains(seq_key)) {
        const json& s = cfg[seq_key];
        if (s.is_array()) explicit_len = s.size();
        if (s.is_object() && s.contains("values") && s["values"].is_array()) explicit_len = s["values"].size();
    }
    if (cfg.contains("length")) {
        const std::size_t n = io::get_size(cfg["length"], "length");
        if (n == 0) throw SchemaError("length: must be positive");
        if (explicit_len && *explicit_len != n) throw SchemaError("length: does not match the explicit sequence");
        return n;
    }
    return explicit_len.value_or(fallback);
}

FiniteSeq sequence_of(const json& cfg, const char* key, std::size_t len, const char* cmd) {
    FiniteSeq s = io::parse_sequence(require(cfg, key, cmd), len);
    if (s.size() != len) throw SchemaError(std::string(cmd) + ": sequence '" + key + "' has the wrong length");
    return s;
}

std::vector<std::size_t> ladder_of(const json& cfg) {
    return cfg.contains("ladder") ? io::parse_ladder(cfg["ladder"], "ladder") : kDefaultLadder;
}

VerdictPolicy policy_of(const json& cfg) { return cfg.contains("policy") ? io::parse_policy(cfg["policy"]) : VerdictPolicy{}; }

ParanormKind paranorm_kind(const json& cfg) {
    const std::string k = cfg.contains("paranorm") ? io::get_string(cfg["paranorm"], "paranorm") : "sup";
    if (k == "sup") return ParanormKind::sup;
    if (k == "sum") return ParanormKind::sum;
    throw SchemaError("paranorm: expected 'sup' or 'sum'");
}

// --- sequence commands ------------------------------------------------------

Outcome transform_cmd(const json& cfg) {
    io::require_keys(cfg, {"system", "x", "length"}, "transform");
    const std::size_t n = resolve_length(cfg, "x", kDefaultLength);
    const BandSystem sys = io::parse_system(require(cfg, "system", "transform"), n);
    const FiniteSeq y = forward_transform(sequence_of(cfg, "x", n, "transform"), sys);
    return make({{"command", "transform"}, {"length", n}, {"y", io::to_json(y)}});
}

Outcome invert_cmd(const json& cfg) {
    io::require_keys(cfg, {"system", "y", "length"}, "invert");
    const std::size_t n = resolve_length(cfg, "y", kDefaultLength);
    const BandSystem sys = io::parse_system(require(cfg, "system", "invert"), n);
    const FiniteSeq x = inverse_transform(sequence_of(cfg, "y", n, "invert"), sys);
    return make({{"command", "invert"}, {"length", n}, {"x", io::to_json(x)}});
}

Outcome paranorm_cmd(const json& cfg) {
    io::require_keys(cfg, {"system", "x", "p", "paranorm", "length"}, "paranorm");
    const std::size_t n = resolve_length(cfg, "x", kDefaultLength);
    const BandSystem sys = io::parse_system(require(cfg, "system", "paranorm"), n);
    const ExponentSeq p = io::parse_exponents(require(cfg, "p", "paranorm"), n, "p");
    const ParanormKind kind = paranorm_kind(cfg);
    const double g = space_paranorm(sequence_of(cfg, "x", n, "paranorm"), sys, p, kind);
    return make({{"command", "paranorm"}, {"length", n}, {"paranorm", kind == ParanormKind::sup ? "sup" : "sum"}, {"value", g}});
}

Outcome basis_residual_cmd(const json& cfg) {
    io::require_keys(cfg, {"system", "x", "p", "n", "length"}, "basis-residual");
    const std::size_t len = resolve_length(cfg, "x", kDefaultLength);
    const BandSystem sys = io::parse_system(require(cfg, "system", "basis-residual"), len);
    const ExponentSeq p = io::parse_exponents(require(cfg, "p", "basis-residual"), len, "p");
    const FiniteSeq x = sequence_of(cfg, "x", len, "basis-residual");
    std::vector<std::size_t> ns;
    if (!cfg.contains("n")) {
        ns = {0, len / 4, len / 2, (3 * len) / 4};
    } else if (cfg["n"].is_array()) {
        for (const auto& v : cfg["n"]) ns.push_back(io::get_size(v, "n"));
    } else {
        ns = {io::get_size(cfg["n"], "n")};
    }
    const FiniteSeq mu = forward_transform(x, sys);
    json rows = json::array();
    for (std::size_t n : ns) {
        const double r = expansion_residual(x, sys, p, n);
        const double t = tail_paranorm(mu, p, n);
        rows.push_back({{"n", n}, {"residual", r}, {"tail_paranorm", t}, {"difference", std::abs(r - t)}});
    }
    return make({{"command", "basis-residual"}, {"length", len}, {"residuals", rows}});
}

// --- reports ----------------------------------------------------------------

Outcome dual_check_cmd(const json& cfg) {
    io::require_keys(cfg, {"a", "system", "p", "space", "dual", "ladder", "policy"}, "dual-check");
    const auto ladder = ladder_of(cfg);
    const std::size_t n = ladder.back();
    const BandSystem sys = io::parse_system(require(cfg, "system", "dual-check"), n);
    const ExponentSeq p = io::parse_exponents(require(cfg, "p", "dual-check"), n, "p");
    const FiniteSeq a = sequence_of(cfg, "a", n, "dual-check");
    const SpaceId space = parse_space(io::get_string(require(cfg, "space", "dual-check"), "space"));
    const DualKind dual = parse_dual(io::get_string(require(cfg, "dual", "dual-check"), "dual"));
    const DualReport rep = dual_report(a, sys, p, space, dual, ladder, policy_of(cfg));
    json j = io::to_json(rep);
    j["command"] = "dual-check";
    return make(j, verdict_exit(rep.aggregate));
}

Outcome class_check_cmd(const json& cfg) {
    io::require_keys(cfg, {"matrix", "class", "system", "p", "q", "beta_k", "beta", "ladder", "density_sets", "density_matrix",
                           "fixed_rows", "policy"},
                     "class-check");
    const auto ladder = ladder_of(cfg);
    const std::size_t n = ladder.back();
    const BandSystem sys = io::parse_system(require(cfg, "system", "class-check"), n);
    const MatrixSpec a = io::parse_matrix(require(cfg, "matrix", "class-check"), n);
    const ExponentSeq p = cfg.contains("p") ? io::parse_exponents(cfg["p"], n, "p") : ExponentSeq::constant(1.0, n);
    ClassOptions opt;
    if (cfg.contains("q")) opt.q = io::parse_exponents(cfg["q"], n, "q");
    if (cfg.contains("beta_k")) opt.beta_k = io::parse_complexes(cfg["beta_k"], "beta_k");
    if (cfg.contains("beta")) opt.beta = io::parse_complex(cfg["beta"], "beta");
    if (cfg.contains("density_sets")) {
        if (!cfg["density_sets"].is_array()) throw SchemaError("density_sets: expected an array of set names");
        for (const auto& s : cfg["density_sets"]) opt.density_sets.push_back(index_set(io::get_string(s, "density_sets")));
    }
    if (cfg.contains("density_matrix")) opt.density_matrix = io::parse_matrix(cfg["density_matrix"], n);
    if (cfg.contains("fixed_rows")) opt.fixed_rows = io::get_size(cfg["fixed_rows"], "fixed_rows");
    const std::string id = io::get_string(require(cfg, "class", "class-check"), "class");
    const ClassReport rep = class_report(a, id, sys, p, ladder, opt, policy_of(cfg));
    json j = io::to_json(rep);
    j["command"] = "class-check";
    return make(j, verdict_exit(rep.aggregate));
}

// --- cores ------------------------------------------------------------------

struct CoreSettings {
    std::size_t length = kDefaultLength;
    Window window;
    CoreOptions opt;
};

CoreSettings core_settings(const json& cfg) {
    CoreSettings s;
    s.length = cfg.contains("length") ? io::get_size(cfg["length"], "length") : kDefaultLength;
    if (s.length == 0) throw SchemaError("length: must be positive");
    s.window = Window::tail(s.length);
    if (cfg.contains("window")) {
        const json& w = cfg["window"];
        if (!w.is_array() || w.size() != 2) throw SchemaError("window: expected [n0, n]");
        s.window = {io::get_size(w[0], "window"), io::get_size(w[1], "window")};
    }
    if (cfg.contains("directions")) s.opt.directions = io::get_size(cfg["directions"], "directions");
    if (cfg.contains("grid")) s.opt.grid = io::get_size(cfg["grid"], "grid");
    if (cfg.contains("grid_scale")) s.opt.grid_scale = io::get_double(cfg["grid_scale"], "grid_scale");
    return s;
}

/// kind: alpha (band transform cluster hull), knopp (cluster hull), knopp-disc
/// (disc intersection), st (statistical disc intersection). "matrix" is applied
/// to x first.
RegionEstimate region_of(const json& spec, const CoreSettings& s, const char* where) {
    io::require_keys(spec, {"kind", "x", "system", "matrix", "density_tol"}, where);
    const std::string kind = io::get_string(require(spec, "kind", where), "kind");
    FiniteSeq x = io::parse_sequence(require(spec, "x", where), s.length);
    if (x.size() != s.length) throw SchemaError(std::string(where) + ": sequence length differs from 'length'");
    if (spec.contains("matrix")) x = FiniteSeq(io::parse_matrix(spec["matrix"], s.length).apply(x.values()));
    CoreOptions opt = s.opt;
    if (spec.contains("density_tol")) opt.density_tol = io::get_double(spec["density_tol"], "density_tol");
    if (kind == "alpha") return alpha_core(x, io::parse_system(require(spec, "system", where), s.length), s.window, opt.directions);
    if (spec.contains("system")) throw SchemaError(std::string(where) + ": 'system' only applies to kind alpha");
    if (kind == "knopp") return cluster_hull(x, s.window, opt.directions);
    if (kind == "knopp-disc") return disc_core(x, s.window, opt);
    if (kind == "st") return st_core(x, s.window, opt);
    throw SchemaError(std::string(where) + ": unknown kind '" + kind + "' (expected alpha, knopp, knopp-disc or st)");
}

Outcome core_cmd(const json& cfg) {
    io::require_keys(cfg, {"kind", "x", "system", "matrix", "length", "window", "directions", "grid", "grid_scale", "tol"}, "core");
    const CoreSettings s = core_settings(cfg);
    json spec = json::object();
    for (auto key : {"kind", "x", "system", "matrix"}) {
        if (cfg.contains(key)) spec[key] = cfg[key];
    }
    if (cfg.contains("tol")) spec["density_tol"] = cfg["tol"];
    Outcome o;
    o.region = region_of(spec, s, "core");
    o.report = io::to_json(*o.region);
    o.report["command"] = "core";
    o.report["kind"] = spec["kind"];
    o.exit_code = o.region->warnings.empty() ? 0 : 2;
    return o;
}

Outcome core_include_cmd(const json& cfg) {
    io::require_keys(cfg, {"inner", "outer", "x", "system", "length", "window", "directions", "grid", "grid_scale", "tol"},
                     "core-include");
    const CoreSettings s = core_settings(cfg);
    const double tol = cfg.contains("tol") ? io::get_double(cfg["tol"], "tol") : 0.05;
    auto with_defaults = [&](const char* key) {
        json spec = require(cfg, key, "core-include");
        if (!spec.is_object()) throw SchemaError(std::string("core-include.") + key + ": expected an object");
        if (!spec.contains("x") && cfg.contains("x")) spec["x"] = cfg["x"];
        const bool alpha = spec.contains("kind") && spec["kind"] == "alpha";
        if (alpha && !spec.contains("system") && cfg.contains("system")) spec["system"] = cfg["system"];
        return spec;
    };
    const RegionEstimate inner = region_of(with_defaults("inner"), s, "core-include.inner");
    const RegionEstimate outer = region_of(with_defaults("outer"), s, "core-include.outer");
    const Inclusion inc = region_included(inner, outer, tol);
    const bool warned = !inner.warnings.empty() || !outer.warnings.empty();
    json j{{"command", "core-include"},
           {"tol", tol},
           {"included", inc.included},
           {"max_violation", inc.max_violation},
           {"inner", io::to_json(inner)},
           {"outer", io::to_json(outer)}};
    return make(j, warned ? 2 : (inc.included ? 0 : 1));
}

// --- verify -----------------------------------------------------------------

Outcome verify_cmd(const json& cfg, const std::filesystem::path& base) {
    verify::SuiteConfig sc = verify::parse_suite_config(cfg);
    if (sc.rule_table_path.empty()) {
#ifdef SEQCORE_RULE_TABLE_PATH
        sc.rule_table_path = SEQCORE_RULE_TABLE_PATH;
#endif
    } else if (sc.rule_table_path.is_relative()) {
        sc.rule_table_path = base / sc.rule_table_path;
    }
    const verify::SuiteReport rep = verify::run_suite(sc, [](const verify::CriterionResult& r) {
        std::fprintf(stderr, "%s\n", verify::summary_line(r).c_str());
    });
    json j = verify::to_json(rep);
    j["command"] = "verify";
    return make(j, rep.exit_code);
}

int run(const std::function<Outcome(const json&)>& cmd, const Flags& f) {
    try {
        const Outcome o = cmd(load_config(f));
        const std::string text = io::stable_dump(o.report) + "\n";
        if (!f.out.empty()) {
            if (o.region) {
                io::export_region(*o.region, f.out);
            } else {
                io::write_text(f.out, text);
            }
        }
        std::fputs(text.c_str(), stdout);
        return o.exit_code;
    } catch (const SchemaError& e) {
        std::fprintf(stderr, "seqcore: schema error: %s\n", e.what());
    } catch (const json::exception& e) {
        std::fprintf(stderr, "seqcore: schema error: %s\n", e.what());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "seqcore: error: %s\n", e.what());
    }
    return 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"seqcore: band transforms, duals, matrix classes and cores"};
    app.require_subcommand(1);
    Flags f;
    int code = 0;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", f.config, "JSON config file");
        sub->add_option("--out", f.out, "write the report (or region CSV) here");
    };
    auto sequence_flags = [&](CLI::App* sub) {
        sub->add_option("--x", f.x, "sequence name, inline JSON or JSON file");
        sub->add_option("--system", f.system, "band system: generator name, inline JSON or JSON file");
        sub->add_option("--length", f.length, "sequence length");
    };
    auto core_flags = [&](CLI::App* sub) {
        sub->add_option("--window", f.window, "tail window 'n0,n'");
        sub->add_option("--directions", f.directions, "support directions");
        sub->add_option("--tol", f.tol, "tolerance");
    };
    auto bind = [&](CLI::App* sub, std::function<Outcome(const json&)> cmd) {
        sub->callback([&f, &code, cmd] { code = run(cmd, f); });
    };

    auto* transform = app.add_subcommand("transform", "band transform y of x");
    common(transform);
    sequence_flags(transform);
    bind(transform, transform_cmd);

    auto* invert = app.add_subcommand("invert", "x from its transform y");
    common(invert);
    invert->add_option("--y", f.y, "sequence name, inline JSON or JSON file");
    invert->add_option("--system", f.system, "band system: generator name, inline JSON or JSON file");
    invert->add_option("--length", f.length, "sequence length");
    bind(invert, invert_cmd);

    auto* paranorm = app.add_subcommand("paranorm", "paranorm of x in the transformed space");
    common(paranorm);
    sequence_flags(paranorm);
    bind(paranorm, paranorm_cmd);

    auto* residual = app.add_subcommand("basis-residual", "Schauder expansion residuals against the tail paranorm");
    common(residual);
    sequence_flags(residual);
    bind(residual, basis_residual_cmd);

    auto* dual = app.add_subcommand("dual-check", "dual membership report for a sequence a");
    common(dual);
    dual->add_option("--ladder", f.ladder, "truncation ladder 'n1,n2,...'");
    dual->add_option("--system", f.system, "band system: generator name, inline JSON or JSON file");
    bind(dual, dual_check_cmd);

    auto* cls = app.add_subcommand("class-check", "matrix class report");
    common(cls);
    cls->add_option("--ladder", f.ladder, "truncation ladder 'n1,n2,...'");
    cls->add_option("--system", f.system, "band system: generator name, inline JSON or JSON file");
    bind(cls, class_check_cmd);

    auto* core = app.add_subcommand("core", "core region of a sequence");
    common(core);
    sequence_flags(core);
    core_flags(core);
    core->add_option("--kind", f.kind, "alpha, knopp, knopp-disc or st");
    bind(core, core_cmd);

    auto* include = app.add_subcommand("core-include", "inclusion of one core region in another");
    common(include);
    sequence_flags(include);
    core_flags(include);
    bind(include, core_include_cmd);

    auto* ver = app.add_subcommand("verify", "acceptance battery");
    common(ver);
    ver->callback([&] { code = run([&](const json& cfg) { return verify_cmd(cfg, config_dir(f)); }, f); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 3;
    }
    return code;
}
