#pragma once

// JSON schemas for systems, sequences, matrices and exponents; report
// serialization; byte-stable output (sorted keys, %.17g floats, non-finite as
// null); region export.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "seqcore/cores.hpp"
#include "seqcore/density.hpp"
#include "seqcore/duals.hpp"
#include "seqcore/generators.hpp"
#include "seqcore/matclass.hpp"
#include "seqcore/matrix_spec.hpp"
#include "seqcore/types.hpp"
#include "seqcore/verdict.hpp"

namespace seqcore::io {

using json = nlohmann::json;

/// Raised on schema violations in configuration input.
class SchemaError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

// ---------------------------------------------------------------------------
// Stable output

inline std::string format_double(double v) {
    if (!std::isfinite(v)) return "null";
    if (v == 0.0) return std::signbit(v) ? "-0" : "0";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace detail {

inline void dump_string(std::string& out, const std::string& s) { out += json(s).dump(); }

inline void dump(std::string& out, const json& j, int indent, int depth) {
    const std::string pad = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
    const std::string close = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
    const char* sep = indent > 0 ? ": " : ":";
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {  // nlohmann objects iterate in key order
                if (!first) out += ',';
                first = false;
                out += pad;
                dump_string(out, it.key());
                out += sep;
                dump(out, it.value(), indent, depth + 1);
            }
            out += close + '}';
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += '[';
            bool first = true;
            for (const auto& v : j) {
                if (!first) out += ',';
                first = false;
                out += pad;
                dump(out, v, indent, depth + 1);
            }
            out += close + ']';
            return;
        }
        case json::value_t::number_float: out += format_double(j.get<double>()); return;
        default: out += j.dump(); return;
    }
}

}  // namespace detail

inline std::string stable_dump(const json& j, int indent = 2) {
    std::string out;
    detail::dump(out, j, indent, 0);
    return out;
}

inline json to_json(Complex z) {
    if (z.imag() == 0.0) return z.real();
    return json::array({z.real(), z.imag()});
}

inline json optional_double(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

// ---------------------------------------------------------------------------
// Schema helpers

inline void require_keys(const json& j, std::initializer_list<std::string_view> allowed, std::string_view where) {
    if (!j.is_object()) throw SchemaError(std::string(where) + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (auto a : allowed) ok = ok || it.key() == a;
        if (!ok) throw SchemaError(std::string(where) + ": unknown key '" + it.key() + "'");
    }
}

inline double get_double(const json& j, std::string_view where) {
    if (!j.is_number()) throw SchemaError(std::string(where) + ": expected a number");
    return j.get<double>();
}

inline std::size_t get_size(const json& j, std::string_view where) {
    if (!j.is_number_integer() || j.get<long long>() < 0) throw SchemaError(std::string(where) + ": expected a non-negative integer");
    return j.get<std::size_t>();
}

inline std::string get_string(const json& j, std::string_view where) {
    if (!j.is_string()) throw SchemaError(std::string(where) + ": expected a string");
    return j.get<std::string>();
}

inline Complex parse_complex(const json& j, std::string_view where) {
    if (j.is_number()) return j.get<double>();
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) return {j[0].get<double>(), j[1].get<double>()};
    throw SchemaError(std::string(where) + ": expected a number or [re, im]");
}

inline std::vector<double> parse_reals(const json& j, std::string_view where) {
    if (!j.is_array()) throw SchemaError(std::string(where) + ": expected an array of numbers");
    std::vector<double> out;
    for (const auto& v : j) out.push_back(get_double(v, where));
    return out;
}

inline std::vector<Complex> parse_complexes(const json& j, std::string_view where) {
    if (!j.is_array()) throw SchemaError(std::string(where) + ": expected an array");
    std::vector<Complex> out;
    for (const auto& v : j) out.push_back(parse_complex(v, where));
    return out;
}

inline std::vector<std::size_t> parse_ladder(const json& j, std::string_view where) {
    if (!j.is_array() || j.empty()) throw SchemaError(std::string(where) + ": expected a non-empty array of integers");
    std::vector<std::size_t> out;
    for (const auto& v : j) out.push_back(get_size(v, where));
    seqcore::detail::require_increasing(out, std::string(where).c_str());
    return out;
}

inline json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot read '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const json::parse_error& e) {
        throw SchemaError("invalid JSON in '" + path.string() + "': " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Input schemas

/// {"r": [...], "s": [...], "alpha": [...]} or {"generator": "difference" | "constant" | "band", "params": {...}}.
inline BandSystem parse_system(const json& j, std::size_t len) {
    require_keys(j, {"r", "s", "alpha", "generator", "params"}, "system");
    if (j.contains("generator")) {
        const std::string g = get_string(j["generator"], "system.generator");
        const json params = j.value("params", json::object());
        if (g == "difference") {
            require_keys(params, {}, "system.params");
            return BandSystem::difference(len);
        }
        if (g == "constant") {
            require_keys(params, {"r", "s", "alpha"}, "system.params");
            return BandSystem::constant(get_double(params.at("r"), "system.params.r"), get_double(params.at("s"), "system.params.s"),
                                        get_double(params.value("alpha", json(1.0)), "system.params.alpha"), len);
        }
        if (g == "band") {
            require_keys(params, {"r", "s"}, "system.params");
            return BandSystem::constant(get_double(params.at("r"), "system.params.r"), get_double(params.at("s"), "system.params.s"), 1.0, len);
        }
        throw SchemaError("system.generator: unknown generator '" + g + "' (expected difference, constant or band)");
    }
    for (auto key : {"r", "s", "alpha"}) {
        if (!j.contains(key)) throw SchemaError(std::string("system: missing key '") + key + "'");
    }
    return BandSystem(parse_reals(j["r"], "system.r"), parse_reals(j["s"], "system.s"), parse_reals(j["alpha"], "system.alpha"));
}

inline SequenceName parse_sequence_name(std::string_view s) {
    if (s == "alternating") return SequenceName::alternating;
    if (s == "roots_of_unity") return SequenceName::roots_of_unity;
    if (s == "square_indicator") return SequenceName::square_indicator;
    if (s == "convergent") return SequenceName::convergent;
    if (s == "random_bounded") return SequenceName::random_bounded;
    if (s == "e") return SequenceName::ones;
    if (s == "e_n") return SequenceName::unit;
    throw SchemaError("unknown sequence '" + std::string(s) +
                      "' (expected alternating, roots_of_unity, square_indicator, convergent, random_bounded, e or e_n)");
}

/// A sequence family name, {"name": ..., params}, {"values": [...]}, or an explicit array.
inline FiniteSeq parse_sequence(const json& j, std::size_t len) {
    if (j.is_string()) {
        SequenceSpec spec;
        spec.name = parse_sequence_name(j.get<std::string>());
        return make_sequence(spec, len);
    }
    if (j.is_array()) return FiniteSeq(parse_complexes(j, "sequence"));
    if (j.is_object() && j.contains("values")) {
        require_keys(j, {"values"}, "sequence");
        return FiniteSeq(parse_complexes(j["values"], "sequence.values"));
    }
    require_keys(j, {"name", "m", "limit", "rate", "seed", "clusters", "index"}, "sequence");
    SequenceSpec spec;
    spec.name = parse_sequence_name(get_string(j.at("name"), "sequence.name"));
    if (j.contains("m")) spec.m = static_cast<unsigned>(get_size(j["m"], "sequence.m"));
    if (j.contains("limit")) spec.limit = parse_complex(j["limit"], "sequence.limit");
    if (j.contains("rate")) spec.rate = get_double(j["rate"], "sequence.rate");
    if (j.contains("seed")) spec.seed = get_size(j["seed"], "sequence.seed");
    if (j.contains("clusters")) spec.clusters = static_cast<unsigned>(get_size(j["clusters"], "sequence.clusters"));
    if (j.contains("index")) spec.index = get_size(j["index"], "sequence.index");
    return make_sequence(spec, len);
}

/// A constant or an explicit array.
inline ExponentSeq parse_exponents(const json& j, std::size_t len, std::string_view where) {
    if (j.is_number()) return ExponentSeq::constant(j.get<double>(), len);
    return ExponentSeq(parse_reals(j, where));
}

inline GeneratorSpec parse_generator(const std::string& name, const json& params, std::size_t len) {
    const GeneratorName g = parse_generator_name(name);
    switch (g) {
        case GeneratorName::riesz:
            require_keys(params, {"t"}, "matrix.params");
            return GeneratorSpec::riesz(parse_reals(params.at("t"), "matrix.params.t"));
        case GeneratorName::band:
            require_keys(params, {"r", "s"}, "matrix.params");
            return GeneratorSpec::band(get_double(params.at("r"), "matrix.params.r"), get_double(params.at("s"), "matrix.params.s"));
        case GeneratorName::double_band:
            require_keys(params, {"system"}, "matrix.params");
            return GeneratorSpec::two_band(parse_system(params.at("system"), len));
        default:
            require_keys(params, {}, "matrix.params");
            return GeneratorSpec::of(g);
    }
}

/// {"generator": name, "params": {...}} or {"dense": [[...]]}, with optional
/// "scale" and "lift" (a system; the matrix becomes V * inner).
inline MatrixSpec parse_matrix(const json& j, std::size_t len) {
    require_keys(j, {"generator", "params", "dense", "scale", "lift"}, "matrix");
    MatrixSpec m;
    if (j.contains("dense")) {
        const json& rows = j["dense"];
        if (!rows.is_array() || rows.empty()) throw SchemaError("matrix.dense: expected a non-empty array of rows");
        const std::size_t cols = rows[0].is_array() ? rows[0].size() : 0;
        Matrix d(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto row = parse_complexes(rows[i], "matrix.dense");
            if (row.size() != cols) throw SchemaError("matrix.dense: ragged rows");
            for (std::size_t k = 0; k < cols; ++k) d(i, k) = row[k];
        }
        m = MatrixSpec::dense(std::move(d));
    } else if (j.contains("generator")) {
        m = MatrixSpec::generator(parse_generator(get_string(j["generator"], "matrix.generator"), j.value("params", json::object()), len));
    } else {
        throw SchemaError("matrix: need 'generator' or 'dense'");
    }
    if (j.contains("scale")) m = m.scaled(parse_complex(j["scale"], "matrix.scale"));
    if (j.contains("lift")) m = m.lifted(parse_system(j["lift"], len));
    return m;
}

inline VerdictPolicy parse_policy(const json& j) {
    require_keys(j, {"stabilization_rel", "stabilization_abs", "growth_threshold", "zero_tol", "fail_tol", "decay_threshold",
                     "window_fraction", "quantifier_ladder"},
                 "policy");
    VerdictPolicy p;
    if (j.contains("stabilization_rel")) p.stabilization_rel = get_double(j["stabilization_rel"], "policy.stabilization_rel");
    if (j.contains("stabilization_abs")) p.stabilization_abs = get_double(j["stabilization_abs"], "policy.stabilization_abs");
    if (j.contains("growth_threshold")) p.growth_threshold = get_double(j["growth_threshold"], "policy.growth_threshold");
    if (j.contains("zero_tol")) p.zero_tol = get_double(j["zero_tol"], "policy.zero_tol");
    if (j.contains("fail_tol")) p.fail_tol = get_double(j["fail_tol"], "policy.fail_tol");
    if (j.contains("decay_threshold")) p.decay_threshold = get_double(j["decay_threshold"], "policy.decay_threshold");
    if (j.contains("window_fraction")) p.window_fraction = get_double(j["window_fraction"], "policy.window_fraction");
    if (j.contains("quantifier_ladder")) p.quantifier_ladder = parse_reals(j["quantifier_ladder"], "policy.quantifier_ladder");
    try {
        p.validate();
    } catch (const InvalidArgument& e) {
        throw SchemaError(e.what());
    }
    return p;
}

// ---------------------------------------------------------------------------
// Report serialization

inline json to_json(const Estimate& e) {
    json j{{"n", e.n}, {"value", e.value}, {"lower", optional_double(e.lower)}, {"observed", optional_double(e.observed)}};
    if (!e.witness.empty()) j["witness"] = e.witness;
    return j;
}

inline json to_json(const ConditionVerdict& c) {
    json j{{"id", c.id},
           {"formula", c.anchor},
           {"kind", to_string(c.kind)},
           {"quantifier", to_string(c.quantifier)},
           {"verdict", to_string(c.verdict)},
           {"label", c.verdict_label()},
           {"tested_ladder_only", c.tested_ladder_only},
           {"growth_exponent", c.growth_exponent}};
    if (!c.decided_by.empty()) j["decided_by"] = c.decided_by;
    json est = json::array();
    for (const auto& e : c.estimates) est.push_back(to_json(e));
    j["estimates"] = est;
    if (!c.fitted_name.empty()) {
        json f = json::array();
        const std::size_t shown = std::min<std::size_t>(c.fitted.size(), 16);
        for (std::size_t k = 0; k < shown; ++k) f.push_back(to_json(c.fitted[k]));
        j["fitted"] = {{"name", c.fitted_name}, {"leading", f}, {"count", c.fitted.size()}};
    }
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

inline json to_json(const DualReport& r) {
    json conds = json::array();
    for (const auto& c : r.conditions) conds.push_back(to_json(c));
    return {{"space", to_string(r.space)}, {"dual", to_string(r.dual)}, {"regime", to_string(r.regime)},
            {"ladder", r.ladder},          {"conditions", conds},       {"aggregate", to_string(r.aggregate)}};
}

inline json to_json(const DensityEstimate& d) {
    return {{"set", d.set}, {"ladder", d.ladder}, {"values", d.values}, {"limit_estimate", d.limit_estimate}, {"trend", d.trend}};
}

inline json to_json(const ClassReport& r) {
    json conds = json::array();
    for (const auto& c : r.conditions) conds.push_back(to_json(c));
    json dens = json::array();
    for (const auto& d : r.densities) dens.push_back(to_json(d));
    return {{"class", r.class_id}, {"ladder", r.ladder},     {"conditions", conds},
            {"densities", dens},   {"warnings", r.warnings}, {"aggregate", to_string(r.aggregate)}};
}

inline json to_json(const RegionEstimate& r) {
    json verts = json::array();
    for (auto v : r.vertices) verts.push_back(json::array({v.real(), v.imag()}));
    json sup = json::array();
    for (std::size_t d = 0; d < r.angles.size(); ++d) sup.push_back({{"theta", r.angles[d]}, {"h", r.support[d]}});
    return {{"method", to_string(r.method)}, {"window", {r.window.n0, r.window.n}}, {"vertices", verts},
            {"support", sup},                {"warnings", r.warnings}};
}

inline json to_json(const FiniteSeq& x) {
    json a = json::array();
    for (auto v : x.values()) a.push_back(to_json(v));
    return a;
}

/// Rule tables in a plain form for comparison against a checked-in transcription.
inline json rule_tables() {
    json duals = json::array();
    for (const auto& r : DualRuleTable::standard().rules()) {
        duals.push_back({{"space", to_string(r.space)}, {"dual", to_string(r.dual)}, {"regime", to_string(r.regime)}, {"sets", r.sets}});
    }
    json sets = json::object();
    for (const auto& s : dual_set_catalog()) {
        sets[s.id] = {{"kind", to_string(s.kind)}, {"quantifier", to_string(s.quantifier)}, {"needs_conjugate", s.needs_conjugate}};
    }
    json classes = json::array();
    for (const auto& r : class_rules()) {
        classes.push_back({{"class", r.id}, {"reads", to_string(r.source)}, {"conditions", r.conditions}, {"density_family", r.density_family}});
    }
    json conds = json::object();
    for (const auto& c : condition_catalog()) {
        conds[c.id] = {{"kind", to_string(c.kind)}, {"quantifier", to_string(c.quantifier)}, {"reads", to_string(c.source)}};
    }
    return {{"dual_rules", duals}, {"dual_sets", sets}, {"class_rules", classes}, {"conditions", conds}};
}

// ---------------------------------------------------------------------------
// Files

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

inline std::string region_csv(const RegionEstimate& r) {
    std::string s = "x,y\n";
    for (auto v : r.vertices) s += format_double(v.real()) + "," + format_double(v.imag()) + "\n";
    return s;
}

/// CSV vertex list at `path`, support table as JSON next to it (same stem, .json).
inline void export_region(const RegionEstimate& r, const std::filesystem::path& path) {
    write_text(path, region_csv(r));
    std::filesystem::path side = path;
    side.replace_extension(".json");
    if (side == path) side += ".support.json";
    write_text(side, stable_dump(to_json(r)) + "\n");
}

}  // namespace seqcore::io
