/*
 * io.hpp — file formats
 *
 * Measure files (JSON):
 *   {"type":"atomic","atoms":[{"x":0.0,"w":0.5},...]}
 *   {"type":"ifs","R":3,"digits":[0,2],"probs":[0.5,0.5]}
 *
 * Function files: a JSON array of {"re":..,"im":..}, or a JSON string naming
 * a generator: "indicator_left", "exp_<k>", "random(<seed>)".
 *
 * Complex numbers in all emitted JSON are {"re":..,"im":..}.  CSV columns use
 * round-trippable %.17g formatting.  All writes go through a temp file +
 * rename.
 */

#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kf/core.hpp"
#include "kf/measures.hpp"
#include "kf/kaczmarz.hpp"
#include "kf/series.hpp"

namespace kf::io {

using nlohmann::json;

inline json complex_to_json(const cplx& c) { return json{{"re", c.real()}, {"im", c.imag()}}; }

inline cplx complex_from_json(const json& j) {
    if (!j.is_object() || !j.contains("re") || !j.contains("im"))
        throw validation_error("complex value must be {\"re\":..,\"im\":..}");
    return {j.at("re").get<double>(), j.at("im").get<double>()};
}

inline void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed,
                                const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) ok = true;
        if (!ok)
            throw validation_error(where + ": unknown key \"" + it.key() + "\"");
    }
}

// ---------------------------------------------------------------------------
// Measures
// ---------------------------------------------------------------------------

inline json measure_to_json(const AtomicMeasure& m) {
    json atoms = json::array();
    for (const auto& a : m.atoms())
        atoms.push_back(json{{"x", a.x}, {"w", a.w}});
    return json{{"type", "atomic"}, {"atoms", atoms}};
}

inline json measure_to_json(const SelfSimilarMeasure& m) {
    return json{{"type", "ifs"}, {"R", m.scale()}, {"digits", m.digits()}, {"probs", m.probs()}};
}

inline json measure_to_json(const Measure& m) {
    return std::visit([](const auto& mm) { return measure_to_json(mm); }, m);
}

inline Measure measure_from_json(const json& j) {
    if (!j.is_object() || !j.contains("type"))
        throw validation_error("measure: missing \"type\" field");
    const std::string type = j.at("type").get<std::string>();
    if (type == "atomic") {
        reject_unknown_keys(j, {"type", "atoms"}, "measure");
        if (!j.contains("atoms") || !j.at("atoms").is_array())
            throw validation_error("measure: atomic needs an \"atoms\" array");
        std::vector<AtomicMeasure::Atom> atoms;
        for (const auto& a : j.at("atoms")) {
            reject_unknown_keys(a, {"x", "w"}, "atom");
            if (!a.contains("x") || !a.contains("w"))
                throw validation_error("measure: each atom needs \"x\" and \"w\"");
            atoms.push_back({a.at("x").get<double>(), a.at("w").get<double>()});
        }
        return AtomicMeasure(std::move(atoms));
    }
    if (type == "ifs") {
        reject_unknown_keys(j, {"type", "R", "digits", "probs"}, "measure");
        if (!j.contains("R") || !j.contains("digits") || !j.contains("probs"))
            throw validation_error("measure: ifs needs \"R\", \"digits\", \"probs\"");
        return SelfSimilarMeasure(j.at("R").get<int>(),
                                  j.at("digits").get<std::vector<int>>(),
                                  j.at("probs").get<std::vector<double>>());
    }
    throw validation_error("measure: unknown type \"" + type + "\"");
}

inline Measure read_measure(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open measure file " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw validation_error("measure file " + path.string() + ": " + e.what());
    }
    return measure_from_json(j);
}

// ---------------------------------------------------------------------------
// Functions
// ---------------------------------------------------------------------------

inline FunctionOnSupport make_generated_function(const AtomicMeasure& m, const std::string& name,
                                                 std::uint64_t default_seed) {
    if (name == "indicator_left") {
        std::vector<cplx> vals;
        for (const auto& a : m.atoms())
            vals.push_back(a.x < 0.5 ? 1.0 : 0.0);
        return {m, std::move(vals)};
    }
    if (name.rfind("exp_", 0) == 0) {
        const double k = std::stod(name.substr(4));
        return exp_vector(m, k);
    }
    if (name.rfind("random", 0) == 0) {
        std::uint64_t seed = default_seed;
        if (name.size() > 6) {
            if (name[6] != '(' || name.back() != ')')
                throw validation_error("function generator: expected random(<seed>)");
            seed = std::stoull(name.substr(7, name.size() - 8));
        }
        SplitMix64 rng(seed);
        std::vector<cplx> vals;
        for (std::size_t j = 0; j < m.size(); ++j)
            vals.emplace_back(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        return {m, std::move(vals)};
    }
    throw validation_error("unknown function generator \"" + name + "\"");
}

inline FunctionOnSupport function_from_json(const json& j, const AtomicMeasure& m,
                                            std::uint64_t default_seed = 0) {
    if (j.is_string())
        return make_generated_function(m, j.get<std::string>(), default_seed);
    if (j.is_array()) {
        std::vector<cplx> vals;
        for (const auto& v : j) vals.push_back(complex_from_json(v));
        return {m, std::move(vals)}; // length mismatch rejected by the ctor
    }
    throw validation_error("function file: expected an array of complex values or a generator string");
}

inline FunctionOnSupport read_function(const std::filesystem::path& path, const AtomicMeasure& m,
                                       std::uint64_t default_seed = 0) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open function file " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw validation_error("function file " + path.string() + ": " + e.what());
    }
    return function_from_json(j, m, default_seed);
}

inline json function_to_json(const FunctionOnSupport& f) {
    json arr = json::array();
    for (const cplx& v : f.values()) arr.push_back(complex_to_json(v));
    return arr;
}

// ---------------------------------------------------------------------------
// Expansions
// ---------------------------------------------------------------------------

inline json expansion_to_json(const Expansion& e, const Measure& m) {
    json coeffs = json::array();
    for (const cplx& c : e.coefficients) coeffs.push_back(complex_to_json(c));
    return json{{"measure", measure_to_json(m)},
                {"N", e.order()},
                {"coefficients", coeffs},
                {"parseval_partial", e.parseval_partial},
                {"residual", e.residual}};
}

inline Expansion expansion_from_json(const json& j) {
    reject_unknown_keys(j, {"measure", "N", "coefficients", "parseval_partial", "residual"},
                        "expansion");
    Expansion e;
    e.measure_id = "";
    for (const auto& c : j.at("coefficients")) e.coefficients.push_back(complex_from_json(c));
    if (j.at("N").get<int>() != e.order())
        throw validation_error("expansion: N does not match coefficient count");
    e.parseval_partial = j.at("parseval_partial").get<double>();
    e.residual = j.at("residual").get<double>();
    return e;
}

// ---------------------------------------------------------------------------
// Atomic writes and CSV emitters
// ---------------------------------------------------------------------------

inline void atomic_write(const std::filesystem::path& path, const std::string& contents) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw validation_error("cannot write " + tmp.string());
        out << contents;
        if (!out) throw validation_error("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

inline void write_json(const std::filesystem::path& path, const json& j) {
    atomic_write(path, j.dump(2) + "\n");
}

inline std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_csv(const std::filesystem::path& path, const std::string& header,
                      const std::vector<std::vector<double>>& rows) {
    std::string out = header + "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += fmt_double(row[i]);
        }
        out += '\n';
    }
    atomic_write(path, out);
}

inline void write_alpha_csv(const std::filesystem::path& path, const AlphaSequence& a) {
    std::vector<std::vector<double>> rows;
    for (std::size_t n = 0; n < a.values.size(); ++n)
        rows.push_back({double(n), a.values[n].real(), a.values[n].imag()});
    write_csv(path, "n,re,im", rows);
}

inline void write_residuals_csv(const std::filesystem::path& path, const KaczmarzTrace& tr) {
    std::vector<std::vector<double>> rows;
    for (std::size_t n = 0; n < tr.residuals.size(); ++n)
        rows.push_back({double(n), tr.residuals[n]});
    write_csv(path, "n,residual", rows);
}

inline void write_gtriangle_csv(const std::filesystem::path& path, const GTriangle& t) {
    std::vector<std::vector<double>> rows;
    for (std::size_t n = 0; n < t.size(); ++n)
        for (std::size_t j = 0; j < t.row(n).size(); ++j)
            rows.push_back({double(n), double(j), t.row(n)[j].real(), t.row(n)[j].imag()});
    write_csv(path, "n,j,re,im", rows);
}

} // namespace kf::io
