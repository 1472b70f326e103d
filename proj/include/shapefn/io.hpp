#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "shapefn/analysis.hpp"
#include "shapefn/harness.hpp"
#include "shapefn/inequalities.hpp"

namespace shapefn::io {

using nlohmann::ordered_json;

inline ConvexPolygon polygon_from_json(const ordered_json& doc) {
    if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array())
        throw std::invalid_argument("polygon JSON needs a \"vertices\" array");
    std::vector<Vec2> pts;
    for (const auto& v : doc["vertices"]) {
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
            throw std::invalid_argument("each vertex must be a pair [x, y] of numbers");
        pts.push_back({v[0].get<double>(), v[1].get<double>()});
    }
    return ConvexPolygon(std::move(pts));
}

inline ConvexPolygon read_polygon(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open " + path);
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const ordered_json::parse_error& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
    return polygon_from_json(doc);
}

inline ordered_json to_json(const ConvexPolygon& p) {
    ordered_json v = ordered_json::array();
    for (const auto& q : p.vertices())
        v.push_back({round12(q.x), round12(q.y)});
    return {{"vertices", v}};
}

inline ordered_json to_json(const ShapeMeasurements& m) {
    ordered_json j{{"dim", m.dim},
                   {"area", round12(m.area)},
                   {"perimeter", round12(m.perimeter)},
                   {"inradius", round12(m.inradius)}};
    if (m.dim == 2)
        j["incenter"] = {round12(m.incenter.x), round12(m.incenter.y)};
    j["min_width"] = round12(m.min_width);
    j["diameter"] = round12(m.diameter);
    j["alpha"] = round12(m.alpha);
    j["beta"] = round12(m.beta);
    return j;
}

inline ordered_json to_json(const FemEstimate& e) {
    return {{"value", round12(e.value)},         {"error_estimate", round12(e.error_estimate)},
            {"coarse", round12(e.coarse)},       {"fine", round12(e.fine)},
            {"triangles", e.triangles},          {"mesh_size", round12(e.mesh_size)}};
}

inline ordered_json to_json(const FunctionalValues& f) {
    return {{"torsion", to_json(f.torsion)}, {"lambda", to_json(f.lambda)}};
}

inline ordered_json to_json(const FunctionalSuite& f) {
    return {{"F1", round12(f.F1)}, {"F2", round12(f.F2)}, {"F3", round12(f.F3)}, {"F4", round12(f.F4)}};
}

inline ordered_json to_json(const BoundValues& b) {
    return {{"web_torsion", round12(b.web_torsion)},
            {"makai_torsion_upper", round12(b.makai_torsion_upper)},
            {"polya_lambda_upper", round12(b.polya_lambda_upper)}};
}

/// Output of the compute subcommand.
inline ordered_json to_json(const ShapeAnalysis& s) {
    ordered_json j{{"shape", s.label},
                   {"measurements", to_json(s.measurements)},
                   {"functionals", to_json(s.functionals)},
                   {"suite", to_json(functional_suite(s.measurements, s.functionals))}};
    j["bounds"] = s.bounds ? to_json(*s.bounds) : ordered_json(nullptr);
    return j;
}

inline ordered_json to_json(const InequalityReport& r) {
    ordered_json entries = ordered_json::array();
    for (const auto& e : r.entries)
        entries.push_back({{"id", e.id},
                           {"lhs", round12(e.lhs)},
                           {"rhs", round12(e.rhs)},
                           {"margin", round12(e.margin)},
                           {"pass", e.pass},
                           {"tol", round12(e.tol)}});
    return {{"shape", r.shape}, {"all_pass", r.all_pass()}, {"entries", entries}};
}

inline ordered_json to_json(const Table2Report& t) {
    ordered_json rows = ordered_json::array();
    for (const auto& r : t.rows) {
        ordered_json cs = ordered_json::array();
        for (const auto& c : r.comparisons)
            cs.push_back({{"quantity", c.quantity},
                          {"computed", round12(c.computed)},
                          {"table", round12(c.table)},
                          {"kind", c.asymptotic ? "asymptotic" : "exact"},
                          {"rel_error", round12(c.rel_error)},
                          {"tol", round12(c.tol)},
                          {"pass", c.pass}});
        rows.push_back({{"family", r.family}, {"param", round12(r.param)}, {"shape", r.shape}, {"comparisons", cs}});
    }
    return {{"all_pass", t.all_pass()}, {"rows", rows}};
}

inline ordered_json to_json(const SuiteResult& s) {
    ordered_json shapes = ordered_json::array();
    for (const auto& r : s.reports) {
        const InequalityEntry* worst = nullptr;
        for (const auto& e : r.entries)
            if (!worst || e.margin + e.tol < worst->margin + worst->tol)
                worst = &e;
        ordered_json item{{"shape", r.shape}, {"all_pass", r.all_pass()}};
        if (worst)
            item["tightest"] = {{"id", worst->id}, {"margin", round12(worst->margin)}, {"tol", round12(worst->tol)}};
        ordered_json failed = ordered_json::array();
        for (const auto& e : r.entries)
            if (!e.pass)
                failed.push_back(e.id);
        item["failed"] = failed;
        shapes.push_back(item);
    }
    return {{"shapes_checked", s.reports.size()},
            {"failures", s.failures()},
            {"all_pass", s.all_pass()},
            {"shapes", shapes}};
}

/// Two-space indented JSON with a trailing newline.
inline std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::invalid_argument("cannot write " + path);
    out << text;
}

} // namespace shapefn::io
