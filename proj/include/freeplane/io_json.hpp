#ifndef FREEPLANE_IO_JSON_HPP
#define FREEPLANE_IO_JSON_HPP

#include <cstddef>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "freeplane/confinement.hpp"
#include "freeplane/errors.hpp"
#include "freeplane/extension.hpp"
#include "freeplane/lattice.hpp"
#include "freeplane/morphism.hpp"
#include "freeplane/structure.hpp"
#include "freeplane/validate.hpp"

namespace freeplane::io {

using json = nlohmann::json;

/// Canonical text form: two-space indent, sorted keys, trailing newline.
inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

/// Parses JSON text; syntax errors become InputError with line and column.
inline json parse_text(std::string_view text, std::string_view source = "<input>") {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        std::size_t upto = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
        for (std::size_t i = 0; i < upto; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw InputError(std::string(source) + ":" + std::to_string(line) + ":" + std::to_string(col) +
                         ": malformed JSON: " + e.what());
    }
}

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json read_json(const std::string& path) { return parse_text(read_text(path), path); }

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
}

namespace detail {

inline void check_keys(const json& obj, std::initializer_list<std::string_view> allowed, bool strict,
                       std::string_view what) {
    if (!obj.is_object()) throw InputError(std::string(what) + " must be a JSON object");
    if (!strict) return;
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (auto a : allowed) ok = ok || key == a;
        if (!ok) throw InputError("unknown field '" + key + "' in " + std::string(what));
    }
}

inline const json& require(const json& obj, const char* key, std::string_view what) {
    auto it = obj.find(key);
    if (it == obj.end()) throw InputError(std::string(what) + " is missing \"" + key + "\"");
    return *it;
}

inline std::string get_string(const json& j, std::string_view what) {
    if (!j.is_string()) throw InputError(std::string(what) + " must be a string");
    return j.get<std::string>();
}

inline ElementTerm term_with_stage(const std::string& name, const json* stage, bool strict) {
    ElementTerm t;
    try {
        t = ElementTerm::parse(name);
    } catch (const StructureError& e) {
        throw InputError(e.what());
    }
    if (t.name() != name && strict) {
        throw InputError("term '" + name + "' is not in canonical form ('" + t.name() + "')");
    }
    if (stage) {
        if (!stage->is_number_unsigned()) throw InputError("stage of '" + name + "' must be a natural number");
        if (stage->get<std::size_t>() != t.stage()) {
            throw InputError("stage of '" + name + "' is " + std::to_string(stage->get<std::size_t>()) + ", expected " +
                             std::to_string(t.stage()));
        }
    } else if (strict && !t.is_base()) {
        throw InputError("generated element '" + name + "' has no stage");
    }
    return t;
}

} // namespace detail

/**
 * Structure format:
 *
 *     {"points": ["A", {"name": "meet(AB,CD)", "stage": 1}],
 *      "lines":  [{"name": "AB", "points": ["A", "B"]},
 *                 {"name": "join(A,meet(AB,CD))", "stage": 2, "points": [...]}]}
 *
 * Base elements are plain names; generated elements carry their term as the
 * name plus a stage. Output lists elements and line points canonically.
 */
inline json to_json(const IncidenceStructure& s) {
    json points = json::array();
    for (const auto& t : s.points()) {
        if (t.is_base()) {
            points.push_back(t.name());
        } else {
            points.push_back({{"name", t.name()}, {"stage", t.stage()}});
        }
    }
    json lines = json::array();
    for (std::size_t l = 0; l < s.num_lines(); ++l) {
        json pts = json::array();
        for (std::size_t p : s.points_on(l)) pts.push_back(s.point(p).name());
        json line{{"name", s.line(l).name()}, {"points", std::move(pts)}};
        if (!s.line(l).is_base()) line["stage"] = s.line(l).stage();
        lines.push_back(std::move(line));
    }
    return {{"points", std::move(points)}, {"lines", std::move(lines)}};
}

inline IncidenceStructure structure_from_json(const json& j, bool strict = false) {
    detail::check_keys(j, {"points", "lines"}, strict, "structure");
    StructureBuilder b;
    if (auto it = j.find("points"); it != j.end()) {
        if (!it->is_array()) throw InputError("\"points\" must be an array");
        for (const auto& p : *it) {
            if (p.is_string()) {
                b.add_point(detail::term_with_stage(p.get<std::string>(), nullptr, strict));
            } else {
                detail::check_keys(p, {"name", "stage"}, strict, "point");
                auto name = detail::get_string(detail::require(p, "name", "point"), "point name");
                auto st = p.find("stage");
                b.add_point(detail::term_with_stage(name, st == p.end() ? nullptr : &*st, strict));
            }
        }
    } else if (strict) {
        throw InputError("structure is missing \"points\"");
    }
    if (auto it = j.find("lines"); it != j.end()) {
        if (!it->is_array()) throw InputError("\"lines\" must be an array");
        for (const auto& l : *it) {
            detail::check_keys(l, {"name", "points", "stage"}, strict, "line");
            auto name = detail::get_string(detail::require(l, "name", "line"), "line name");
            auto st = l.find("stage");
            auto t = detail::term_with_stage(name, st == l.end() ? nullptr : &*st, strict);
            std::vector<std::string> pts;
            if (auto pit = l.find("points"); pit != l.end()) {
                if (!pit->is_array()) throw InputError("points of line '" + name + "' must be an array");
                for (const auto& p : *pit) pts.push_back(detail::get_string(p, "line point"));
            }
            b.add_line(t, pts);
        }
    } else if (strict) {
        throw InputError("structure is missing \"lines\"");
    }
    try {
        return b.build();
    } catch (const StructureError& e) {
        throw InputError(e.what());
    }
}

inline IncidenceStructure read_structure(const std::string& path, bool strict = false) {
    return structure_from_json(read_json(path), strict);
}

inline json to_json(const ValidationReport& r) {
    json axioms = json::object();
    for (Axiom a : all_axioms) {
        const auto& res = r[a];
        axioms[std::string(axiom_name(a))] = {
            {"satisfied", res.satisfied}, {"violation_count", res.violation_count}, {"violations", res.violations}};
    }
    return {{"axioms", std::move(axioms)}, {"plane", r.is_plane()}};
}

inline json to_json(const ExtensionTrace& t) {
    json stages = json::array();
    for (const auto& s : t.stages) stages.push_back(to_json(s));
    json stop{{"reason", std::string(stop_reason_name(t.stop))}, {"stage", t.stop_stage}};
    if (t.stop == StopReason::budget) {
        stop["refused_points"] = t.refused_points;
        stop["refused_lines"] = t.refused_lines;
    }
    json budget = t.budget == unlimited_budget ? json(nullptr) : json(t.budget);
    return {{"mode", std::string(mode_name(t.mode))},
            {"budget", std::move(budget)},
            {"requested_stages", t.requested_stages},
            {"truncated", t.truncated()},
            {"stop", std::move(stop)},
            {"stages", std::move(stages)}};
}

inline ExtensionTrace trace_from_json(const json& j, bool strict = false) {
    detail::check_keys(j, {"mode", "budget", "requested_stages", "truncated", "stop", "stages"}, strict, "trace");
    ExtensionTrace t;
    auto mode = parse_mode(detail::get_string(detail::require(j, "mode", "trace"), "mode"));
    if (!mode) throw InputError("unknown extension mode");
    t.mode = *mode;
    const auto& budget = detail::require(j, "budget", "trace");
    t.budget = budget.is_null() ? unlimited_budget : budget.get<std::size_t>();
    t.requested_stages = detail::require(j, "requested_stages", "trace").get<std::size_t>();
    const auto& stop = detail::require(j, "stop", "trace");
    auto reason = detail::get_string(detail::require(stop, "reason", "stop"), "stop reason");
    if (reason == "completed") {
        t.stop = StopReason::completed;
    } else if (reason == "fixed-point") {
        t.stop = StopReason::fixed_point;
    } else if (reason == "budget") {
        t.stop = StopReason::budget;
        t.refused_points = detail::require(stop, "refused_points", "stop").get<std::size_t>();
        t.refused_lines = detail::require(stop, "refused_lines", "stop").get<std::size_t>();
    } else {
        throw InputError("unknown stop reason '" + reason + "'");
    }
    t.stop_stage = detail::require(stop, "stage", "stop").get<std::size_t>();
    for (const auto& s : detail::require(j, "stages", "trace")) t.stages.push_back(structure_from_json(s, strict));
    if (t.stages.empty()) throw InputError("trace has no stages");
    return t;
}

/// Morphism as name pairs in source canonical order.
inline json to_json(const Morphism& f, const IncidenceStructure& a, const IncidenceStructure& b) {
    json pts = json::array(), lns = json::array();
    for (std::size_t p = 0; p < f.point_map.size(); ++p) {
        pts.push_back({a.point(p).name(), b.point(f.point_map[p]).name()});
    }
    for (std::size_t l = 0; l < f.line_map.size(); ++l) {
        lns.push_back({a.line(l).name(), b.line(f.line_map[l]).name()});
    }
    return {{"kind", std::string(kind_name(f.kind))}, {"points", std::move(pts)}, {"lines", std::move(lns)}};
}

inline Morphism morphism_from_json(const json& j, const IncidenceStructure& a, const IncidenceStructure& b) {
    detail::check_keys(j, {"kind", "points", "lines"}, false, "morphism");
    auto kind = parse_kind(detail::get_string(detail::require(j, "kind", "morphism"), "kind"));
    if (!kind) throw InputError("unknown morphism kind");
    Morphism f{*kind, std::vector<std::size_t>(a.num_points(), IncidenceStructure::npos),
               std::vector<std::size_t>(a.num_lines(), IncidenceStructure::npos)};
    for (const auto& pr : detail::require(j, "points", "morphism")) {
        auto s = a.find_point(pr.at(0).get<std::string>());
        auto t = b.find_point(pr.at(1).get<std::string>());
        if (!s || !t) throw InputError("morphism references an unknown point");
        f.point_map[*s] = *t;
    }
    for (const auto& pr : detail::require(j, "lines", "morphism")) {
        auto s = a.find_line(pr.at(0).get<std::string>());
        auto t = b.find_line(pr.at(1).get<std::string>());
        if (!s || !t) throw InputError("morphism references an unknown line");
        f.line_map[*s] = *t;
    }
    for (auto x : f.point_map) {
        if (x == IncidenceStructure::npos) throw InputError("morphism is not total on points");
    }
    for (auto x : f.line_map) {
        if (x == IncidenceStructure::npos) throw InputError("morphism is not total on lines");
    }
    return f;
}

inline std::string_view rank_name(LatticeRank r) {
    switch (r) {
    case LatticeRank::bottom: return "bottom";
    case LatticeRank::atom: return "atom";
    case LatticeRank::coatom: return "coatom";
    case LatticeRank::top: return "top";
    case LatticeRank::unclassified: return "unclassified";
    }
    return "?";
}

/**
 * Lattice format: elements with name, rank (0-3) and stage for generated
 * terms; join and meet as square tables of element names.
 */
inline json to_json(const GeometricLattice& L) {
    json elems = json::array();
    for (const auto& e : L.elements()) {
        json o{{"name", e.name}, {"rank", static_cast<int>(e.rank)}};
        if (e.term && !e.term->is_base()) o["stage"] = e.term->stage();
        elems.push_back(std::move(o));
    }
    json join = json::array(), meet = json::array();
    for (GeometricLattice::Index a = 0; a < L.size(); ++a) {
        json jr = json::array(), mr = json::array();
        for (GeometricLattice::Index b = 0; b < L.size(); ++b) {
            jr.push_back(L.name(L.join(a, b)));
            mr.push_back(L.name(L.meet(a, b)));
        }
        join.push_back(std::move(jr));
        meet.push_back(std::move(mr));
    }
    return {{"elements", std::move(elems)}, {"join", std::move(join)}, {"meet", std::move(meet)}};
}

inline GeometricLattice lattice_from_json(const json& j, bool strict = false) {
    detail::check_keys(j, {"elements", "join", "meet"}, strict, "lattice");
    std::vector<LatticeElement> elems;
    std::unordered_map<std::string, GeometricLattice::Index> index;
    for (const auto& e : detail::require(j, "elements", "lattice")) {
        LatticeElement le;
        if (e.is_string()) {
            le.name = e.get<std::string>();
        } else {
            detail::check_keys(e, {"name", "rank", "stage"}, strict, "lattice element");
            le.name = detail::get_string(detail::require(e, "name", "lattice element"), "element name");
            if (auto r = e.find("rank"); r != e.end()) {
                int v = r->get<int>();
                if (v < 0 || v > 3) throw InputError("rank of '" + le.name + "' must be 0..3");
                le.rank = static_cast<LatticeRank>(v);
            }
            if (le.rank == LatticeRank::atom || le.rank == LatticeRank::coatom) {
                auto st = e.find("stage");
                le.term = detail::term_with_stage(le.name, st == e.end() ? nullptr : &*st, strict);
            }
        }
        if (!index.emplace(le.name, static_cast<GeometricLattice::Index>(elems.size())).second) {
            throw InputError("duplicate lattice element '" + le.name + "'");
        }
        elems.push_back(std::move(le));
    }
    std::size_t n = elems.size();
    auto table = [&](const char* key) {
        std::vector<GeometricLattice::Index> t;
        const auto& rows = detail::require(j, key, "lattice");
        if (!rows.is_array() || rows.size() != n) throw InputError(std::string(key) + " table has the wrong size");
        for (const auto& row : rows) {
            if (!row.is_array() || row.size() != n) throw InputError(std::string(key) + " table has the wrong size");
            for (const auto& cell : row) {
                auto it = index.find(detail::get_string(cell, "table entry"));
                if (it == index.end()) throw InputError("table entry names an unknown element");
                t.push_back(it->second);
            }
        }
        return t;
    };
    auto join = table("join");
    auto meet = table("meet");
    try {
        return GeometricLattice::from_tables(std::move(elems), std::move(join), std::move(meet));
    } catch (const StructureError& e) {
        throw InputError(e.what());
    }
}

inline json to_json(const LatticeCheckReport& r) {
    json items = json::object();
    for (const auto& i : r.items) items[i.name] = {{"satisfied", i.satisfied}, {"witnesses", i.witnesses}};
    return {{"passed", r.passed()}, {"checks", std::move(items)}};
}

/// Deletion log of a core computation, in deletion order.
inline json deletions_to_json(const CoreResult& c, const IncidenceStructure& input) {
    json log = json::array();
    for (const auto& d : c.deleted) {
        log.push_back({{"element", input.name(d.element)},
                       {"sort", d.element.sort == Sort::point ? "point" : "line"},
                       {"reason", std::string(deletion_reason_name(d.reason))},
                       {"round", d.round}});
    }
    return {{"rounds", c.rounds}, {"deleted", std::move(log)}};
}

} // namespace freeplane::io

#endif
