#ifndef FREEPLANE_DOT_HPP
#define FREEPLANE_DOT_HPP

#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "freeplane/extension.hpp"
#include "freeplane/lattice.hpp"
#include "freeplane/structure.hpp"

namespace freeplane::dot {

inline std::string quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

/// Bipartite incidence graph: points as ellipses, lines as boxes.
inline void write_incidence(std::ostream& os, const IncidenceStructure& s, std::string_view graph_name) {
    os << "graph " << quote(graph_name) << " {\n";
    for (const auto& p : s.points()) os << "  " << quote("p:" + p.name()) << " [label=" << quote(p.name()) << ", shape=ellipse];\n";
    for (const auto& l : s.lines()) os << "  " << quote("l:" + l.name()) << " [label=" << quote(l.name()) << ", shape=box];\n";
    for (std::size_t l = 0; l < s.num_lines(); ++l) {
        for (std::size_t p : s.points_on(l)) {
            os << "  " << quote("p:" + s.point(p).name()) << " -- " << quote("l:" + s.line(l).name()) << ";\n";
        }
    }
    os << "}\n";
}

inline std::string incidence_graph(const IncidenceStructure& s, std::string_view graph_name = "structure") {
    std::ostringstream os;
    write_incidence(os, s, graph_name);
    return os.str();
}

/// One graph per stage, named stage_0, stage_1, ...
inline std::string trace_graphs(const ExtensionTrace& t) {
    std::ostringstream os;
    for (std::size_t k = 0; k < t.stages.size(); ++k) write_incidence(os, t.stages[k], "stage_" + std::to_string(k));
    return os.str();
}

/// Hasse diagram, bottom to top, each rank on its own layer.
inline std::string hasse(const GeometricLattice& L) {
    using Index = GeometricLattice::Index;
    std::ostringstream os;
    os << "digraph hasse {\n  rankdir=BT;\n";
    std::map<int, std::vector<Index>> layers;
    for (Index x = 0; x < L.size(); ++x) layers[static_cast<int>(L.rank(x))].push_back(x);
    for (const auto& [r, xs] : layers) {
        os << "  { rank=same;";
        for (Index x : xs) os << " " << quote(L.name(x)) << ";";
        os << " }\n";
    }
    for (Index a = 0; a < L.size(); ++a) {
        for (Index b = 0; b < L.size(); ++b) {
            if (L.covers(a, b)) os << "  " << quote(L.name(a)) << " -> " << quote(L.name(b)) << ";\n";
        }
    }
    os << "}\n";
    return os.str();
}

} // namespace freeplane::dot

#endif
