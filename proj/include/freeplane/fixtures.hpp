#ifndef FREEPLANE_FIXTURES_HPP
#define FREEPLANE_FIXTURES_HPP

#include <string>
#include <utility>
#include <vector>

#include "freeplane/structure.hpp"

// Small standard configurations, shipped as JSON under fixtures/ as well.
namespace freeplane::fixtures {

namespace detail {

inline IncidenceStructure make(const std::vector<std::string>& points,
                               const std::vector<std::pair<std::string, std::vector<std::string>>>& lines) {
    StructureBuilder b;
    for (const auto& p : points) b.add_point(p);
    for (const auto& [name, pts] : lines) b.add_line(name, pts);
    return b.build();
}

} // namespace detail

/// Projective plane of order 2: 7 points, 7 lines of 3 points.
inline IncidenceStructure fano() {
    return detail::make({"A", "B", "C", "D", "E", "F", "G"}, {{"ABD", {"A", "B", "D"}},
                                                              {"BCE", {"B", "C", "E"}},
                                                              {"CDF", {"C", "D", "F"}},
                                                              {"DEG", {"D", "E", "G"}},
                                                              {"AEF", {"A", "E", "F"}},
                                                              {"BFG", {"B", "F", "G"}},
                                                              {"ACG", {"A", "C", "G"}}});
}

/// Four points in general position with their six joining lines.
inline IncidenceStructure quad() {
    return detail::make({"A", "B", "C", "D"}, {{"AB", {"A", "B"}},
                                               {"AC", {"A", "C"}},
                                               {"AD", {"A", "D"}},
                                               {"BC", {"B", "C"}},
                                               {"BD", {"B", "D"}},
                                               {"CD", {"C", "D"}}});
}

/// Three 3-point lines through a common centre O.
inline IncidenceStructure star() {
    return detail::make({"O", "a1", "a2", "b1", "b2", "c1", "c2"},
                        {{"a", {"O", "a1", "a2"}}, {"b", {"O", "b1", "b2"}}, {"c", {"O", "c1", "c2"}}});
}

/// Six elements, trivial automorphism group: a path a-b-c with an extra
/// one-point line at c.
inline IncidenceStructure rigid6() {
    return detail::make({"a", "b", "c"}, {{"L1", {"a", "b"}}, {"L2", {"b", "c"}}, {"L3", {"c"}}});
}

/// Affine plane of order 3: points Pxy, lines y = m x + b named s<m><b>
/// and verticals x<c>. Confined and not projective.
inline IncidenceStructure affine_plane_3() {
    std::vector<std::string> points;
    for (int x = 0; x < 3; ++x) {
        for (int y = 0; y < 3; ++y) points.push_back("P" + std::to_string(x) + std::to_string(y));
    }
    std::vector<std::pair<std::string, std::vector<std::string>>> lines;
    for (int m = 0; m < 3; ++m) {
        for (int b = 0; b < 3; ++b) {
            std::vector<std::string> pts;
            for (int x = 0; x < 3; ++x) pts.push_back("P" + std::to_string(x) + std::to_string((m * x + b) % 3));
            lines.emplace_back("s" + std::to_string(m) + std::to_string(b), pts);
        }
    }
    for (int c = 0; c < 3; ++c) {
        std::vector<std::string> pts;
        for (int y = 0; y < 3; ++y) pts.push_back("P" + std::to_string(c) + std::to_string(y));
        lines.emplace_back("x" + std::to_string(c), pts);
    }
    return detail::make(points, lines);
}

/// Named fixture set used by tests and the harness.
inline std::vector<std::pair<std::string, IncidenceStructure>> all() {
    return {{"ag23", affine_plane_3()}, {"fano", fano()}, {"quad", quad()}, {"rigid6", rigid6()}, {"star", star()}};
}

namespace graphs {

/// Graphs as structures: vertices are points, edges two-point lines.
inline IncidenceStructure path3() {
    return detail::make({"u", "v", "w"}, {{"uv", {"u", "v"}}, {"vw", {"v", "w"}}});
}

inline IncidenceStructure triangle() {
    return detail::make({"u", "v", "w"}, {{"uv", {"u", "v"}}, {"uw", {"u", "w"}}, {"vw", {"v", "w"}}});
}

/// Two isolated vertices.
inline IncidenceStructure pair() { return detail::make({"u", "v"}, {}); }

/// Path on three vertices with different names; here the middle vertex
/// comes first.
inline IncidenceStructure path3_renamed() {
    return detail::make({"x", "y", "z"}, {{"xy", {"x", "y"}}, {"xz", {"x", "z"}}});
}

inline std::vector<std::pair<std::string, IncidenceStructure>> all() {
    return {{"pair", pair()}, {"path3", path3()}, {"path3_renamed", path3_renamed()}, {"triangle", triangle()}};
}

} // namespace graphs

} // namespace freeplane::fixtures

#endif
