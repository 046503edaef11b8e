#ifndef FREEPLANE_CONFINEMENT_HPP
#define FREEPLANE_CONFINEMENT_HPP

#include <algorithm>
#include <cstddef>
#include <deque>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "freeplane/errors.hpp"
#include "freeplane/structure.hpp"

namespace freeplane {

/// Every point on at least three lines and every line with at least three points.
inline bool is_confined_finite(const IncidenceStructure& s) {
    for (std::size_t p = 0; p < s.num_points(); ++p) {
        if (s.lines_through(p).size() < 3) return false;
    }
    for (std::size_t l = 0; l < s.num_lines(); ++l) {
        if (s.points_on(l).size() < 3) return false;
    }
    return true;
}

enum class DeletionReason { point_degree, line_size };

inline std::string_view deletion_reason_name(DeletionReason r) {
    return r == DeletionReason::point_degree ? "point-degree<3" : "line-size<3";
}

struct Deletion {
    ElementRef element; ///< index into the input structure
    DeletionReason reason;
    /// 1 for elements failing in the input, k+1 for elements that fail only
    /// after a round-k deletion.
    std::size_t round;
};

struct CoreResult {
    IncidenceStructure core;
    std::vector<Deletion> deleted;
    std::size_t rounds = 0;
};

/**
 * Peels points on fewer than three surviving lines and lines with fewer than
 * three surviving points until nothing changes. The survivors form the
 * largest substructure with minimum point degree and line size three.
 *
 * `queue_order` fixes the initial work-queue order (default: all points, then
 * all lines, canonically). The core does not depend on it; the deletion log
 * does.
 */
inline CoreResult confined_core(const IncidenceStructure& s,
                                std::optional<std::span<const ElementRef>> queue_order = std::nullopt) {
    std::size_t np = s.num_points();
    std::size_t nl = s.num_lines();
    std::vector<std::size_t> pdeg(np), lsize(nl);
    std::vector<char> palive(np, 1), lalive(nl, 1);
    std::vector<std::size_t> pround(np, 0), lround(nl, 0);
    for (std::size_t p = 0; p < np; ++p) pdeg[p] = s.lines_through(p).size();
    for (std::size_t l = 0; l < nl; ++l) lsize[l] = s.points_on(l).size();

    std::deque<ElementRef> queue;
    if (queue_order) {
        for (ElementRef e : *queue_order) {
            if (e.index >= (e.sort == Sort::point ? np : nl)) {
                throw PreconditionError("queue order references an element outside the structure");
            }
            queue.push_back(e);
        }
    }
    // Elements missing from a caller-supplied order are still examined.
    for (std::size_t p = 0; p < np; ++p) queue.push_back({Sort::point, p});
    for (std::size_t l = 0; l < nl; ++l) queue.push_back({Sort::line, l});

    CoreResult out;
    while (!queue.empty()) {
        ElementRef e = queue.front();
        queue.pop_front();
        if (e.sort == Sort::point) {
            if (!palive[e.index] || pdeg[e.index] >= 3) continue;
            palive[e.index] = 0;
            std::size_t round = pround[e.index] + 1;
            out.deleted.push_back({e, DeletionReason::point_degree, round});
            for (std::size_t l : s.lines_through(e.index)) {
                if (!lalive[l]) continue;
                --lsize[l];
                if (lsize[l] < 3) {
                    lround[l] = std::max(lround[l], round);
                    queue.push_back({Sort::line, l});
                }
            }
        } else {
            if (!lalive[e.index] || lsize[e.index] >= 3) continue;
            lalive[e.index] = 0;
            std::size_t round = lround[e.index] + 1;
            out.deleted.push_back({e, DeletionReason::line_size, round});
            for (std::size_t p : s.points_on(e.index)) {
                if (!palive[p]) continue;
                --pdeg[p];
                if (pdeg[p] < 3) {
                    pround[p] = std::max(pround[p], round);
                    queue.push_back({Sort::point, p});
                }
            }
        }
    }
    for (const auto& d : out.deleted) out.rounds = std::max(out.rounds, d.round);

    std::vector<std::size_t> keep_p, keep_l;
    for (std::size_t p = 0; p < np; ++p) {
        if (palive[p]) keep_p.push_back(p);
    }
    for (std::size_t l = 0; l < nl; ++l) {
        if (lalive[l]) keep_l.push_back(l);
    }
    out.core = induced_substructure(s, keep_p, keep_l);
    return out;
}

} // namespace freeplane

#endif
