#ifndef FREEPLANE_EXTENSION_HPP
#define FREEPLANE_EXTENSION_HPP

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "freeplane/errors.hpp"
#include "freeplane/structure.hpp"
#include "freeplane/validate.hpp"

namespace freeplane {

/// `meets_only` adds only meet points for parallel lines; `full` also adds
/// a joining line for every unjoined point pair.
enum class ExtensionMode { meets_only, full };

inline std::string_view mode_name(ExtensionMode m) { return m == ExtensionMode::full ? "full" : "meets"; }

inline std::optional<ExtensionMode> parse_mode(std::string_view s) {
    if (s == "full") return ExtensionMode::full;
    if (s == "meets" || s == "meets_only" || s == "meets-only") return ExtensionMode::meets_only;
    return std::nullopt;
}

inline constexpr std::size_t unlimited_budget = std::numeric_limits<std::size_t>::max();

/**
 * One simultaneous completion step. For every pair of parallel lines a new
 * point meet(l,l') on exactly those two lines; in full mode also, for every
 * unjoined pair of points, a new line join(p,q) through exactly those two.
 * Pairs are taken from `s` only, so new elements are not completed against
 * each other until the next step.
 *
 * Throws BudgetError if the result would exceed `budget` elements and
 * PreconditionError if `s` is not linear.
 */
inline IncidenceStructure extend_once(const IncidenceStructure& s, ExtensionMode mode,
                                      std::size_t budget = unlimited_budget) {
    if (!s.is_linear()) {
        throw PreconditionError("free extension needs a linear structure (at most one line per point pair)");
    }
    std::size_t new_points = count_parallel_pairs(s);
    std::size_t new_lines = mode == ExtensionMode::full ? count_unjoined_pairs(s) : 0;
    std::size_t points = s.num_points() + new_points;
    std::size_t lines = s.num_lines() + new_lines;
    if (points + lines > budget) {
        throw BudgetError("extension stage would have " + std::to_string(points + lines) + " elements, budget is " +
                              std::to_string(budget),
                          points, lines, budget);
    }
    if (new_points == 0 && new_lines == 0) return s;

    StructureBuilder b;
    b.add_all(s);
    for (auto [l, m] : parallel_pairs(s)) {
        auto t = ElementTerm::meet(s.line(l), s.line(m));
        b.add_point(t);
        b.add_incidence(t.name(), s.line(l).name());
        b.add_incidence(t.name(), s.line(m).name());
    }
    if (mode == ExtensionMode::full) {
        for (auto [p, q] : unjoined_pairs(s)) {
            auto t = ElementTerm::join(s.point(p), s.point(q));
            b.add_line(t, {s.point(p).name(), s.point(q).name()});
        }
    }
    return b.build();
}

/// extend_once(s, mode) == s.
inline bool is_fixed_point(const IncidenceStructure& s, ExtensionMode mode) {
    if (count_parallel_pairs(s) != 0) return false;
    return mode == ExtensionMode::meets_only || count_unjoined_pairs(s) == 0;
}

enum class StopReason { completed, fixed_point, budget };

inline std::string_view stop_reason_name(StopReason r) {
    switch (r) {
    case StopReason::completed: return "completed";
    case StopReason::fixed_point: return "fixed-point";
    case StopReason::budget: return "budget";
    }
    return "?";
}

/// Truncations P_0 = P, P_1, ..., of the free extension.
struct ExtensionTrace {
    std::vector<IncidenceStructure> stages;
    ExtensionMode mode = ExtensionMode::full;
    std::size_t budget = unlimited_budget;
    std::size_t requested_stages = 0;
    StopReason stop = StopReason::completed;
    /// For fixed_point: first stage equal to its successor. For budget: the
    /// stage that could not be built.
    std::size_t stop_stage = 0;
    /// Size the over-budget stage would have had.
    std::size_t refused_points = 0;
    std::size_t refused_lines = 0;

    bool truncated() const { return stop == StopReason::budget; }
    const IncidenceStructure& last() const { return stages.back(); }
};

/**
 * Applies extend_once up to `n` times. On reaching a fixed point the
 * remaining stages are copies of it. If the budget trips, the trace holds
 * the stages built so far and records the refused stage.
 */
inline ExtensionTrace extend(const IncidenceStructure& s, std::size_t n, ExtensionMode mode = ExtensionMode::full,
                             std::size_t budget = unlimited_budget) {
    ExtensionTrace trace;
    trace.mode = mode;
    trace.budget = budget;
    trace.requested_stages = n;
    trace.stages.push_back(s);
    for (std::size_t k = 1; k <= n; ++k) {
        if (trace.stop == StopReason::fixed_point) {
            trace.stages.push_back(trace.stages.back());
            continue;
        }
        try {
            auto next = extend_once(trace.stages.back(), mode, budget);
            bool same = next.num_elements() == trace.stages.back().num_elements();
            trace.stages.push_back(std::move(next));
            if (same) {
                trace.stop = StopReason::fixed_point;
                trace.stop_stage = k - 1;
            }
        } catch (const BudgetError& e) {
            trace.stop = StopReason::budget;
            trace.stop_stage = k;
            trace.refused_points = e.points();
            trace.refused_lines = e.lines();
            break;
        }
    }
    return trace;
}

} // namespace freeplane

#endif
