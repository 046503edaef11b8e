#ifndef FREEPLANE_VALIDATE_HPP
#define FREEPLANE_VALIDATE_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "freeplane/detail/bitset.hpp"
#include "freeplane/errors.hpp"
#include "freeplane/structure.hpp"

namespace freeplane {

/**
 * Plane axioms.
 *
 *  - A: every two distinct points lie on exactly one common line.
 *  - B: every two distinct lines share at most one point.
 *  - C: every line has at least two points.
 *  - D: there are three non-collinear points.
 *  - B_prime: every two distinct lines share exactly one point.
 *  - pairwise_uniqueness: every two distinct points share at most one line.
 */
enum class Axiom : std::size_t { A = 0, B, C, D, B_prime, pairwise_uniqueness };

inline constexpr std::array<Axiom, 6> all_axioms{Axiom::A, Axiom::B, Axiom::C, Axiom::D, Axiom::B_prime,
                                                Axiom::pairwise_uniqueness};

inline std::string_view axiom_name(Axiom a) {
    switch (a) {
    case Axiom::A: return "A";
    case Axiom::B: return "B";
    case Axiom::C: return "C";
    case Axiom::D: return "D";
    case Axiom::B_prime: return "B'";
    case Axiom::pairwise_uniqueness: return "pairwise-uniqueness";
    }
    return "?";
}

using Witness = std::vector<std::string>;

struct AxiomResult {
    bool satisfied = true;
    /// Total number of violations, including those not recorded as witnesses.
    std::size_t violation_count = 0;
    std::vector<Witness> violations;
};

struct ValidationReport {
    std::array<AxiomResult, 6> results;

    const AxiomResult& operator[](Axiom a) const { return results[static_cast<std::size_t>(a)]; }
    AxiomResult& operator[](Axiom a) { return results[static_cast<std::size_t>(a)]; }
    bool satisfied(Axiom a) const { return (*this)[a].satisfied; }

    /// Axioms (A)-(D) all hold.
    bool is_plane() const {
        return satisfied(Axiom::A) && satisfied(Axiom::B) && satisfied(Axiom::C) && satisfied(Axiom::D);
    }
};

namespace detail {

inline void record(AxiomResult& r, Witness w, std::size_t max_witnesses) {
    r.satisfied = false;
    ++r.violation_count;
    if (r.violations.size() < max_witnesses) r.violations.push_back(std::move(w));
}

/// Calls visit(i, j, common) for every pair i < j of points (or lines, when
/// `of_lines`), with `common` the number of shared lines (points).
template <typename Visit>
void for_each_pair_with_overlap(const IncidenceStructure& s, bool of_lines, Visit&& visit) {
    std::size_t n = of_lines ? s.num_lines() : s.num_points();
    std::vector<std::size_t> count(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::fill(count.begin(), count.end(), 0);
        auto via = of_lines ? s.points_on(i) : s.lines_through(i);
        for (std::size_t v : via) {
            auto others = of_lines ? s.lines_through(v) : s.points_on(v);
            for (std::size_t j : others) ++count[j];
        }
        for (std::size_t j = i + 1; j < n; ++j) visit(i, j, count[j]);
    }
}

inline bool has_noncollinear_triple(const IncidenceStructure& s) {
    std::size_t n = s.num_points();
    if (n < 3) return false;
    for (std::size_t l = 0; l < s.num_lines(); ++l) {
        if (s.points_on(l).size() == n) return false;
    }
    if (s.is_linear()) return true;
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            auto pq = s.common_lines(p, q);
            for (std::size_t r = q + 1; r < n; ++r) {
                bool collinear = false;
                for (std::size_t l : pq) {
                    if (s.incident(r, l)) {
                        collinear = true;
                        break;
                    }
                }
                if (!collinear) return true;
            }
        }
    }
    return false;
}

} // namespace detail

/**
 * Checks every axiom and records up to `max_witnesses` violations each.
 * Witnesses are element names: point pairs (plus the offending common lines)
 * for A and pairwise-uniqueness, line pairs (plus common points) for B and
 * B', single lines for C, and the whole point set for D.
 */
inline ValidationReport validate(const IncidenceStructure& s, std::size_t max_witnesses = 64) {
    ValidationReport rep;
    auto pname = [&](std::size_t p) { return s.point(p).name(); };
    auto lname = [&](std::size_t l) { return s.line(l).name(); };

    detail::for_each_pair_with_overlap(s, false, [&](std::size_t p, std::size_t q, std::size_t common) {
        if (common == 1) return;
        Witness w{pname(p), pname(q)};
        if (common > 1) {
            auto ls = s.common_lines(p, q);
            w.push_back(lname(ls[0]));
            w.push_back(lname(ls[1]));
            detail::record(rep[Axiom::pairwise_uniqueness], w, max_witnesses);
        }
        detail::record(rep[Axiom::A], std::move(w), max_witnesses);
    });

    detail::for_each_pair_with_overlap(s, true, [&](std::size_t l, std::size_t m, std::size_t common) {
        if (common == 1) return;
        Witness w{lname(l), lname(m)};
        if (common > 1) {
            auto ps = s.common_points(l, m);
            w.push_back(pname(ps[0]));
            w.push_back(pname(ps[1]));
            detail::record(rep[Axiom::B], w, max_witnesses);
        }
        detail::record(rep[Axiom::B_prime], std::move(w), max_witnesses);
    });

    for (std::size_t l = 0; l < s.num_lines(); ++l) {
        if (s.points_on(l).size() < 2) detail::record(rep[Axiom::C], {lname(l)}, max_witnesses);
    }

    if (!detail::has_noncollinear_triple(s)) {
        Witness w;
        for (std::size_t p = 0; p < s.num_points(); ++p) w.push_back(pname(p));
        detail::record(rep[Axiom::D], std::move(w), max_witnesses);
    }
    return rep;
}

/// Every two distinct lines meet in exactly one point. Requires a plane.
inline bool is_projective(const IncidenceStructure& s) {
    auto rep = validate(s, 1);
    if (!rep.is_plane()) {
        std::string failed;
        for (Axiom a : {Axiom::A, Axiom::B, Axiom::C, Axiom::D}) {
            if (!rep.satisfied(a)) failed += (failed.empty() ? "" : ", ") + std::string(axiom_name(a));
        }
        throw NotAPlaneError("not a plane: axiom(s) " + failed + " fail");
    }
    return rep.satisfied(Axiom::B_prime);
}

/// Lines with exactly two points.
inline std::vector<std::size_t> trivial_lines(const IncidenceStructure& s) {
    std::vector<std::size_t> out;
    for (std::size_t l = 0; l < s.num_lines(); ++l) {
        if (s.points_on(l).size() == 2) out.push_back(l);
    }
    return out;
}

/// Lines with at least three points.
inline std::vector<std::size_t> nontrivial_lines(const IncidenceStructure& s) {
    std::vector<std::size_t> out;
    for (std::size_t l = 0; l < s.num_lines(); ++l) {
        if (s.points_on(l).size() >= 3) out.push_back(l);
    }
    return out;
}

/// Points on three or more non-trivial lines; empty iff the structure is simple.
inline std::vector<std::size_t> exceptional_points(const IncidenceStructure& s) {
    std::vector<std::size_t> out;
    for (std::size_t p = 0; p < s.num_points(); ++p) {
        std::size_t n = 0;
        for (std::size_t l : s.lines_through(p)) n += s.points_on(l).size() >= 3;
        if (n >= 3) out.push_back(p);
    }
    return out;
}

namespace detail {

/// Pairs (i < j) of lines with no common point, or of points with no common
/// line. Calls visit(i, j); returns the number of pairs.
template <typename Visit>
std::size_t for_each_disjoint_pair(const IncidenceStructure& s, bool of_lines, Visit&& visit) {
    std::size_t n = of_lines ? s.num_lines() : s.num_points();
    DynamicBitset touching(n);
    std::size_t total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        touching.clear();
        auto via = of_lines ? s.points_on(i) : s.lines_through(i);
        for (std::size_t v : via) {
            auto others = of_lines ? s.lines_through(v) : s.points_on(v);
            for (std::size_t j : others) touching.set(j);
        }
        std::size_t disjoint = (n - 1 - i) - touching.count_above(i);
        total += disjoint;
        if constexpr (!std::is_same_v<std::decay_t<Visit>, std::nullptr_t>) {
            if (disjoint == 0) continue;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!touching.test(j)) visit(i, j);
            }
        }
    }
    return total;
}

} // namespace detail

/// Unordered pairs of distinct lines without a common point, canonical order.
inline std::vector<std::pair<std::size_t, std::size_t>> parallel_pairs(const IncidenceStructure& s) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    detail::for_each_disjoint_pair(s, true, [&](std::size_t i, std::size_t j) { out.emplace_back(i, j); });
    return out;
}

/// Unordered pairs of distinct points without a common line, canonical order.
inline std::vector<std::pair<std::size_t, std::size_t>> unjoined_pairs(const IncidenceStructure& s) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    detail::for_each_disjoint_pair(s, false, [&](std::size_t i, std::size_t j) { out.emplace_back(i, j); });
    return out;
}

inline std::size_t count_parallel_pairs(const IncidenceStructure& s) {
    return detail::for_each_disjoint_pair(s, true, nullptr);
}

inline std::size_t count_unjoined_pairs(const IncidenceStructure& s) {
    return detail::for_each_disjoint_pair(s, false, nullptr);
}

} // namespace freeplane

#endif
