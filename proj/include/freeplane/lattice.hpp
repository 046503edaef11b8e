#ifndef FREEPLANE_LATTICE_HPP
#define FREEPLANE_LATTICE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "freeplane/errors.hpp"
#include "freeplane/structure.hpp"
#include "freeplane/validate.hpp"

namespace freeplane {

/// Classification of a lattice element in the plane correspondence.
enum class LatticeRank : int { unclassified = -1, bottom = 0, atom = 1, coatom = 2, top = 3 };

struct LatticeElement {
    std::string name;
    /// Present for atoms and coatoms.
    std::optional<ElementTerm> term;
    LatticeRank rank = LatticeRank::unclassified;

    friend bool operator==(const LatticeElement& a, const LatticeElement& b) {
        return a.name == b.name && a.rank == b.rank;
    }
};

/**
 * A finite bounded lattice given by explicit join and meet tables.
 *
 * Built from a plane, the elements are laid out as 0, the points, the lines,
 * 1, and the tables follow the usual correspondence: two points join to
 * their line, two lines meet in their common point, and missing joins and
 * meets are 1 and 0. The source structure is kept for provenance.
 */
class GeometricLattice {
  public:
    using Index = std::uint32_t;

    GeometricLattice() = default;

    /**
     * Builds a lattice from raw tables (row-major, size n*n). If no element
     * carries a rank, ranks are derived from heights: the least element is
     * the bottom, the greatest the top, height-1 elements atoms and
     * remaining elements below the top coatoms. Throws NotLength3Error if
     * bounds are missing or an element cannot be classified.
     */
    static GeometricLattice from_tables(std::vector<LatticeElement> elements, std::vector<Index> join,
                                        std::vector<Index> meet) {
        std::size_t n = elements.size();
        if (n == 0) throw NotLength3Error("lattice has no elements");
        if (join.size() != n * n || meet.size() != n * n) throw StructureError("lattice table has the wrong size");
        for (auto v : join) {
            if (v >= n) throw StructureError("lattice join table entry out of range");
        }
        for (auto v : meet) {
            if (v >= n) throw StructureError("lattice meet table entry out of range");
        }
        GeometricLattice L;
        L.elements_ = std::move(elements);
        L.join_ = std::move(join);
        L.meet_ = std::move(meet);
        L.reindex();

        bool any_rank = std::any_of(L.elements_.begin(), L.elements_.end(),
                                    [](const LatticeElement& e) { return e.rank != LatticeRank::unclassified; });
        std::optional<Index> bot, top;
        for (Index x = 0; x < n; ++x) {
            bool is_bot = true, is_top = true;
            for (Index y = 0; y < n; ++y) {
                is_bot = is_bot && L.join(x, y) == y;
                is_top = is_top && L.join(x, y) == x;
            }
            if (is_bot && !bot) bot = x;
            if (is_top && !top) top = x;
        }
        if (!bot || !top) throw NotLength3Error("lattice has no least or no greatest element");
        L.bottom_ = *bot;
        L.top_ = *top;
        if (!any_rank) {
            auto h = L.heights();
            for (Index x = 0; x < n; ++x) {
                auto& e = L.elements_[x];
                if (x == L.bottom_) {
                    e.rank = LatticeRank::bottom;
                } else if (x == L.top_) {
                    e.rank = LatticeRank::top;
                } else if (h[x] == 1) {
                    e.rank = LatticeRank::atom;
                } else if (h[x] == 2 && L.covers(x, L.top_)) {
                    e.rank = LatticeRank::coatom;
                }
            }
        }
        for (Index x = 0; x < n; ++x) {
            auto& e = L.elements_[x];
            if (e.rank == LatticeRank::unclassified) {
                throw NotLength3Error("element '" + e.name + "' is neither bottom, atom, coatom nor top");
            }
            if ((e.rank == LatticeRank::bottom) != (x == L.bottom_) || (e.rank == LatticeRank::top) != (x == L.top_)) {
                throw NotLength3Error("element '" + e.name + "' has a rank inconsistent with the order");
            }
            if ((e.rank == LatticeRank::atom || e.rank == LatticeRank::coatom) && !e.term) {
                e.term = ElementTerm::parse(e.name);
            }
        }
        return L;
    }

    std::size_t size() const { return elements_.size(); }
    const LatticeElement& element(Index x) const { return elements_[x]; }
    const std::vector<LatticeElement>& elements() const { return elements_; }
    const std::string& name(Index x) const { return elements_[x].name; }
    LatticeRank rank(Index x) const { return elements_[x].rank; }
    Index bottom() const { return bottom_; }
    Index top() const { return top_; }

    Index join(Index a, Index b) const { return join_[std::size_t{a} * size() + b]; }
    Index meet(Index a, Index b) const { return meet_[std::size_t{a} * size() + b]; }
    bool leq(Index a, Index b) const { return join(a, b) == b; }
    bool less(Index a, Index b) const { return a != b && leq(a, b); }

    /// b covers a: a < b with nothing strictly between.
    bool covers(Index a, Index b) const {
        if (!less(a, b)) return false;
        for (Index z = 0; z < size(); ++z) {
            if (less(a, z) && less(z, b)) return false;
        }
        return true;
    }

    /// Length of the longest chain from the bottom to each element.
    std::vector<std::size_t> heights() const {
        std::size_t n = size();
        std::vector<std::size_t> below(n, 0);
        for (Index x = 0; x < n; ++x) {
            for (Index y = 0; y < n; ++y) below[x] += less(y, x);
        }
        std::vector<Index> order(n);
        std::iota(order.begin(), order.end(), Index{0});
        std::sort(order.begin(), order.end(), [&](Index a, Index b) { return below[a] < below[b]; });
        std::vector<std::size_t> h(n, 0);
        for (Index y : order) {
            for (Index x = 0; x < n; ++x) {
                if (less(x, y)) h[y] = std::max(h[y], h[x] + 1);
            }
        }
        return h;
    }

    std::optional<Index> find(std::string_view name) const {
        auto it = index_.find(std::string(name));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    /// Table entries where the source structure offered more than one
    /// candidate (two points on two lines, or two lines through two points).
    const std::vector<Witness>& ill_defined() const { return ill_defined_; }

    const std::shared_ptr<const IncidenceStructure>& source() const { return source_; }

    const std::vector<Index>& join_table() const { return join_; }
    const std::vector<Index>& meet_table() const { return meet_; }

    friend bool operator==(const GeometricLattice& a, const GeometricLattice& b) {
        return a.elements_ == b.elements_ && a.join_ == b.join_ && a.meet_ == b.meet_;
    }

  private:
    friend GeometricLattice to_lattice(const IncidenceStructure& s);

    void reindex() {
        index_.clear();
        for (Index x = 0; x < elements_.size(); ++x) {
            if (!index_.emplace(elements_[x].name, x).second) {
                throw StructureError("duplicate lattice element '" + elements_[x].name + "'");
            }
        }
    }

    std::vector<LatticeElement> elements_;
    std::vector<Index> join_;
    std::vector<Index> meet_;
    Index bottom_ = 0;
    Index top_ = 0;
    std::unordered_map<std::string, Index> index_;
    std::vector<Witness> ill_defined_;
    std::shared_ptr<const IncidenceStructure> source_;
};

/**
 * The bounded lattice {0} + points + lines + {1}. Unjoined points join to 1
 * and parallel lines meet in 0, so the tables are total on partial
 * structures. Where uniqueness fails the canonically first candidate is used
 * and the pair is recorded in ill_defined().
 */
inline GeometricLattice to_lattice(const IncidenceStructure& s) {
    using Index = GeometricLattice::Index;
    std::size_t np = s.num_points(), nl = s.num_lines();
    std::size_t n = np + nl + 2;
    GeometricLattice L;
    L.elements_.reserve(n);
    L.elements_.push_back({"0", std::nullopt, LatticeRank::bottom});
    for (const auto& t : s.points()) L.elements_.push_back({t.name(), t, LatticeRank::atom});
    for (const auto& t : s.lines()) L.elements_.push_back({t.name(), t, LatticeRank::coatom});
    L.elements_.push_back({"1", std::nullopt, LatticeRank::top});
    L.bottom_ = 0;
    L.top_ = static_cast<Index>(n - 1);
    L.reindex();

    const Index bot = 0, top = L.top_;
    auto P = [](std::size_t p) { return static_cast<Index>(1 + p); };
    auto Ln = [np](std::size_t l) { return static_cast<Index>(1 + np + l); };

    L.join_.assign(n * n, top);
    L.meet_.assign(n * n, bot);
    auto set = [&](std::vector<Index>& t, Index a, Index b, Index v) {
        t[std::size_t{a} * n + b] = v;
        t[std::size_t{b} * n + a] = v;
    };
    for (Index x = 0; x < n; ++x) {
        set(L.join_, x, x, x);
        set(L.meet_, x, x, x);
        set(L.join_, bot, x, x);
        set(L.meet_, bot, x, bot);
        set(L.join_, top, x, top);
        set(L.meet_, top, x, x);
    }
    for (std::size_t p = 0; p < np; ++p) {
        for (std::size_t q = p + 1; q < np; ++q) {
            auto ls = s.common_lines(p, q);
            if (ls.empty()) continue;
            if (ls.size() > 1) {
                L.ill_defined_.push_back({s.point(p).name(), s.point(q).name(), s.line(ls[0]).name(),
                                          s.line(ls[1]).name()});
            }
            set(L.join_, P(p), P(q), Ln(ls[0]));
        }
        for (std::size_t l : s.lines_through(p)) {
            set(L.join_, P(p), Ln(l), Ln(l));
            set(L.meet_, P(p), Ln(l), P(p));
        }
    }
    for (std::size_t l = 0; l < nl; ++l) {
        for (std::size_t m = l + 1; m < nl; ++m) {
            auto ps = s.common_points(l, m);
            if (ps.empty()) continue;
            if (ps.size() > 1) {
                L.ill_defined_.push_back({s.line(l).name(), s.line(m).name(), s.point(ps[0]).name(),
                                          s.point(ps[1]).name()});
            }
            set(L.meet_, Ln(l), Ln(m), P(ps[0]));
        }
    }
    L.source_ = std::make_shared<const IncidenceStructure>(s);
    return L;
}

/// Points are the atoms, lines the coatoms, and a is on b iff a v b = b.
inline IncidenceStructure from_lattice(const GeometricLattice& L) {
    using Index = GeometricLattice::Index;
    StructureBuilder b;
    std::vector<Index> atoms, coatoms;
    for (Index x = 0; x < L.size(); ++x) {
        const auto& e = L.element(x);
        switch (e.rank) {
        case LatticeRank::atom:
            atoms.push_back(x);
            b.add_point(e.term ? *e.term : ElementTerm::parse(e.name));
            break;
        case LatticeRank::coatom:
            coatoms.push_back(x);
            b.add_line(e.term ? *e.term : ElementTerm::parse(e.name));
            break;
        case LatticeRank::bottom:
        case LatticeRank::top: break;
        case LatticeRank::unclassified: throw NotLength3Error("element '" + e.name + "' is not classified");
        }
    }
    for (Index a : atoms) {
        for (Index c : coatoms) {
            if (L.join(a, c) == c) b.add_incidence(L.name(a), L.name(c));
        }
    }
    return b.build();
}

struct LatticeCheckItem {
    std::string name;
    bool satisfied = true;
    std::vector<Witness> witnesses;
};

struct LatticeCheckReport {
    std::vector<LatticeCheckItem> items;

    bool passed() const {
        return std::all_of(items.begin(), items.end(), [](const LatticeCheckItem& i) { return i.satisfied; });
    }
    const LatticeCheckItem* find(std::string_view name) const {
        for (const auto& i : items) {
            if (i.name == name) return &i;
        }
        return nullptr;
    }
};

/**
 * Exhaustive table checks: well-definedness of the source tables, lattice
 * laws (commutativity, idempotence, associativity, absorption), bounds,
 * gradedness (every cover raises height by one), length 3, atomisticity and
 * semimodularity on covering pairs. Cubic in the lattice size.
 */
inline LatticeCheckReport check_geometric_length3(const GeometricLattice& L, std::size_t max_witnesses = 16) {
    using Index = GeometricLattice::Index;
    const Index n = static_cast<Index>(L.size());
    LatticeCheckReport rep;
    auto item = [&](std::string name) -> LatticeCheckItem& {
        rep.items.push_back({std::move(name), true, {}});
        return rep.items.back();
    };
    auto fail = [&](LatticeCheckItem& it, Witness w) {
        it.satisfied = false;
        if (it.witnesses.size() < max_witnesses) it.witnesses.push_back(std::move(w));
    };
    auto nm = [&](Index x) { return L.name(x); };

    auto& wd = item("well-defined");
    for (const auto& w : L.ill_defined()) fail(wd, w);

    auto& laws = item("lattice-laws");
    for (Index a = 0; a < n; ++a) {
        if (L.join(a, a) != a || L.meet(a, a) != a) fail(laws, {"idempotence", nm(a)});
        for (Index b = 0; b < n; ++b) {
            if (L.join(a, b) != L.join(b, a) || L.meet(a, b) != L.meet(b, a)) fail(laws, {"commutativity", nm(a), nm(b)});
            if (L.join(a, L.meet(a, b)) != a || L.meet(a, L.join(a, b)) != a) fail(laws, {"absorption", nm(a), nm(b)});
            for (Index c = 0; c < n; ++c) {
                if (L.join(L.join(a, b), c) != L.join(a, L.join(b, c)) ||
                    L.meet(L.meet(a, b), c) != L.meet(a, L.meet(b, c))) {
                    fail(laws, {"associativity", nm(a), nm(b), nm(c)});
                }
            }
        }
    }

    auto& bounded = item("bounded");
    for (Index x = 0; x < n; ++x) {
        if (!L.leq(L.bottom(), x) || !L.leq(x, L.top())) fail(bounded, {nm(x)});
    }

    auto h = L.heights();
    std::vector<std::vector<char>> cover(n, std::vector<char>(n, 0));
    for (Index a = 0; a < n; ++a) {
        for (Index b = 0; b < n; ++b) cover[a][b] = L.covers(a, b);
    }

    auto& graded = item("graded");
    for (Index a = 0; a < n; ++a) {
        for (Index b = 0; b < n; ++b) {
            if (cover[a][b] && h[b] != h[a] + 1) fail(graded, {nm(a), nm(b)});
        }
    }

    auto& length = item("length3");
    if (h[L.top()] != 3) fail(length, {nm(L.top()), std::to_string(h[L.top()])});

    auto& atomistic = item("atomistic");
    for (Index x = 0; x < n; ++x) {
        Index acc = L.bottom();
        for (Index a = 0; a < n; ++a) {
            if (cover[L.bottom()][a] && L.leq(a, x)) acc = L.join(acc, a);
        }
        if (acc != x) fail(atomistic, {nm(x)});
    }

    auto& semimodular = item("semimodular");
    for (Index a = 0; a < n; ++a) {
        for (Index b = a + 1; b < n; ++b) {
            Index m = L.meet(a, b);
            if (!cover[m][a] || !cover[m][b]) continue;
            Index j = L.join(a, b);
            if (!cover[a][j] || !cover[b][j]) fail(semimodular, {nm(a), nm(b)});
        }
    }
    return rep;
}

/// Plane-axiom status and closure of an induced substructure, reported apart.
struct CompletenessReport {
    /// Axioms (A)-(D) hold for the substructure on its own.
    bool plane_axioms = false;
    /// Meets of its lines and joins of its points that exist in the ambient
    /// structure are in the substructure.
    bool closed = true;
    std::vector<Witness> unclosed;

    bool complete() const { return plane_axioms && closed; }
};

/**
 * Complete-subplane test for `sub` inside `ambient`. Throws
 * PreconditionError if `sub` is not an induced substructure.
 */
inline CompletenessReport is_complete_subplane(const IncidenceStructure& sub, const IncidenceStructure& ambient) {
    if (!is_induced_substructure(sub, ambient)) {
        throw PreconditionError("not an induced substructure of the ambient structure");
    }
    CompletenessReport rep;
    rep.plane_axioms = validate(sub, 1).is_plane();
    std::vector<std::size_t> lines, points;
    for (const auto& t : sub.lines()) lines.push_back(*ambient.find_line(t.name()));
    for (const auto& t : sub.points()) points.push_back(*ambient.find_point(t.name()));
    for (std::size_t i = 0; i < lines.size(); ++i) {
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            for (std::size_t x : ambient.common_points(lines[i], lines[j])) {
                if (!sub.find_point(ambient.point(x).name())) {
                    rep.closed = false;
                    rep.unclosed.push_back({"meet", ambient.line(lines[i]).name(), ambient.line(lines[j]).name(),
                                            ambient.point(x).name()});
                }
            }
        }
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            for (std::size_t l : ambient.common_lines(points[i], points[j])) {
                if (!sub.find_line(ambient.line(l).name())) {
                    rep.closed = false;
                    rep.unclosed.push_back({"join", ambient.point(points[i]).name(), ambient.point(points[j]).name(),
                                            ambient.line(l).name()});
                }
            }
        }
    }
    return rep;
}

/**
 * First violation of `map` (L1 index -> L2 index) being a lattice embedding
 * that fixes 0 and 1: non-injectivity, a moved bound, or a join/meet that is
 * not preserved. Empty if it is one.
 */
inline std::optional<Witness> sublattice_violation(const GeometricLattice& L1, const GeometricLattice& L2,
                                                   std::span<const GeometricLattice::Index> map) {
    using Index = GeometricLattice::Index;
    if (map.size() != L1.size()) return Witness{"map-size"};
    std::vector<char> used(L2.size(), 0);
    for (Index x = 0; x < L1.size(); ++x) {
        if (map[x] >= L2.size()) return Witness{"out-of-range", L1.name(x)};
        if (used[map[x]]) return Witness{"not-injective", L1.name(x)};
        used[map[x]] = 1;
    }
    if (map[L1.bottom()] != L2.bottom()) return Witness{"bottom", L1.name(L1.bottom())};
    if (map[L1.top()] != L2.top()) return Witness{"top", L1.name(L1.top())};
    for (Index a = 0; a < L1.size(); ++a) {
        for (Index b = a + 1; b < L1.size(); ++b) {
            if (map[L1.join(a, b)] != L2.join(map[a], map[b])) return Witness{"join", L1.name(a), L1.name(b)};
            if (map[L1.meet(a, b)] != L2.meet(map[a], map[b])) return Witness{"meet", L1.name(a), L1.name(b)};
        }
    }
    return std::nullopt;
}

inline bool is_sublattice(const GeometricLattice& L1, const GeometricLattice& L2,
                          std::span<const GeometricLattice::Index> map) {
    return !sublattice_violation(L1, L2, map).has_value();
}

/// Inclusion by element name. Throws PreconditionError if a name of L1 is
/// missing from L2.
inline bool is_sublattice(const GeometricLattice& L1, const GeometricLattice& L2) {
    std::vector<GeometricLattice::Index> map(L1.size());
    for (GeometricLattice::Index x = 0; x < L1.size(); ++x) {
        auto y = L2.find(L1.name(x));
        if (!y) throw PreconditionError("element '" + L1.name(x) + "' is not in the larger lattice");
        map[x] = *y;
    }
    return is_sublattice(L1, L2, map);
}

} // namespace freeplane

#endif
