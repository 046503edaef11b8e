#ifndef FREEPLANE_MORPHISM_HPP
#define FREEPLANE_MORPHISM_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <future>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "freeplane/errors.hpp"
#include "freeplane/lattice.hpp"
#include "freeplane/structure.hpp"
#include "freeplane/validate.hpp"

namespace freeplane {

enum class MorphismKind { incidence_embedding, lattice_embedding, isomorphism };

inline std::string_view kind_name(MorphismKind k) {
    switch (k) {
    case MorphismKind::incidence_embedding: return "incidence-embedding";
    case MorphismKind::lattice_embedding: return "lattice-embedding";
    case MorphismKind::isomorphism: return "isomorphism";
    }
    return "?";
}

inline std::optional<MorphismKind> parse_kind(std::string_view s) {
    if (s == "incidence" || s == "incidence-embedding") return MorphismKind::incidence_embedding;
    if (s == "lattice" || s == "lattice-embedding") return MorphismKind::lattice_embedding;
    if (s == "iso" || s == "isomorphism") return MorphismKind::isomorphism;
    return std::nullopt;
}

/// Sort-preserving element map: points to points, lines to lines, by index.
struct Morphism {
    MorphismKind kind = MorphismKind::incidence_embedding;
    std::vector<std::size_t> point_map;
    std::vector<std::size_t> line_map;

    friend bool operator==(const Morphism& a, const Morphism& b) {
        return a.point_map == b.point_map && a.line_map == b.line_map;
    }
    friend bool operator<(const Morphism& a, const Morphism& b) {
        return std::tie(a.point_map, a.line_map) < std::tie(b.point_map, b.line_map);
    }
};

inline Morphism identity_morphism(const IncidenceStructure& s, MorphismKind kind = MorphismKind::isomorphism) {
    Morphism m{kind, std::vector<std::size_t>(s.num_points()), std::vector<std::size_t>(s.num_lines())};
    for (std::size_t i = 0; i < s.num_points(); ++i) m.point_map[i] = i;
    for (std::size_t i = 0; i < s.num_lines(); ++i) m.line_map[i] = i;
    return m;
}

/// g after f.
inline Morphism compose(const Morphism& g, const Morphism& f) {
    Morphism h{g.kind, std::vector<std::size_t>(f.point_map.size()), std::vector<std::size_t>(f.line_map.size())};
    for (std::size_t i = 0; i < f.point_map.size(); ++i) h.point_map[i] = g.point_map[f.point_map[i]];
    for (std::size_t i = 0; i < f.line_map.size(); ++i) h.line_map[i] = g.line_map[f.line_map[i]];
    return h;
}

/// Inverse of a bijective morphism.
inline Morphism inverse(const Morphism& f) {
    Morphism h{f.kind, std::vector<std::size_t>(f.point_map.size()), std::vector<std::size_t>(f.line_map.size())};
    for (std::size_t i = 0; i < f.point_map.size(); ++i) h.point_map[f.point_map[i]] = i;
    for (std::size_t i = 0; i < f.line_map.size(); ++i) h.line_map[f.line_map[i]] = i;
    return h;
}

namespace detail {

/// Map sizes, ranges, injectivity and the induced incidence law
/// p on l  <=>  f(p) on f(l).
inline std::optional<std::string> incidence_violation(const Morphism& f, const IncidenceStructure& a,
                                                      const IncidenceStructure& b) {
    if (f.point_map.size() != a.num_points() || f.line_map.size() != a.num_lines()) return "map size mismatch";
    std::vector<std::size_t> pre_p(b.num_points(), IncidenceStructure::npos);
    std::vector<char> used_l(b.num_lines(), 0);
    for (std::size_t p = 0; p < a.num_points(); ++p) {
        std::size_t q = f.point_map[p];
        if (q >= b.num_points()) return "point image out of range";
        if (pre_p[q] != IncidenceStructure::npos) return "points " + a.point(p).name() + " collide";
        pre_p[q] = p;
    }
    for (std::size_t l = 0; l < a.num_lines(); ++l) {
        std::size_t m = f.line_map[l];
        if (m >= b.num_lines()) return "line image out of range";
        if (used_l[m]) return "lines " + a.line(l).name() + " collide";
        used_l[m] = 1;
        std::size_t induced = 0;
        for (std::size_t q : b.points_on(m)) {
            if (pre_p[q] == IncidenceStructure::npos) continue;
            ++induced;
            if (!a.incident(pre_p[q], l)) {
                return "incidence " + b.point(q).name() + " on " + b.line(m).name() + " not reflected";
            }
        }
        if (induced != a.points_on(l).size()) return "incidence on line " + a.line(l).name() + " not preserved";
    }
    return std::nullopt;
}

/// For an incidence embedding between linear structures: parallel lines stay
/// parallel and unjoined points stay unjoined. Equivalently, no element
/// outside the image is incident with two image elements.
inline std::optional<std::string> closure_violation(const Morphism& f, const IncidenceStructure& a,
                                                    const IncidenceStructure& b) {
    std::vector<char> in_p(b.num_points(), 0), in_l(b.num_lines(), 0);
    for (std::size_t q : f.point_map) in_p[q] = 1;
    for (std::size_t m : f.line_map) in_l[m] = 1;
    for (std::size_t q = 0; q < b.num_points(); ++q) {
        if (in_p[q]) continue;
        std::size_t hits = 0;
        for (std::size_t m : b.lines_through(q)) hits += in_l[m];
        if (hits > 1) return "image lines meet at " + b.point(q).name() + " outside the image";
    }
    for (std::size_t m = 0; m < b.num_lines(); ++m) {
        if (in_l[m]) continue;
        std::size_t hits = 0;
        for (std::size_t q : b.points_on(m)) hits += in_p[q];
        if (hits > 1) return "image points joined by " + b.line(m).name() + " outside the image";
    }
    (void)a;
    return std::nullopt;
}

inline std::optional<std::string> table_violation(const Morphism& f, const IncidenceStructure& a,
                                                  const IncidenceStructure& b) {
    auto La = to_lattice(a);
    auto Lb = to_lattice(b);
    std::vector<GeometricLattice::Index> map(La.size());
    map[La.bottom()] = Lb.bottom();
    map[La.top()] = Lb.top();
    for (std::size_t p = 0; p < a.num_points(); ++p) map[1 + p] = static_cast<GeometricLattice::Index>(1 + f.point_map[p]);
    for (std::size_t l = 0; l < a.num_lines(); ++l) {
        map[1 + a.num_points() + l] = static_cast<GeometricLattice::Index>(1 + b.num_points() + f.line_map[l]);
    }
    if (auto w = sublattice_violation(La, Lb, map)) {
        std::string msg = "lattice table not preserved:";
        for (const auto& s : *w) msg += " " + s;
        return msg;
    }
    return std::nullopt;
}

} // namespace detail

/**
 * Why `f` is not a morphism of `kind` from `a` to `b`, or nothing if it is.
 * Isomorphisms are bijective incidence embeddings. Lattice embeddings use
 * the closure characterisation and need linear structures on both sides,
 * since the lattice tables are ambiguous otherwise (PreconditionError).
 */
inline std::optional<std::string> morphism_violation(const Morphism& f, const IncidenceStructure& a,
                                                     const IncidenceStructure& b, MorphismKind kind) {
    if (kind == MorphismKind::lattice_embedding && !(a.is_linear() && b.is_linear())) {
        throw PreconditionError("lattice embeddings need linear structures");
    }
    if (auto v = detail::incidence_violation(f, a, b)) return v;
    if (kind == MorphismKind::incidence_embedding) return std::nullopt;
    if (kind == MorphismKind::isomorphism) {
        if (a.num_points() != b.num_points() || a.num_lines() != b.num_lines()) return "not bijective";
        return std::nullopt;
    }
    return detail::closure_violation(f, a, b);
}

inline bool is_morphism(const Morphism& f, const IncidenceStructure& a, const IncidenceStructure& b,
                        MorphismKind kind) {
    return !morphism_violation(f, a, b, kind).has_value();
}

struct SearchOptions {
    /// Stop after this many morphisms (0: all).
    std::size_t limit = 0;
    /// Maximum number of partial assignments examined.
    std::size_t node_cap = 50'000'000;
    /// Worker threads for the top-level branches.
    std::size_t jobs = 1;
};

enum class SearchStatus { complete, limit_reached, node_cap_exceeded };

struct SearchResult {
    std::vector<Morphism> morphisms;
    SearchStatus status = SearchStatus::complete;
    std::size_t nodes = 0;

    bool exhausted() const { return status == SearchStatus::node_cap_exceeded; }
};

namespace detail {

/// Backtracking search: points in canonical order, then lines. Candidates
/// are filtered by degree, size, and for lattice kinds parallel/unjoined
/// degree; pairwise joinedness and parallelism are checked incrementally.
class MorphismSearch {
  public:
    MorphismSearch(const IncidenceStructure& a, const IncidenceStructure& b, MorphismKind kind,
                   const SearchOptions& opt, std::atomic<std::size_t>& nodes)
        : a_(a), b_(b), kind_(kind), opt_(opt), nodes_(nodes) {
        strict_ = kind != MorphismKind::incidence_embedding;
        exact_ = kind == MorphismKind::isomorphism;
        a_joined_ = joined_matrix(a);
        b_joined_ = joined_matrix(b);
        a_meets_ = meets_matrix(a);
        b_meets_ = meets_matrix(b);
        a_unjoined_ = row_zeros(a_joined_);
        b_unjoined_ = row_zeros(b_joined_);
        a_parallel_ = row_zeros(a_meets_);
        b_parallel_ = row_zeros(b_meets_);
        pmap_.assign(a.num_points(), 0);
        lmap_.assign(a.num_lines(), 0);
        used_p_.assign(b.num_points(), 0);
        used_l_.assign(b.num_lines(), 0);
        pre_p_.assign(b.num_points(), IncidenceStructure::npos);
    }

    /// Candidates for the first point (or line, with no points).
    std::vector<std::size_t> first_candidates() {
        std::vector<std::size_t> out;
        if (a_.num_points() > 0) {
            for (std::size_t t = 0; t < b_.num_points(); ++t) {
                if (point_ok(0, t)) out.push_back(t);
            }
        } else if (a_.num_lines() > 0) {
            for (std::size_t m = 0; m < b_.num_lines(); ++m) {
                if (line_ok(0, m)) out.push_back(m);
            }
        }
        return out;
    }

    /// Explores the subtree where the first element maps to `first`
    /// (or the whole tree when `first` is empty).
    void run(std::optional<std::size_t> first) {
        if (!first) {
            if (a_.num_points() == 0 && a_.num_lines() == 0) {
                emit();
                return;
            }
            if (a_.num_points() > 0) {
                search_point(0);
            } else {
                search_line(0);
            }
            return;
        }
        if (a_.num_points() > 0) {
            assign_point(0, *first);
            search_point(1);
            unassign_point(0);
        } else {
            lmap_[0] = *first;
            used_l_[*first] = 1;
            search_line(1);
            used_l_[*first] = 0;
        }
    }

    std::vector<Morphism> results;
    bool capped = false;
    bool limited = false;

  private:
    static std::vector<std::vector<char>> joined_matrix(const IncidenceStructure& s) {
        std::vector<std::vector<char>> m(s.num_points(), std::vector<char>(s.num_points(), 0));
        for (std::size_t l = 0; l < s.num_lines(); ++l) {
            auto pts = s.points_on(l);
            for (std::size_t p : pts) {
                for (std::size_t q : pts) m[p][q] = 1;
            }
        }
        return m;
    }
    static std::vector<std::vector<char>> meets_matrix(const IncidenceStructure& s) {
        std::vector<std::vector<char>> m(s.num_lines(), std::vector<char>(s.num_lines(), 0));
        for (std::size_t p = 0; p < s.num_points(); ++p) {
            auto ls = s.lines_through(p);
            for (std::size_t l : ls) {
                for (std::size_t k : ls) m[l][k] = 1;
            }
        }
        return m;
    }
    static std::vector<std::size_t> row_zeros(const std::vector<std::vector<char>>& m) {
        std::vector<std::size_t> out(m.size(), 0);
        for (std::size_t i = 0; i < m.size(); ++i) {
            for (std::size_t j = 0; j < m.size(); ++j) out[i] += (i != j && !m[i][j]);
        }
        return out;
    }

    bool fits(std::size_t x, std::size_t y) const { return exact_ ? x == y : x <= y; }

    bool point_ok(std::size_t p, std::size_t t) const {
        if (used_p_[t]) return false;
        if (!fits(a_.lines_through(p).size(), b_.lines_through(t).size())) return false;
        if (strict_ && !fits(a_unjoined_[p], b_unjoined_[t])) return false;
        for (std::size_t q = 0; q < p; ++q) {
            bool ja = a_joined_[p][q], jb = b_joined_[t][pmap_[q]];
            if (ja && !jb) return false;
            if (strict_ && !ja && jb) return false;
        }
        return true;
    }

    bool line_ok(std::size_t l, std::size_t m) const {
        if (used_l_[m]) return false;
        if (!fits(a_.points_on(l).size(), b_.points_on(m).size())) return false;
        if (strict_ && !fits(a_parallel_[l], b_parallel_[m])) return false;
        // Induced incidence against the (complete) point assignment.
        std::size_t induced = 0;
        for (std::size_t q : b_.points_on(m)) {
            std::size_t p = pre_p_[q];
            if (p == IncidenceStructure::npos) continue;
            if (!a_.incident(p, l)) return false;
            ++induced;
        }
        if (induced != a_.points_on(l).size()) return false;
        for (std::size_t k = 0; k < l; ++k) {
            bool ma = a_meets_[l][k], mb = b_meets_[m][lmap_[k]];
            if (ma && !mb) return false;
            if (strict_ && !ma && mb) return false;
        }
        return true;
    }

    void assign_point(std::size_t p, std::size_t t) {
        pmap_[p] = t;
        used_p_[t] = 1;
        pre_p_[t] = p;
    }
    void unassign_point(std::size_t p) {
        used_p_[pmap_[p]] = 0;
        pre_p_[pmap_[p]] = IncidenceStructure::npos;
    }

    bool stop() {
        if (capped || limited) return true;
        if (nodes_.fetch_add(1, std::memory_order_relaxed) >= opt_.node_cap) {
            capped = true;
            return true;
        }
        return false;
    }

    void search_point(std::size_t p) {
        if (p == a_.num_points()) {
            search_line(0);
            return;
        }
        for (std::size_t t = 0; t < b_.num_points(); ++t) {
            if (stop()) return;
            if (!point_ok(p, t)) continue;
            assign_point(p, t);
            search_point(p + 1);
            unassign_point(p);
        }
    }

    void search_line(std::size_t l) {
        if (l == a_.num_lines()) {
            emit();
            return;
        }
        for (std::size_t m = 0; m < b_.num_lines(); ++m) {
            if (stop()) return;
            if (!line_ok(l, m)) continue;
            lmap_[l] = m;
            used_l_[m] = 1;
            search_line(l + 1);
            used_l_[m] = 0;
        }
    }

    void emit() {
        Morphism f{kind_, pmap_, lmap_};
        if (auto v = morphism_violation(f, a_, b_, kind_)) {
            throw InternalConsistencyError("search produced an invalid map: " + *v);
        }
        results.push_back(std::move(f));
        if (opt_.limit != 0 && results.size() >= opt_.limit) limited = true;
    }

    const IncidenceStructure& a_;
    const IncidenceStructure& b_;
    MorphismKind kind_;
    SearchOptions opt_;
    std::atomic<std::size_t>& nodes_;
    bool strict_ = false;
    bool exact_ = false;
    std::vector<std::vector<char>> a_joined_, b_joined_, a_meets_, b_meets_;
    std::vector<std::size_t> a_unjoined_, b_unjoined_, a_parallel_, b_parallel_;
    std::vector<std::size_t> pmap_, lmap_;
    std::vector<char> used_p_, used_l_;
    std::vector<std::size_t> pre_p_;
};

} // namespace detail

/**
 * All morphisms of `kind` from `a` to `b`, sorted lexicographically by
 * (point map, line map). With a limit, the first morphisms in that order.
 * If the node cap trips, the partial result is returned with status
 * node_cap_exceeded.
 */
inline SearchResult embeddings(const IncidenceStructure& a, const IncidenceStructure& b, MorphismKind kind,
                               const SearchOptions& opt = {}) {
    SearchResult out;
    std::atomic<std::size_t> nodes{0};
    bool sizes_fit = a.num_points() <= b.num_points() && a.num_lines() <= b.num_lines();
    if (kind == MorphismKind::isomorphism) {
        sizes_fit = a.num_points() == b.num_points() && a.num_lines() == b.num_lines();
    }
    if (kind == MorphismKind::lattice_embedding && !(a.is_linear() && b.is_linear())) {
        throw PreconditionError("lattice embeddings need linear structures");
    }
    if (!sizes_fit) return out;

    bool capped = false;
    if (opt.jobs <= 1) {
        detail::MorphismSearch s(a, b, kind, opt, nodes);
        s.run(std::nullopt);
        out.morphisms = std::move(s.results);
        capped = s.capped;
    } else {
        // Branches are explored independently and merged in branch order, which
        // is the sequential output order. A limit is applied after merging.
        detail::MorphismSearch probe(a, b, kind, opt, nodes);
        auto firsts = probe.first_candidates();
        if (a.num_points() == 0 && a.num_lines() == 0) firsts.clear();
        if (firsts.empty()) {
            probe.run(std::nullopt);
            out.morphisms = std::move(probe.results);
            capped = probe.capped;
        } else {
            std::vector<std::vector<Morphism>> parts(firsts.size());
            std::vector<char> part_capped(firsts.size(), 0);
            std::atomic<std::size_t> next{0};
            auto worker = [&] {
                for (std::size_t i = next++; i < firsts.size(); i = next++) {
                    detail::MorphismSearch s(a, b, kind, opt, nodes);
                    s.run(firsts[i]);
                    parts[i] = std::move(s.results);
                    part_capped[i] = s.capped;
                }
            };
            std::vector<std::future<void>> tasks;
            for (std::size_t j = 0; j < std::min(opt.jobs, firsts.size()); ++j) {
                tasks.push_back(std::async(std::launch::async, worker));
            }
            for (auto& t : tasks) t.get();
            for (std::size_t i = 0; i < parts.size(); ++i) {
                for (auto& m : parts[i]) out.morphisms.push_back(std::move(m));
                capped = capped || part_capped[i];
            }
        }
    }
    std::sort(out.morphisms.begin(), out.morphisms.end());
    out.nodes = nodes.load();
    if (capped) {
        out.status = SearchStatus::node_cap_exceeded;
    } else if (opt.limit != 0 && out.morphisms.size() >= opt.limit) {
        out.morphisms.resize(opt.limit);
        out.status = SearchStatus::limit_reached;
    }
    return out;
}

/// Like embeddings(), but throws ResourceError when the node cap trips.
inline std::vector<Morphism> embeddings_or_throw(const IncidenceStructure& a, const IncidenceStructure& b,
                                                 MorphismKind kind, const SearchOptions& opt = {}) {
    auto r = embeddings(a, b, kind, opt);
    if (r.exhausted()) {
        throw ResourceError("morphism search exceeded the node cap of " + std::to_string(opt.node_cap),
                            r.morphisms.size());
    }
    return std::move(r.morphisms);
}

inline SearchResult isomorphisms(const IncidenceStructure& a, const IncidenceStructure& b,
                                 const SearchOptions& opt = {}) {
    return embeddings(a, b, MorphismKind::isomorphism, opt);
}

inline bool exists_morphism(const IncidenceStructure& a, const IncidenceStructure& b, MorphismKind kind,
                            SearchOptions opt = {}) {
    opt.limit = 1;
    return !embeddings_or_throw(a, b, kind, opt).empty();
}

/// Morphisms of `kind` exist in both directions.
inline bool bi_embeddable(const IncidenceStructure& a, const IncidenceStructure& b, MorphismKind kind,
                          const SearchOptions& opt = {}) {
    return exists_morphism(a, b, kind, opt) && exists_morphism(b, a, kind, opt);
}

} // namespace freeplane

#endif
