#ifndef FREEPLANE_GROUP_HPP
#define FREEPLANE_GROUP_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "freeplane/errors.hpp"
#include "freeplane/morphism.hpp"
#include "freeplane/structure.hpp"

namespace freeplane {

/// Permutation of the elements of a structure: points first, then lines.
using Permutation = std::vector<std::uint32_t>;

struct PermutationHash {
    std::size_t operator()(const Permutation& p) const {
        std::size_t h = 1469598103934665603ULL;
        for (auto x : p) h = (h ^ x) * 1099511628211ULL;
        return h;
    }
};

inline Permutation to_permutation(const Morphism& f, std::size_t num_points) {
    Permutation out(f.point_map.size() + f.line_map.size());
    for (std::size_t i = 0; i < f.point_map.size(); ++i) out[i] = static_cast<std::uint32_t>(f.point_map[i]);
    for (std::size_t i = 0; i < f.line_map.size(); ++i) {
        out[f.point_map.size() + i] = static_cast<std::uint32_t>(num_points + f.line_map[i]);
    }
    return out;
}

inline Morphism to_morphism(const Permutation& p, std::size_t num_points,
                            MorphismKind kind = MorphismKind::isomorphism) {
    Morphism f{kind, {}, {}};
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i < num_points) {
            f.point_map.push_back(p[i]);
        } else {
            f.line_map.push_back(p[i] - num_points);
        }
    }
    return f;
}

/// (a*b)(x) = a(b(x)): apply b first.
inline Permutation multiply(const Permutation& a, const Permutation& b) {
    Permutation out(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[b[i]];
    return out;
}

inline Permutation invert(const Permutation& a) {
    Permutation out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[a[i]] = static_cast<std::uint32_t>(i);
    return out;
}

inline Permutation identity_permutation(std::size_t n) {
    Permutation out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<std::uint32_t>(i);
    return out;
}

/**
 * A group listed extensionally. `complete` is false when enumeration was
 * stopped at the cap; `elements` then holds what was found and `generators`
 * an irredundant subset of them.
 */
struct PermutationGroup {
    std::size_t degree = 0;
    std::vector<Permutation> elements;
    std::vector<Permutation> generators;
    bool complete = true;

    std::size_t order() const { return elements.size(); }
};

namespace detail {

/// Closure of `gens` under multiplication, stopping past `cap` elements.
inline std::vector<Permutation> closure(const std::vector<Permutation>& gens, std::size_t degree, std::size_t cap) {
    std::unordered_map<Permutation, char, PermutationHash> seen;
    std::vector<Permutation> out{identity_permutation(degree)};
    seen.emplace(out[0], 1);
    for (std::size_t i = 0; i < out.size() && out.size() <= cap; ++i) {
        for (const auto& g : gens) {
            auto y = multiply(out[i], g);
            if (seen.emplace(y, 1).second) out.push_back(std::move(y));
        }
    }
    return out;
}

inline std::vector<Permutation> greedy_generators(const std::vector<Permutation>& elems, std::size_t degree,
                                                  std::size_t cap) {
    std::vector<Permutation> gens;
    std::unordered_map<Permutation, char, PermutationHash> in_span;
    in_span.emplace(identity_permutation(degree), 1);
    for (const auto& x : elems) {
        if (in_span.count(x)) continue;
        gens.push_back(x);
        in_span.clear();
        for (auto& y : closure(gens, degree, cap)) in_span.emplace(std::move(y), 1);
    }
    return gens;
}

} // namespace detail

/// Group built from explicit elements; the generating set is computed.
inline PermutationGroup make_group(std::vector<Permutation> elements, std::size_t degree, bool complete = true,
                                   std::size_t cap = 1'000'000) {
    PermutationGroup g;
    g.degree = degree;
    std::sort(elements.begin(), elements.end());
    g.elements = std::move(elements);
    g.complete = complete;
    g.generators = detail::greedy_generators(g.elements, degree, cap);
    return g;
}

struct AutomorphismOptions {
    /// Largest group stored extensionally.
    std::size_t order_cap = 1'000'000;
    std::size_t node_cap = 50'000'000;
    std::size_t jobs = 1;
};

/// All automorphisms as permutations of points-then-lines.
inline PermutationGroup automorphism_group(const IncidenceStructure& s, const AutomorphismOptions& opt = {}) {
    SearchOptions so;
    so.limit = opt.order_cap + 1;
    so.node_cap = opt.node_cap;
    so.jobs = opt.jobs;
    auto r = isomorphisms(s, s, so);
    if (r.exhausted()) {
        throw ResourceError("automorphism search exceeded the node cap", r.morphisms.size());
    }
    bool complete = r.status == SearchStatus::complete;
    std::vector<Permutation> perms;
    perms.reserve(r.morphisms.size());
    for (const auto& m : r.morphisms) perms.push_back(to_permutation(m, s.num_points()));
    if (!complete) perms.resize(opt.order_cap);
    return make_group(std::move(perms), s.num_elements(), complete, opt.order_cap);
}

/// Identity present, closed under products and inverses. Returns the first
/// failure, if any.
inline std::optional<std::string> group_law_violation(const PermutationGroup& g) {
    std::unordered_map<Permutation, char, PermutationHash> set;
    for (const auto& x : g.elements) {
        if (x.size() != g.degree) return "element of wrong degree";
        if (!set.emplace(x, 1).second) return "duplicate element";
    }
    if (!set.count(identity_permutation(g.degree))) return "identity missing";
    for (const auto& x : g.elements) {
        if (!set.count(invert(x))) return "not closed under inverses";
        for (const auto& y : g.elements) {
            if (!set.count(multiply(x, y))) return "not closed under composition";
        }
    }
    return std::nullopt;
}

/// Multiplication over element indices of an explicitly listed group.
class GroupTable {
  public:
    explicit GroupTable(const PermutationGroup& g, std::size_t table_limit = 2048) : group_(&g) {
        for (std::size_t i = 0; i < g.elements.size(); ++i) index_.emplace(g.elements[i], i);
        identity_ = index_of(identity_permutation(g.degree));
        std::size_t n = g.elements.size();
        if (n <= table_limit) {
            table_.resize(n * n);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) table_[i * n + j] = index_of(multiply(g.elements[i], g.elements[j]));
            }
        }
    }

    std::size_t size() const { return group_->elements.size(); }
    std::size_t identity() const { return identity_; }

    std::size_t mul(std::size_t i, std::size_t j) const {
        if (!table_.empty()) return table_[i * size() + j];
        return index_of(multiply(group_->elements[i], group_->elements[j]));
    }
    std::size_t inv(std::size_t i) const { return index_of(invert(group_->elements[i])); }

    std::size_t index_of(const Permutation& p) const {
        auto it = index_.find(p);
        if (it == index_.end()) throw InternalConsistencyError("group is not closed");
        return it->second;
    }

    std::size_t element_order(std::size_t i) const {
        std::size_t k = 1;
        for (std::size_t x = i; x != identity_; x = mul(x, i)) ++k;
        return k;
    }

  private:
    const PermutationGroup* group_;
    std::unordered_map<Permutation, std::size_t, PermutationHash> index_;
    std::vector<std::size_t> table_;
    std::size_t identity_ = 0;
};

struct GroupIsomorphismResult {
    bool isomorphic = false;
    /// Why not, or which test established it.
    std::string reason;
    std::size_t order_g = 0;
    std::size_t order_h = 0;
    /// Generators of G (indices into G.elements) and their images in H.
    std::vector<std::pair<std::size_t, std::size_t>> generator_images;
};

/**
 * Decides G = H as abstract groups. Orders, element-order counts and
 * conjugacy-class-size counts are compared first; then generator images
 * are searched by backtracking, each partial choice checked for a
 * consistent injective homomorphism on the subgroup it generates.
 */
inline GroupIsomorphismResult find_group_isomorphism(const PermutationGroup& G, const PermutationGroup& H,
                                                     std::size_t max_order = 10'000) {
    GroupIsomorphismResult out;
    out.order_g = G.order();
    out.order_h = H.order();
    if (!G.complete || !H.complete) throw ResourceError("group is incomplete (order cap reached)", 0);
    if (G.order() != H.order()) {
        out.reason = "orders differ: " + std::to_string(G.order()) + " vs " + std::to_string(H.order());
        return out;
    }
    if (G.order() > max_order) throw ResourceError("group order exceeds the isomorphism-search limit", 0);

    GroupTable tg(G), th(H);
    std::size_t n = tg.size();
    std::vector<std::size_t> ord_g(n), ord_h(n);
    for (std::size_t i = 0; i < n; ++i) {
        ord_g[i] = tg.element_order(i);
        ord_h[i] = th.element_order(i);
    }
    auto histogram = [](const std::vector<std::size_t>& v) {
        std::map<std::size_t, std::size_t> h;
        for (auto x : v) ++h[x];
        return h;
    };
    if (histogram(ord_g) != histogram(ord_h)) {
        out.reason = "element-order statistics differ";
        return out;
    }
    auto class_sizes = [n](const GroupTable& t) {
        std::vector<std::size_t> cls(n, 0);
        std::vector<char> done(n, 0);
        std::vector<std::size_t> inv(n);
        for (std::size_t g = 0; g < n; ++g) inv[g] = t.inv(g);
        for (std::size_t x = 0; x < n; ++x) {
            if (done[x]) continue;
            std::vector<std::size_t> members;
            std::vector<char> in(n, 0);
            for (std::size_t g = 0; g < n; ++g) {
                std::size_t y = t.mul(t.mul(g, x), inv[g]);
                if (!in[y]) {
                    in[y] = 1;
                    members.push_back(y);
                }
            }
            for (auto y : members) {
                done[y] = 1;
                cls[y] = members.size();
            }
        }
        return cls;
    };
    std::vector<std::size_t> cls_g = class_sizes(tg), cls_h = class_sizes(th);
    if (histogram(cls_g) != histogram(cls_h)) {
        out.reason = "conjugacy-class-size statistics differ";
        return out;
    }

    std::vector<std::size_t> gens;
    for (const auto& p : G.generators) gens.push_back(tg.index_of(p));
    std::vector<std::size_t> images(gens.size());

    // Partial homomorphism on <gens[0..k)>; false on conflict.
    auto consistent = [&](std::size_t k) {
        std::vector<std::size_t> phi(n, static_cast<std::size_t>(-1));
        std::vector<char> used(n, 0);
        phi[tg.identity()] = th.identity();
        used[th.identity()] = 1;
        std::deque<std::size_t> queue{tg.identity()};
        while (!queue.empty()) {
            std::size_t x = queue.front();
            queue.pop_front();
            for (std::size_t j = 0; j < k; ++j) {
                std::size_t y = tg.mul(x, gens[j]);
                std::size_t img = th.mul(phi[x], images[j]);
                if (phi[y] == static_cast<std::size_t>(-1)) {
                    if (used[img]) return false;
                    phi[y] = img;
                    used[img] = 1;
                    queue.push_back(y);
                } else if (phi[y] != img) {
                    return false;
                }
            }
        }
        return true;
    };

    auto search = [&](auto&& self, std::size_t k) -> bool {
        if (k == gens.size()) return true;
        for (std::size_t h = 0; h < n; ++h) {
            if (ord_h[h] != ord_g[gens[k]] || cls_h[h] != cls_g[gens[k]]) continue;
            images[k] = h;
            if (consistent(k + 1) && self(self, k + 1)) return true;
        }
        return false;
    };
    if (search(search, 0)) {
        out.isomorphic = true;
        out.reason = "generator images extend to an isomorphism";
        for (std::size_t j = 0; j < gens.size(); ++j) out.generator_images.emplace_back(gens[j], images[j]);
    } else {
        out.reason = "no choice of generator images extends to an isomorphism";
    }
    return out;
}

} // namespace freeplane

#endif
