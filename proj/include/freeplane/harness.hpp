#ifndef FREEPLANE_HARNESS_HPP
#define FREEPLANE_HARNESS_HPP

#include <algorithm>
#include <array>
#include <atomic>
#include <cstddef>
#include <functional>
#include <future>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "freeplane/confinement.hpp"
#include "freeplane/encoder.hpp"
#include "freeplane/errors.hpp"
#include "freeplane/extension.hpp"
#include "freeplane/group.hpp"
#include "freeplane/morphism.hpp"
#include "freeplane/structure.hpp"

namespace freeplane {

/// The image of `f` contains every meet of two image lines and every join of
/// two image points that exists in `b`. Returns an offending triple
/// {"meet"|"join", arg, arg, element outside the image} if not.
inline std::optional<Witness> completeness_violation(const Morphism& f, const IncidenceStructure& a,
                                                     const IncidenceStructure& b) {
    std::vector<std::size_t> pre_l(b.num_lines(), IncidenceStructure::npos);
    std::vector<std::size_t> pre_p(b.num_points(), IncidenceStructure::npos);
    for (std::size_t l = 0; l < f.line_map.size(); ++l) pre_l[f.line_map[l]] = l;
    for (std::size_t p = 0; p < f.point_map.size(); ++p) pre_p[f.point_map[p]] = p;
    for (std::size_t x = 0; x < b.num_points(); ++x) {
        if (pre_p[x] != IncidenceStructure::npos) continue;
        std::vector<std::size_t> hits;
        for (std::size_t m : b.lines_through(x)) {
            if (pre_l[m] != IncidenceStructure::npos) hits.push_back(m);
        }
        if (hits.size() > 1) return Witness{"meet", b.line(hits[0]).name(), b.line(hits[1]).name(), b.point(x).name()};
    }
    for (std::size_t m = 0; m < b.num_lines(); ++m) {
        if (pre_l[m] != IncidenceStructure::npos) continue;
        std::vector<std::size_t> hits;
        for (std::size_t q : b.points_on(m)) {
            if (pre_p[q] != IncidenceStructure::npos) hits.push_back(q);
        }
        if (hits.size() > 1) return Witness{"join", b.point(hits[0]).name(), b.point(hits[1]).name(), b.line(m).name()};
    }
    (void)a;
    return std::nullopt;
}

struct EmbeddingCertificate {
    std::size_t stage = 0;
    std::size_t points_checked = 0;
    std::size_t lines_checked = 0;
    bool verified = false;
};

struct ExtendedEmbedding {
    Morphism morphism;
    EmbeddingCertificate certificate;
};

/**
 * Lifts a complete embedding f: P1 -> P2 (between the base stages of the
 * traces) to F_n(P1) -> F_n(P2) by sending meet(l,l') to the common point of
 * the images of l and l', and join(p,q) to the common line of the images of
 * p and q. The result is re-verified as a lattice embedding.
 */
inline ExtendedEmbedding extend_embedding(const Morphism& f, const ExtensionTrace& t1, const ExtensionTrace& t2,
                                          std::size_t n) {
    if (t1.mode != t2.mode) throw PreconditionError("traces use different extension modes");
    if (n >= t1.stages.size() || n >= t2.stages.size()) throw PreconditionError("stage beyond the computed traces");
    const auto& a0 = t1.stages.front();
    const auto& b0 = t2.stages.front();
    if (auto v = morphism_violation(f, a0, b0, MorphismKind::incidence_embedding)) {
        throw PreconditionError("not an embedding: " + *v);
    }
    if (auto w = completeness_violation(f, a0, b0)) {
        throw PreconditionError("embedding is not complete: " + (*w)[0] + " of " + (*w)[1] + " and " + (*w)[2] +
                                " is " + (*w)[3] + ", outside the image");
    }
    const auto& a = t1.stages[n];
    const auto& b = t2.stages[n];

    Morphism out{MorphismKind::lattice_embedding, std::vector<std::size_t>(a.num_points()),
                 std::vector<std::size_t>(a.num_lines())};
    std::vector<char> done_p(a.num_points(), 0), done_l(a.num_lines(), 0);

    auto image = [&](auto&& self, ElementRef e) -> std::size_t {
        auto& done = e.sort == Sort::point ? done_p : done_l;
        auto& map = e.sort == Sort::point ? out.point_map : out.line_map;
        if (done[e.index]) return map[e.index];
        const auto& term = a.term(e);
        std::size_t result = IncidenceStructure::npos;
        if (auto base = a0.find(term.name())) {
            result = base->sort == Sort::point ? f.point_map[base->index] : f.line_map[base->index];
            if (e.sort == Sort::point) {
                result = *b.find_point(b0.point(result).name());
            } else {
                result = *b.find_line(b0.line(result).name());
            }
        } else if (term.is_base()) {
            throw InternalConsistencyError("base element '" + term.name() + "' is not in the first stage");
        } else {
            Sort arg_sort = e.sort == Sort::point ? Sort::line : Sort::point;
            auto left = a.find(term.left().name());
            auto right = a.find(term.right().name());
            if (!left || !right || left->sort != arg_sort || right->sort != arg_sort) {
                throw InternalConsistencyError("arguments of '" + term.name() + "' are missing from the stage");
            }
            std::size_t il = self(self, *left), ir = self(self, *right);
            auto common = e.sort == Sort::point ? b.common_points(il, ir) : b.common_lines(il, ir);
            if (common.size() != 1) {
                throw InternalConsistencyError("image of '" + term.name() + "' is not determined in the target");
            }
            result = common[0];
        }
        done[e.index] = 1;
        map[e.index] = result;
        return result;
    };
    for (std::size_t p = 0; p < a.num_points(); ++p) image(image, {Sort::point, p});
    for (std::size_t l = 0; l < a.num_lines(); ++l) image(image, {Sort::line, l});

    if (auto v = morphism_violation(out, a, b, MorphismKind::lattice_embedding)) {
        throw InternalConsistencyError("extended map failed verification: " + *v);
    }
    return {std::move(out), {n, a.num_points(), a.num_lines(), true}};
}

struct HarnessOptions {
    ExtensionMode mode = ExtensionMode::full;
    std::size_t budget = 100'000;
    /// Relation used for the embeddability checks on both sides.
    MorphismKind embed_kind = MorphismKind::lattice_embedding;
    SearchOptions search{};
    AutomorphismOptions automorphisms{};
    std::size_t group_order_limit = 10'000;
    std::size_t jobs = 1;
};

struct RestrictionReport {
    bool confined_a = false;
    bool confined_b = false;
    /// Inputs not confined: the restriction property is not claimed and the
    /// embedding enumeration is skipped.
    bool vacuous = false;
    std::size_t embeddings_checked = 0;
    bool restriction_holds = true;
    std::vector<Morphism> counterexamples;
    /// core(F_n(S)) equals core(S).
    bool core_a_preserved = false;
    bool core_b_preserved = false;
    /// core(F_n(S)) equals S.
    bool core_a_is_base = false;
    bool core_b_is_base = false;
    IncidenceStructure extension_a;
    IncidenceStructure extension_b;

    bool passed() const { return restriction_holds && core_a_preserved && core_b_preserved; }
};

/**
 * Enumerates all embeddings F_n(a) -> F_m(b) and checks that each sends a
 * into b; also checks that peeling F_n(a) and F_m(b) gives back the cores of
 * a and b. Throws BudgetError if a truncation exceeds the budget.
 */
inline RestrictionReport check_restriction(const IncidenceStructure& a, const IncidenceStructure& b, std::size_t n,
                                           std::size_t m, const HarnessOptions& opt = {}) {
    RestrictionReport rep;
    rep.confined_a = is_confined_finite(a);
    rep.confined_b = is_confined_finite(b);
    rep.vacuous = !(rep.confined_a && rep.confined_b);
    auto ta = extend(a, n, opt.mode, opt.budget);
    auto tb = extend(b, m, opt.mode, opt.budget);
    for (const auto* t : {&ta, &tb}) {
        if (t->truncated()) {
            throw BudgetError("truncation exceeds the element budget", t->refused_points, t->refused_lines, opt.budget);
        }
    }
    rep.extension_a = ta.last();
    rep.extension_b = tb.last();
    auto core_fa = confined_core(rep.extension_a).core;
    auto core_fb = confined_core(rep.extension_b).core;
    rep.core_a_preserved = core_fa == confined_core(a).core;
    rep.core_b_preserved = core_fb == confined_core(b).core;
    rep.core_a_is_base = core_fa == a;
    rep.core_b_is_base = core_fb == b;
    if (rep.vacuous) return rep;

    auto maps = embeddings_or_throw(rep.extension_a, rep.extension_b, opt.embed_kind, opt.search);
    rep.embeddings_checked = maps.size();
    for (const auto& f : maps) {
        bool inside = true;
        for (std::size_t p = 0; p < a.num_points() && inside; ++p) {
            auto src = *rep.extension_a.find_point(a.point(p).name());
            inside = b.find_point(rep.extension_b.point(f.point_map[src]).name()).has_value();
        }
        for (std::size_t l = 0; l < a.num_lines() && inside; ++l) {
            auto src = *rep.extension_a.find_line(a.line(l).name());
            inside = b.find_line(rep.extension_b.line(f.line_map[src]).name()).has_value();
        }
        if (!inside) {
            rep.restriction_holds = false;
            rep.counterexamples.push_back(f);
        }
    }
    return rep;
}

struct NamedInstance {
    std::string name;
    IncidenceStructure structure;
};

/// Which side of the encoder a witness morphism lives on.
enum class WitnessSide { source, encoded };

struct Verdict {
    /// iso-forward, iso-backward, embed-forward, embed-backward or aut-isomorphism.
    std::string check;
    /// Indices into the instance list (one for aut checks, two otherwise).
    std::vector<std::size_t> instances;
    bool passed = true;
    std::string detail;
    /// For failed relation checks: a morphism that exists on one side while
    /// the exhaustive search finds none on the other.
    std::optional<Morphism> witness;
    WitnessSide witness_side = WitnessSide::source;
    /// For aut checks.
    std::size_t order_source = 0;
    std::size_t order_encoded = 0;
    std::vector<std::pair<std::size_t, std::size_t>> pairing;
};

struct HarnessReport {
    std::string encoder;
    std::string encoder_version;
    std::vector<std::string> instance_names;
    std::vector<Verdict> verdicts;

    bool passed() const {
        return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.passed; });
    }
    std::size_t failures(std::string_view check = {}) const {
        return static_cast<std::size_t>(std::count_if(verdicts.begin(), verdicts.end(), [&](const Verdict& v) {
            return !v.passed && (check.empty() || v.check == check);
        }));
    }
};

/// Encodes every instance twice and throws EncoderError if the outputs differ.
inline std::vector<IncidenceStructure> encode_all(const Encoder& enc, const std::vector<NamedInstance>& instances) {
    std::vector<IncidenceStructure> out;
    for (const auto& x : instances) {
        auto first = enc.encode(x.structure);
        auto second = enc.encode(x.structure);
        if (!(first == second)) {
            throw EncoderError("encoder '" + enc.name() + "' is not deterministic on instance '" + x.name + "'");
        }
        out.push_back(std::move(first));
    }
    return out;
}

namespace detail {

inline void run_tasks(std::vector<std::function<void()>>& tasks, std::size_t jobs) {
    if (jobs <= 1) {
        for (auto& t : tasks) t();
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) tasks[i]();
    };
    std::vector<std::future<void>> pool;
    for (std::size_t j = 0; j < std::min(jobs, tasks.size()); ++j) pool.push_back(std::async(std::launch::async, worker));
    for (auto& f : pool) f.get();
}

/// Compares one relation on both sides of the encoder.
inline Verdict relation_verdict(std::string check, std::size_t i, std::size_t j, const IncidenceStructure& x,
                                const IncidenceStructure& y, const IncidenceStructure& fx, const IncidenceStructure& fy,
                                MorphismKind kind, bool forward, const SearchOptions& search) {
    Verdict v;
    v.check = std::move(check);
    v.instances = {i, j};
    SearchOptions one = search;
    one.limit = 1;
    auto src = embeddings_or_throw(x, y, kind, one);
    auto enc = embeddings_or_throw(fx, fy, kind, one);
    bool holds_src = !src.empty(), holds_enc = !enc.empty();
    v.detail = std::string(kind_name(kind)) + (holds_src ? " exists" : " absent") + " on source, " +
               (holds_enc ? "exists" : "absent") + " on encoded";
    if (forward && holds_src && !holds_enc) {
        v.passed = false;
        v.witness = src.front();
        v.witness_side = WitnessSide::source;
    } else if (!forward && holds_enc && !holds_src) {
        v.passed = false;
        v.witness = enc.front();
        v.witness_side = WitnessSide::encoded;
    }
    return v;
}

} // namespace detail

/**
 * For every ordered pair of distinct instances: x = y iff F(x) = F(y) and
 * x <= y iff F(x) <= F(y), each direction reported separately. For every
 * instance: Aut(x) isomorphic to Aut(F(x)).
 */
inline HarnessReport spb_check(const Encoder& enc, const std::vector<NamedInstance>& instances,
                               const HarnessOptions& opt = {}) {
    HarnessReport rep;
    rep.encoder = enc.name();
    rep.encoder_version = enc.version();
    for (const auto& x : instances) rep.instance_names.push_back(x.name);
    auto encoded = encode_all(enc, instances);
    std::size_t n = instances.size();

    std::vector<std::vector<Verdict>> slots;
    std::vector<std::function<void()>> tasks;
    slots.resize(n + n * n);
    for (std::size_t i = 0; i < n; ++i) {
        tasks.push_back([&, i] {
            Verdict v;
            v.check = "aut-isomorphism";
            v.instances = {i};
            auto gx = automorphism_group(instances[i].structure, opt.automorphisms);
            auto gf = automorphism_group(encoded[i], opt.automorphisms);
            auto r = find_group_isomorphism(gx, gf, opt.group_order_limit);
            v.passed = r.isomorphic;
            v.detail = r.reason;
            v.order_source = gx.order();
            v.order_encoded = gf.order();
            v.pairing = r.generator_images;
            slots[i].push_back(std::move(v));
        });
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            tasks.push_back([&, i, j] {
                const auto& x = instances[i].structure;
                const auto& y = instances[j].structure;
                auto& out = slots[n + i * n + j];
                if (i < j) {
                    out.push_back(detail::relation_verdict("iso-forward", i, j, x, y, encoded[i], encoded[j],
                                                           MorphismKind::isomorphism, true, opt.search));
                    out.push_back(detail::relation_verdict("iso-backward", i, j, x, y, encoded[i], encoded[j],
                                                           MorphismKind::isomorphism, false, opt.search));
                }
                out.push_back(detail::relation_verdict("embed-forward", i, j, x, y, encoded[i], encoded[j],
                                                       opt.embed_kind, true, opt.search));
                out.push_back(detail::relation_verdict("embed-backward", i, j, x, y, encoded[i], encoded[j],
                                                       opt.embed_kind, false, opt.search));
            });
        }
    }
    detail::run_tasks(tasks, opt.jobs);
    for (auto& s : slots) {
        for (auto& v : s) rep.verdicts.push_back(std::move(v));
    }
    return rep;
}

/**
 * Re-checks a failed verdict from scratch: the witness morphism is valid on
 * its side and no morphism of that kind exists on the other side, or the two
 * automorphism groups are indeed not isomorphic. Passing verdicts return
 * true.
 */
inline bool verify_verdict(const Verdict& v, const std::vector<NamedInstance>& instances,
                           const std::vector<IncidenceStructure>& encoded, const HarnessOptions& opt = {}) {
    if (v.passed) return true;
    if (v.check == "aut-isomorphism") {
        const auto& x = instances.at(v.instances.at(0)).structure;
        auto gx = automorphism_group(x, opt.automorphisms);
        auto gf = automorphism_group(encoded.at(v.instances.at(0)), opt.automorphisms);
        if (group_law_violation(gx) || group_law_violation(gf)) return false;
        if (gx.order() != v.order_source || gf.order() != v.order_encoded) return false;
        return !find_group_isomorphism(gx, gf, opt.group_order_limit).isomorphic;
    }
    if (!v.witness || v.instances.size() != 2) return false;
    std::size_t i = v.instances[0], j = v.instances[1];
    MorphismKind kind = v.check.starts_with("iso") ? MorphismKind::isomorphism : opt.embed_kind;
    const auto& x = instances.at(i).structure;
    const auto& y = instances.at(j).structure;
    const auto& fx = encoded.at(i);
    const auto& fy = encoded.at(j);
    bool on_source = v.witness_side == WitnessSide::source;
    const auto& wa = on_source ? x : fx;
    const auto& wb = on_source ? y : fy;
    const auto& oa = on_source ? fx : x;
    const auto& ob = on_source ? fy : y;
    if (!is_morphism(*v.witness, wa, wb, kind)) return false;
    return !exists_morphism(oa, ob, kind, opt.search);
}

struct FullnessCounts {
    std::size_t source = 0;
    std::size_t encoded = 0;
    bool equal() const { return source == encoded; }
};

/// |Iso(x, y)| and |Iso(F(x), F(y))|; equality is necessary for fullness.
inline FullnessCounts fullness_check(const Encoder& enc, const IncidenceStructure& x, const IncidenceStructure& y,
                                     const HarnessOptions& opt = {}) {
    auto encoded = encode_all(enc, {{"x", x}, {"y", y}});
    FullnessCounts c;
    c.source = embeddings_or_throw(x, y, MorphismKind::isomorphism, opt.search).size();
    c.encoded = embeddings_or_throw(encoded[0], encoded[1], MorphismKind::isomorphism, opt.search).size();
    return c;
}

} // namespace freeplane

#endif
