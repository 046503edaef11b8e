// Acceptance suite: one line per criterion, exit status 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "freeplane.hpp"
#include "oracles.hpp"

using namespace freeplane;

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Outcome()> body;
};

/// Collects the first few failure messages.
class Checker {
  public:
    void expect(bool ok, const std::string& what) {
        ++checks_;
        if (ok) return;
        ++failures_;
        if (failures_ <= 3) messages_ += (messages_.empty() ? "" : "; ") + what;
    }
    Outcome outcome(const std::string& summary) const {
        if (failures_ == 0) return {true, summary + " (" + std::to_string(checks_) + " checks)"};
        return {false, std::to_string(failures_) + "/" + std::to_string(checks_) + " checks failed: " + messages_};
    }

  private:
    std::size_t checks_ = 0;
    std::size_t failures_ = 0;
    std::string messages_;
};

std::string sizes(const IncidenceStructure& s) {
    return "(" + std::to_string(s.num_points()) + "," + std::to_string(s.num_lines()) + ")";
}

std::vector<std::pair<std::string, IncidenceStructure>> small_fixtures() {
    std::vector<std::pair<std::string, IncidenceStructure>> out;
    for (auto& [n, s] : fixtures::all()) {
        if (s.num_points() <= 8 && s.num_lines() <= 8) out.emplace_back(n, s);
    }
    return out;
}

/// Random point subset of Fano with the lines meeting it twice, each line
/// dropped with probability 1/8. Many of these are planes.
IncidenceStructure random_fano_piece(std::mt19937_64& rng) {
    auto f = fixtures::fano();
    std::bernoulli_distribution keep_point(0.7), drop_line(0.125);
    std::vector<std::size_t> pts, lns;
    std::vector<char> in(f.num_points(), 0);
    for (std::size_t p = 0; p < f.num_points(); ++p) {
        if (keep_point(rng)) {
            pts.push_back(p);
            in[p] = 1;
        }
    }
    for (std::size_t l = 0; l < f.num_lines(); ++l) {
        std::size_t k = 0;
        for (std::size_t p : f.points_on(l)) k += in[p];
        if (k >= 2 && !drop_line(rng)) lns.push_back(l);
    }
    return induced_substructure(f, pts, lns);
}

Outcome axiom_oracle() {
    Checker c;
    std::mt19937_64 rng(20240601);
    const double probabilities[] = {0.2, 0.35, 0.5, 0.7};
    std::size_t planes = 0;
    for (int i = 0; i < 200; ++i) {
        RandomStructureOptions opt;
        opt.incidence_probability = probabilities[i % 4];
        opt.linear = i % 2 == 1;
        auto s = i % 5 == 4 ? random_fano_piece(rng) : random_structure(rng, opt);
        auto r = validate(s);
        auto o = oracle::axioms(oracle::plain(s));
        std::string tag = "structure " + std::to_string(i);
        c.expect(r.satisfied(Axiom::A) == o.A && r[Axiom::A].violation_count == o.count_A, tag + " A");
        c.expect(r.satisfied(Axiom::B) == o.B && r[Axiom::B].violation_count == o.count_B, tag + " B");
        c.expect(r.satisfied(Axiom::C) == o.C && r[Axiom::C].violation_count == o.count_C, tag + " C");
        c.expect(r.satisfied(Axiom::D) == o.D, tag + " D");
        c.expect(r.satisfied(Axiom::B_prime) == o.B_prime && r[Axiom::B_prime].violation_count == o.count_B_prime,
                 tag + " B'");
        c.expect(r.satisfied(Axiom::pairwise_uniqueness) == o.pairwise_uniqueness &&
                     r[Axiom::pairwise_uniqueness].violation_count == o.count_pu,
                 tag + " pairwise-uniqueness");
        planes += r.is_plane();
    }
    return c.outcome("200 structures agree, " + std::to_string(planes) + " of them planes");
}

Outcome fano_fixed_point() {
    Checker c;
    auto f = fixtures::fano();
    auto t = extend(f, 5, ExtensionMode::full);
    c.expect(t.stages.size() == 6, "trace length");
    for (const auto& s : t.stages) c.expect(s == f, "stage differs from Fano");
    c.expect(t.stop == StopReason::fixed_point && t.stop_stage == 0, "fixed point not detected at stage 0");
    c.expect(is_fixed_point(f, ExtensionMode::full), "is_fixed_point(Fano) is false");
    return c.outcome("P_0..P_5 all equal Fano");
}

Outcome quad_growth() {
    Checker c;
    auto q = fixtures::quad();
    auto t = extend(q, 4, ExtensionMode::full, 100'000);
    auto o = oracle::stages(oracle::plain(q), 4, true);
    c.expect(!t.truncated() && t.stages.size() == 5, "trace truncated");
    std::vector<std::pair<std::size_t, std::size_t>> expected{{4, 6}, {7, 6}, {7, 9}};
    std::string got;
    for (std::size_t k = 0; k < t.stages.size() && k < o.size(); ++k) {
        const auto& s = t.stages[k];
        if (k < expected.size()) {
            c.expect(s.num_points() == expected[k].first && s.num_lines() == expected[k].second,
                     "stage " + std::to_string(k) + " size " + sizes(s));
        }
        c.expect(s.num_points() == o[k].points.size() && s.num_lines() == o[k].lines.size(),
                 "stage " + std::to_string(k) + " differs from oracle count");
        auto plain = oracle::plain(s);
        std::set<std::string> pts(plain.points.begin(), plain.points.end());
        std::set<std::string> opts;
        for (const auto& [n, term] : o[k].points) opts.insert(n);
        c.expect(pts == opts && plain.incidence == o[k].incidence, "stage " + std::to_string(k) + " elements differ");
        got += (got.empty() ? "" : " -> ") + sizes(s);
    }
    return c.outcome("sizes " + got + " match the staged enumeration oracle");
}

Outcome core_properties() {
    Checker c;
    std::mt19937_64 rng(77);
    for (const auto& [name, s] : fixtures::all()) {
        auto base = confined_core(s).core;
        auto o = oracle::peel(oracle::plain(s));
        c.expect(oracle::plain(base).points == o.points && oracle::plain(base).lines == o.lines,
                 name + ": core differs from peeling oracle");
        std::vector<ElementRef> order;
        for (std::size_t p = 0; p < s.num_points(); ++p) order.push_back({Sort::point, p});
        for (std::size_t l = 0; l < s.num_lines(); ++l) order.push_back({Sort::line, l});
        for (int k = 0; k < 50; ++k) {
            std::shuffle(order.begin(), order.end(), rng);
            c.expect(confined_core(s, order).core == base, name + ": order-dependent core");
        }
        c.expect(confined_core(base).core == base, name + ": not idempotent");
        auto t = extend(s, 3, ExtensionMode::full, 100'000);
        c.expect(!t.truncated(), name + ": extension over budget");
        for (std::size_t n = 0; n < t.stages.size(); ++n) {
            c.expect(confined_core(t.stages[n]).core == base, name + ": core(F_" + std::to_string(n) + ") differs");
        }
    }
    c.expect(confined_core(fixtures::fano()).core == fixtures::fano(), "core(Fano) != Fano");
    c.expect(confined_core(fixtures::quad()).core.num_elements() == 0, "core(quad) not empty");
    return c.outcome("5 fixtures x 50 orders, idempotent, core(F_n S) = core(S) for n <= 3");
}

Outcome lattice_round_trip() {
    Checker c;
    auto same = [&](const IncidenceStructure& s, const std::string& tag) {
        auto back = from_lattice(to_lattice(s));
        c.expect(io::dump(io::to_json(back)) == io::dump(io::to_json(s)), tag + ": round trip differs");
    };
    for (const auto& [name, s] : fixtures::all()) same(s, name);
    std::mt19937_64 rng(4242);
    for (int i = 0; i < 200; ++i) same(random_structure(rng), "random " + std::to_string(i));
    auto report = check_geometric_length3(to_lattice(fixtures::fano()));
    c.expect(report.passed(), "check_geometric_length3(Fano) failed");
    return c.outcome("5 fixtures and 200 random structures byte-identical; Fano lattice checks pass");
}

/// Induced substructures of `s` with at most `max_elements` elements that
/// satisfy (A)-(D).
std::vector<IncidenceStructure> plane_substructures_by_subsets(const IncidenceStructure& s, std::size_t max_elements) {
    std::vector<IncidenceStructure> out;
    std::size_t np = s.num_points(), n = np + s.num_lines();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcountll(mask)) > max_elements) continue;
        std::vector<std::size_t> pts, lns;
        for (std::size_t i = 0; i < n; ++i) {
            if (!(mask >> i & 1)) continue;
            if (i < np) {
                pts.push_back(i);
            } else {
                lns.push_back(i - np);
            }
        }
        auto sub = induced_substructure(s, pts, lns);
        if (validate(sub, 0).is_plane()) out.push_back(std::move(sub));
    }
    return out;
}

/// For a linear `s`: a plane substructure on point set X must contain every
/// line through two points of X (A) and no other line (C), so it is fixed by X.
std::vector<IncidenceStructure> plane_substructures_by_points(const IncidenceStructure& s, std::size_t max_elements) {
    std::vector<IncidenceStructure> out;
    std::size_t np = s.num_points();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << np); ++mask) {
        std::vector<std::size_t> pts, lns;
        for (std::size_t i = 0; i < np; ++i) {
            if (mask >> i & 1) pts.push_back(i);
        }
        for (std::size_t l = 0; l < s.num_lines(); ++l) {
            std::size_t k = 0;
            for (std::size_t p : s.points_on(l)) k += mask >> p & 1;
            if (k >= 2) lns.push_back(l);
        }
        if (pts.size() + lns.size() > max_elements) continue;
        auto sub = induced_substructure(s, pts, lns);
        if (validate(sub, 0).is_plane()) out.push_back(std::move(sub));
    }
    return out;
}

Outcome complete_iff_sublattice() {
    Checker c;
    std::size_t total = 0, complete = 0;
    for (const auto& [name, s] : fixtures::all()) {
        std::vector<IncidenceStructure> subs;
        if (s.num_elements() <= 16) {
            subs = plane_substructures_by_subsets(s, 12);
            if (s.is_linear()) {
                auto by_points = plane_substructures_by_points(s, 12);
                auto key = [](std::vector<IncidenceStructure> v) {
                    std::vector<std::string> k;
                    for (const auto& x : v) k.push_back(io::dump(io::to_json(x)));
                    std::sort(k.begin(), k.end());
                    return k;
                };
                c.expect(key(subs) == key(by_points), name + ": point-set enumeration disagrees");
            }
        } else {
            subs = plane_substructures_by_points(s, 12);
        }
        auto ambient = to_lattice(s);
        for (const auto& sub : subs) {
            auto r = is_complete_subplane(sub, s);
            bool lattice = is_sublattice(to_lattice(sub), ambient);
            c.expect(r.plane_axioms, name + ": enumerated non-plane");
            c.expect(r.complete() == lattice, name + ": disagreement on " + sizes(sub));
            ++total;
            complete += r.complete();
        }
    }
    return c.outcome(std::to_string(total) + " plane substructures, " + std::to_string(complete) +
                     " complete, all agree with the sublattice test");
}

Outcome search_oracle() {
    Checker c;
    auto fx = small_fixtures();
    std::size_t pairs = 0, maps = 0;
    for (const auto& [na, a] : fx) {
        for (const auto& [nb, b] : fx) {
            auto pa = oracle::plain(a), pb = oracle::plain(b);
            for (auto [kind, k] : {std::pair{MorphismKind::incidence_embedding, 0},
                                   std::pair{MorphismKind::lattice_embedding, 1}}) {
                auto fast = embeddings(a, b, kind);
                std::vector<oracle::Map> got;
                for (const auto& m : fast.morphisms) got.emplace_back(m.point_map, m.line_map);
                auto want = oracle::brute_force(pa, pb, k);
                c.expect(fast.status == SearchStatus::complete && got == want,
                         na + "->" + nb + " " + std::string(kind_name(kind)) + ": " + std::to_string(got.size()) +
                             " vs " + std::to_string(want.size()));
                ++pairs;
                maps += want.size();
            }
        }
    }
    return c.outcome(std::to_string(pairs) + " (pair, kind) cases over " + std::to_string(fx.size()) +
                     " fixtures, " + std::to_string(maps) + " morphisms");
}

Outcome fano_automorphisms() {
    Checker c;
    auto g = automorphism_group(fixtures::fano());
    c.expect(g.complete, "search incomplete");
    c.expect(g.order() == 168, "order " + std::to_string(g.order()));
    auto law = group_law_violation(g);
    c.expect(!law, law ? *law : "");
    c.expect(detail::closure(g.generators, g.degree, 1000).size() == 168, "generators do not span the group");
    return c.outcome("|Aut(Fano)| = " + std::to_string(g.order()) + ", closed, " + std::to_string(g.generators.size()) +
                     " generators");
}

Outcome quad_not_in_fano() {
    Checker c;
    auto lattice = embeddings(fixtures::quad(), fixtures::fano(), MorphismKind::lattice_embedding);
    auto incidence = embeddings(fixtures::quad(), fixtures::fano(), MorphismKind::incidence_embedding);
    c.expect(lattice.status == SearchStatus::complete && lattice.morphisms.empty(), "lattice embedding found");
    c.expect(!incidence.morphisms.empty(), "no incidence embedding");
    return c.outcome("0 lattice embeddings (exhaustive), " + std::to_string(incidence.morphisms.size()) +
                     " incidence embeddings");
}

Outcome extend_embedding_checks() {
    Checker c;
    std::size_t lifted = 0;
    for (const auto& [name, s] : fixtures::all()) {
        if (!is_confined_finite(s)) continue;
        auto t = extend(s, 3, ExtensionMode::full, 100'000);
        c.expect(!t.truncated(), name + ": over budget");
        auto autos = isomorphisms(s, s).morphisms;
        for (std::size_t n = 0; n <= 3; ++n) {
            const auto& fn = t.stages[n];
            std::vector<Morphism> hats;
            for (const auto& f : autos) {
                auto r = extend_embedding(f, t, t, n);
                c.expect(r.certificate.verified && is_morphism(r.morphism, fn, fn, MorphismKind::lattice_embedding),
                         name + ": lift fails verification");
                for (std::size_t p = 0; p < s.num_points(); ++p) {
                    auto src = *fn.find_point(s.point(p).name());
                    c.expect(fn.point(r.morphism.point_map[src]).name() == s.point(f.point_map[p]).name(),
                             name + ": lift does not extend f");
                }
                hats.push_back(std::move(r.morphism));
                ++lifted;
            }
            for (std::size_t i = 0; i < autos.size(); ++i) {
                std::size_t j = (i * 7 + 1) % autos.size();
                auto lhs = extend_embedding(compose(autos[j], autos[i]), t, t, n).morphism;
                c.expect(lhs == compose(hats[j], hats[i]), name + ": functoriality fails");
            }
        }
    }
    return c.outcome(std::to_string(lifted) + " lifts of automorphisms of the confined fixtures verified");
}

Outcome spb_calibration() {
    Checker c;
    std::vector<NamedInstance> instances;
    for (const auto& [n, s] : fixtures::all()) instances.push_back({n, s});
    instances.push_back({"pair", fixtures::graphs::pair()});
    HarnessOptions opt;

    IdentityEncoder id;
    auto good = spb_check(id, instances, opt);
    c.expect(good.passed(), "identity encoder fails " + std::to_string(good.failures()) + " checks");

    BrokenEncoder broken;
    auto bad = spb_check(broken, instances, opt);
    auto encoded = encode_all(broken, instances);
    std::size_t caught = 0;
    for (const auto& v : bad.verdicts) {
        if (v.passed) continue;
        bool ok = verify_verdict(v, instances, encoded, opt);
        c.expect(ok, v.check + " witness does not verify");
        bool relevant = v.check == "aut-isomorphism" || v.check.starts_with("iso-");
        if (relevant && ok) ++caught;
    }
    c.expect(caught >= 1, "broken encoder not caught with a verified witness");

    auto pair = fixtures::graphs::pair();
    auto fid = fullness_check(id, pair, pair, opt);
    auto fbr = fullness_check(broken, pair, pair, opt);
    c.expect(fid.equal(), "identity fullness counts differ");
    c.expect(!fbr.equal(), "broken fullness counts equal");
    std::ostringstream os;
    os << "identity passes " << good.verdicts.size() << " checks; broken fails " << bad.failures() << " ("
       << caught << " of them isomorphism-type, all witnesses verified); fullness on pair " << fid.source << "="
       << fid.encoded << " vs " << fbr.source << "!=" << fbr.encoded;
    return c.outcome(os.str());
}

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "axiom oracle equivalence", 10, axiom_oracle},
        {2, "free-extension fixed point", 1, fano_fixed_point},
        {3, "free-extension growth", 5, quad_growth},
        {4, "core properties", 10, core_properties},
        {5, "lattice round trip", 10, lattice_round_trip},
        {6, "complete subplane iff sublattice", 30, complete_iff_sublattice},
        {7, "morphism search oracle equivalence", 60, search_oracle},
        {8, "Aut(Fano) has order 168", 10, fano_automorphisms},
        {9, "no lattice embedding of quad into Fano", 10, quad_not_in_fano},
        {10, "extend_embedding lifts and functoriality", 30, extend_embedding_checks},
        {11, "SPB harness calibration", 60, spb_calibration},
    };
    int failed = 0;
    for (const auto& cr : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = cr.body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool in_time = secs < cr.limit_seconds;
        bool pass = o.passed && in_time;
        failed += !pass;
        std::printf("[%s] %2d %s (%.2f s, limit %.0f s): %s%s\n", pass ? "PASS" : "FAIL", cr.id, cr.name, secs,
                    cr.limit_seconds, o.detail.c_str(), in_time ? "" : " [over time limit]");
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
