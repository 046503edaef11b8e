#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "freeplane/errors.hpp"
#include "freeplane/fixtures.hpp"
#include "freeplane/random.hpp"
#include "freeplane/structure.hpp"
#include "freeplane/validate.hpp"
#include "oracles.hpp"

using namespace freeplane;

namespace {

std::vector<std::string> names_of(const IncidenceStructure& s, const std::vector<std::size_t>& idx, bool lines) {
    std::vector<std::string> out;
    for (std::size_t i : idx) out.push_back(lines ? s.line(i).name() : s.point(i).name());
    return out;
}

IncidenceStructure fano_with_spokes() {
    auto f = fixtures::fano();
    StructureBuilder b;
    b.add_all(f);
    b.add_point("X");
    for (const auto& p : f.points()) b.add_line("X" + p.name(), {"X", p.name()});
    return b.build();
}

} // namespace

TEST(Structure, CanonicalOrderAndLookup) {
    auto s = fixtures::quad();
    EXPECT_EQ(s.num_points(), 4u);
    EXPECT_EQ(s.num_lines(), 6u);
    EXPECT_EQ(s.point(0).name(), "A");
    auto ab = *s.find_line("AB");
    EXPECT_TRUE(s.incident(*s.find_point("A"), ab));
    EXPECT_FALSE(s.incident(*s.find_point("C"), ab));
    EXPECT_FALSE(s.find_point("AB").has_value());
    EXPECT_TRUE(s.is_linear());
}

TEST(Structure, DanglingIncidenceIsAStructuralError) {
    StructureBuilder b;
    b.add_point("A").add_line("l").add_incidence("B", "l");
    EXPECT_THROW(b.build(), StructureError);
}

TEST(Structure, DuplicateNamesRejected) {
    StructureBuilder b;
    b.add_point("A").add_line("A");
    EXPECT_THROW(b.build(), StructureError);
}

TEST(Structure, RepeatedIncidenceIsIgnored) {
    StructureBuilder b;
    b.add_point("A").add_line("l", {"A", "A"}).add_incidence("A", "l");
    EXPECT_EQ(b.build().num_incidences(), 1u);
}

TEST(Structure, InducedSubstructure) {
    auto f = fixtures::fano();
    std::vector<std::size_t> pts{*f.find_point("A"), *f.find_point("B")};
    std::vector<std::size_t> lns{*f.find_line("ABD"), *f.find_line("BCE")};
    auto sub = induced_substructure(f, pts, lns);
    EXPECT_EQ(sub.num_incidences(), 3u);
    EXPECT_TRUE(is_induced_substructure(sub, f));
    StructureBuilder b;
    b.add_point("A").add_point("B").add_line("ABD", {"A"});
    EXPECT_FALSE(is_induced_substructure(b.build(), f));
}

TEST(Validate, FanoSatisfiesEverything) {
    auto r = validate(fixtures::fano());
    for (Axiom a : all_axioms) EXPECT_TRUE(r.satisfied(a)) << axiom_name(a);
    EXPECT_TRUE(r.is_plane());
}

TEST(Validate, EmptyStructureFailsOnlyD) {
    auto r = validate(IncidenceStructure{});
    for (Axiom a : all_axioms) EXPECT_EQ(r.satisfied(a), a != Axiom::D) << axiom_name(a);
}

TEST(Validate, QuadIsAPlaneButNotProjective) {
    auto r = validate(fixtures::quad());
    EXPECT_TRUE(r.is_plane());
    const auto& bp = r[Axiom::B_prime];
    EXPECT_FALSE(bp.satisfied);
    EXPECT_EQ(bp.violation_count, 3u);
    EXPECT_EQ(bp.violations.front(), (Witness{"AB", "CD"}));
}

TEST(Validate, SatisfiedIffNoViolations) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto r = validate(random_structure(seed));
        for (Axiom a : all_axioms) EXPECT_EQ(r[a].satisfied, r[a].violations.empty());
    }
}

TEST(Validate, PairwiseUniquenessWitness) {
    StructureBuilder b;
    b.add_point("p").add_point("q").add_line("l", {"p", "q"}).add_line("m", {"p", "q"});
    auto r = validate(b.build());
    EXPECT_FALSE(r.satisfied(Axiom::pairwise_uniqueness));
    EXPECT_EQ(r[Axiom::pairwise_uniqueness].violations.front(), (Witness{"p", "q", "l", "m"}));
    EXPECT_FALSE(r.satisfied(Axiom::B));
}

TEST(Validate, AgreesWithOracleOnRandomStructures) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 100; ++i) {
        auto s = random_structure(rng);
        auto r = validate(s);
        auto o = oracle::axioms(oracle::plain(s));
        EXPECT_EQ(r.satisfied(Axiom::A), o.A);
        EXPECT_EQ(r.satisfied(Axiom::D), o.D);
        EXPECT_EQ(r[Axiom::B_prime].violation_count, o.count_B_prime);
    }
}

TEST(Projective, Examples) {
    EXPECT_TRUE(is_projective(fixtures::fano()));
    EXPECT_FALSE(is_projective(fixtures::quad()));
    StructureBuilder b;
    b.add_point("a").add_point("b").add_point("c").add_line("l", {"a", "b", "c"});
    EXPECT_THROW(is_projective(b.build()), NotAPlaneError);
}

TEST(TrivialLines, Examples) {
    EXPECT_TRUE(trivial_lines(fixtures::fano()).empty());
    EXPECT_EQ(trivial_lines(fixtures::quad()).size(), 6u);
    auto s = fano_with_spokes();
    EXPECT_EQ(trivial_lines(s).size(), 7u);
    EXPECT_EQ(nontrivial_lines(s).size(), 7u);
}

TEST(ExceptionalPoints, Examples) {
    EXPECT_EQ(exceptional_points(fixtures::fano()).size(), 7u);
    EXPECT_TRUE(exceptional_points(fixtures::quad()).empty());
    auto star = fixtures::star();
    EXPECT_EQ(names_of(star, exceptional_points(star), false), std::vector<std::string>{"O"});
}

TEST(ParallelAndUnjoined, Examples) {
    EXPECT_TRUE(parallel_pairs(fixtures::fano()).empty());
    EXPECT_TRUE(unjoined_pairs(fixtures::fano()).empty());
    auto q = fixtures::quad();
    EXPECT_EQ(parallel_pairs(q).size(), 3u);
    EXPECT_EQ(unjoined_pairs(q).size(), 0u);
    EXPECT_EQ(count_parallel_pairs(q), 3u);
    StructureBuilder b;
    b.add_point("a").add_point("b").add_point("c");
    auto three = b.build();
    EXPECT_EQ(parallel_pairs(three).size(), 0u);
    EXPECT_EQ(unjoined_pairs(three).size(), 3u);
    EXPECT_EQ(count_unjoined_pairs(three), 3u);
}
