#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "freeplane/confinement.hpp"
#include "freeplane/errors.hpp"
#include "freeplane/extension.hpp"
#include "freeplane/fixtures.hpp"
#include "freeplane/random.hpp"
#include "oracles.hpp"

using namespace freeplane;

namespace {

IncidenceStructure fano_minus_incidence() {
    StructureBuilder b;
    auto f = fixtures::fano();
    for (const auto& p : f.points()) b.add_point(p);
    for (std::size_t l = 0; l < f.num_lines(); ++l) {
        b.add_line(f.line(l));
        for (std::size_t p : f.points_on(l)) {
            if (!(f.line(l).name() == "ABD" && f.point(p).name() == "A")) {
                b.add_incidence(f.point(p).name(), f.line(l).name());
            }
        }
    }
    return b.build();
}

std::vector<ElementRef> all_elements(const IncidenceStructure& s) {
    std::vector<ElementRef> v;
    for (std::size_t p = 0; p < s.num_points(); ++p) v.push_back({Sort::point, p});
    for (std::size_t l = 0; l < s.num_lines(); ++l) v.push_back({Sort::line, l});
    return v;
}

} // namespace

TEST(Confined, Examples) {
    EXPECT_TRUE(is_confined_finite(fixtures::fano()));
    EXPECT_FALSE(is_confined_finite(fixtures::quad()));
    EXPECT_FALSE(is_confined_finite(fano_minus_incidence()));
    EXPECT_TRUE(is_confined_finite(fixtures::affine_plane_3()));
}

TEST(Core, FanoIsItsOwnCore) {
    auto c = confined_core(fixtures::fano());
    EXPECT_EQ(c.core, fixtures::fano());
    EXPECT_TRUE(c.deleted.empty());
}

TEST(Core, QuadCoreIsEmpty) {
    auto c = confined_core(fixtures::quad());
    EXPECT_EQ(c.core.num_elements(), 0u);
    EXPECT_EQ(c.deleted.size(), 10u);
}

TEST(Core, SecondStageOfQuadHasEmptyCore) {
    auto t = extend(fixtures::quad(), 2);
    EXPECT_EQ(confined_core(t.stages[2]).core.num_elements(), 0u);
}

TEST(Core, FanoMinusOneIncidenceCollapses) {
    auto c = confined_core(fano_minus_incidence());
    auto o = oracle::peel(oracle::plain(fano_minus_incidence()));
    EXPECT_EQ(c.core.num_points(), o.points.size());
    EXPECT_EQ(c.core.num_lines(), o.lines.size());
}

TEST(Core, StarCenterRemovedAfterArms) {
    auto s = fixtures::star();
    auto c = confined_core(s);
    EXPECT_EQ(c.core.num_elements(), 0u);
    for (const auto& d : c.deleted) {
        if (s.name(d.element) == "O") {
            EXPECT_GT(d.round, 1u);
        }
    }
}

TEST(Core, MatchesRoundPeelingOracle) {
    std::mt19937_64 rng(11);
    RandomStructureOptions opt;
    opt.incidence_probability = 0.6;
    for (int i = 0; i < 100; ++i) {
        auto s = random_structure(rng, opt);
        auto c = confined_core(s);
        auto o = oracle::peel(oracle::plain(s));
        EXPECT_EQ(oracle::plain(c.core).points, o.points);
        EXPECT_EQ(oracle::plain(c.core).lines, o.lines);
        EXPECT_EQ(oracle::plain(c.core).incidence, o.incidence);
    }
}

TEST(Core, OrderIndependentAndIdempotent) {
    std::mt19937_64 rng(3);
    for (const auto& [name, s] : fixtures::all()) {
        auto base = confined_core(s).core;
        EXPECT_EQ(confined_core(base).core, base) << name;
        auto order = all_elements(s);
        for (int k = 0; k < 10; ++k) {
            std::shuffle(order.begin(), order.end(), rng);
            EXPECT_EQ(confined_core(s, order).core, base) << name;
        }
    }
}

TEST(Core, BadQueueOrderRejected) {
    std::vector<ElementRef> order{{Sort::line, 99}};
    EXPECT_THROW(confined_core(fixtures::fano(), order), PreconditionError);
}
