#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "freeplane/fixtures.hpp"
#include "freeplane/group.hpp"
#include "oracles.hpp"

using namespace freeplane;

namespace {

/// Symmetric group on n points, listed explicitly.
PermutationGroup symmetric(std::size_t n) {
    std::vector<Permutation> all;
    auto p = identity_permutation(n);
    do {
        all.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return make_group(all, n);
}

PermutationGroup cyclic(std::size_t n) {
    Permutation r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = static_cast<std::uint32_t>((i + 1) % n);
    std::vector<Permutation> all{identity_permutation(n)};
    for (std::size_t k = 1; k < n; ++k) all.push_back(multiply(all.back(), r));
    return make_group(all, n);
}

} // namespace

TEST(Group, AutomorphismOrders) {
    EXPECT_EQ(automorphism_group(fixtures::fano()).order(), 168u);
    EXPECT_EQ(automorphism_group(fixtures::quad()).order(), 24u);
    EXPECT_EQ(automorphism_group(fixtures::star()).order(), 48u);
    EXPECT_EQ(automorphism_group(fixtures::rigid6()).order(), 1u);
    EXPECT_EQ(automorphism_group(fixtures::affine_plane_3()).order(), 432u);
}

TEST(Group, MatchesBruteForceOnQuad) {
    auto q = fixtures::quad();
    auto g = automorphism_group(q);
    auto brute = oracle::brute_force(oracle::plain(q), oracle::plain(q), 2);
    std::set<Permutation> expected;
    for (const auto& [pm, lm] : brute) {
        Permutation p;
        for (auto x : pm) p.push_back(static_cast<std::uint32_t>(x));
        for (auto x : lm) p.push_back(static_cast<std::uint32_t>(q.num_points() + x));
        expected.insert(p);
    }
    EXPECT_EQ(std::set<Permutation>(g.elements.begin(), g.elements.end()), expected);
}

TEST(Group, LawsHold) {
    for (const auto& [name, s] : fixtures::all()) {
        auto g = automorphism_group(s);
        EXPECT_FALSE(group_law_violation(g).has_value()) << name;
        EXPECT_TRUE(g.complete);
        EXPECT_EQ(detail::closure(g.generators, g.degree, 1'000'000).size(), g.order()) << name;
    }
}

TEST(Group, OrderCapMarksIncomplete) {
    AutomorphismOptions opt;
    opt.order_cap = 10;
    auto g = automorphism_group(fixtures::fano(), opt);
    EXPECT_FALSE(g.complete);
    EXPECT_EQ(g.order(), 10u);
}

TEST(Group, PermutationRoundTrip) {
    auto f = fixtures::fano();
    for (const auto& m : isomorphisms(f, f).morphisms) {
        EXPECT_EQ(to_morphism(to_permutation(m, f.num_points()), f.num_points()), m);
    }
}

TEST(GroupIsomorphism, QuadAutIsS4) {
    auto r = find_group_isomorphism(automorphism_group(fixtures::quad()), symmetric(4));
    EXPECT_TRUE(r.isomorphic) << r.reason;
    EXPECT_FALSE(r.generator_images.empty());
}

TEST(GroupIsomorphism, RejectsByInvariants) {
    auto r = find_group_isomorphism(automorphism_group(fixtures::quad()), automorphism_group(fixtures::star()));
    EXPECT_FALSE(r.isomorphic);
    EXPECT_EQ(r.reason, "orders differ: 24 vs 48");
    // C4 against the Klein group acting on the quad's points.
    PermutationGroup klein = make_group({{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}}, 4);
    auto c = find_group_isomorphism(cyclic(4), klein);
    EXPECT_FALSE(c.isomorphic);
    EXPECT_EQ(c.reason, "element-order statistics differ");
}

TEST(GroupIsomorphism, DifferentActionsSameGroup) {
    // S3 acting on 3 points and on itself (6 points) are isomorphic.
    auto s3 = symmetric(3);
    std::vector<Permutation> regular;
    for (const auto& x : s3.elements) {
        Permutation p;
        for (const auto& y : s3.elements) {
            auto xy = multiply(x, y);
            p.push_back(static_cast<std::uint32_t>(std::find(s3.elements.begin(), s3.elements.end(), xy) -
                                                   s3.elements.begin()));
        }
        regular.push_back(p);
    }
    EXPECT_TRUE(find_group_isomorphism(s3, make_group(regular, 6)).isomorphic);
    EXPECT_FALSE(find_group_isomorphism(s3, cyclic(6)).isomorphic);
}
