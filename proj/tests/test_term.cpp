#include <gtest/gtest.h>

#include "freeplane/errors.hpp"
#include "freeplane/term.hpp"

using freeplane::ElementTerm;

TEST(Term, BaseHasStageZero) {
    auto a = ElementTerm::base("A");
    EXPECT_TRUE(a.is_base());
    EXPECT_EQ(a.stage(), 0u);
    EXPECT_EQ(a.name(), "A");
}

TEST(Term, ArgumentsAreCanonicallyOrdered) {
    auto ab = ElementTerm::base("AB"), cd = ElementTerm::base("CD");
    EXPECT_EQ(ElementTerm::meet(ab, cd), ElementTerm::meet(cd, ab));
    EXPECT_EQ(ElementTerm::meet(cd, ab).name(), "meet(AB,CD)");
    EXPECT_EQ(ElementTerm::meet(ab, cd).stage(), 1u);
}

TEST(Term, StageExceedsArguments) {
    auto p = ElementTerm::meet(ElementTerm::base("l"), ElementTerm::base("m"));
    auto q = ElementTerm::base("Q");
    auto j = ElementTerm::join(p, q);
    EXPECT_EQ(j.stage(), 2u);
    // Lower stage sorts first, so the base point is the left argument.
    EXPECT_EQ(j.name(), "join(Q,meet(l,m))");
}

TEST(Term, ParseRoundTrips) {
    auto t = ElementTerm::join(ElementTerm::meet(ElementTerm::base("a"), ElementTerm::base("b")),
                               ElementTerm::meet(ElementTerm::base("c"), ElementTerm::base("d")));
    auto parsed = ElementTerm::parse(t.name());
    EXPECT_EQ(parsed, t);
    EXPECT_EQ(parsed.stage(), 2u);
    EXPECT_EQ(parsed.left().name(), "meet(a,b)");
}

TEST(Term, ParseCanonicalisesArgumentOrder) {
    EXPECT_EQ(ElementTerm::parse("meet(m,l)").name(), "meet(l,m)");
}

TEST(Term, OrderIsStageThenKind) {
    auto a = ElementTerm::base("z");
    auto m = ElementTerm::meet(ElementTerm::base("a"), ElementTerm::base("b"));
    auto j = ElementTerm::join(ElementTerm::base("a"), ElementTerm::base("b"));
    EXPECT_LT(a, m);
    EXPECT_LT(m, j);
}

TEST(Term, RejectsBadNames) {
    EXPECT_THROW(ElementTerm::base(""), freeplane::StructureError);
    EXPECT_THROW(ElementTerm::base("0"), freeplane::StructureError);
    EXPECT_THROW(ElementTerm::base("a b"), freeplane::StructureError);
    EXPECT_THROW(ElementTerm::parse("meet(a)"), freeplane::StructureError);
    EXPECT_THROW(ElementTerm::parse("meet(a,b,c)"), freeplane::StructureError);
    EXPECT_THROW(ElementTerm::parse("meet(a,a)"), freeplane::StructureError);
    EXPECT_THROW(ElementTerm::parse("meet(a,b"), freeplane::StructureError);
}
