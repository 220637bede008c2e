#include <gtest/gtest.h>

#include <nilnov/error.hpp>
#include <nilnov/presentations.hpp>

#include "support.hpp"

using namespace nilnov;
using namespace nilnov::testing;

namespace
{

const char *const corpus[] = {"torus.fpg", "f2.fpg", "bs12.fpg", "mapping_torus.fpg"};

Presentation load(const std::string &name)
{
    return parse_presentation(read_data(name));
}

FreeWord word(const Presentation &p, std::initializer_list<std::pair<const char *, int>> letters)
{
    FreeWord w;
    for (const auto &[g, s] : letters) {
        w.push_back({p.gen_index(g), s});
    }
    return w;
}

} // namespace

TEST(Presentation, Parses)
{
    const auto p = parse_presentation("gens a b\nrel a b a^-1 b^-1\n");
    EXPECT_EQ(p.num_gens(), 2u);
    ASSERT_EQ(p.relators().size(), 1u);
    EXPECT_EQ(p.format_word(p.relators()[0]), "a b a^-1 b^-1");
    const auto bs = load("bs12.fpg");
    EXPECT_EQ(bs.format_word(bs.relators()[0]), "t a t^-1 a^-2");
    const auto mt = load("mapping_torus.fpg");
    EXPECT_EQ(mt.format_word(mt.relators()[0]), "t a t^-1 b^-1");
    EXPECT_THROW(parse_presentation("gens a\nrel x\n"), UnknownGenerator);
    EXPECT_THROW(parse_presentation("gens a\nfoo a\n"), SyntaxError);
}

TEST(Fox, FreeDerivativesOfTheCommutator)
{
    const auto p = load("torus.fpg");
    const auto r = p.relators()[0];
    const FreeRing da{{{}, 1}, {word(p, {{"a", 1}, {"b", 1}, {"a", -1}}), -1}};
    const FreeRing db{{word(p, {{"a", 1}}), 1}, {word(p, {{"a", 1}, {"b", 1}, {"a", -1}, {"b", -1}}), -1}};
    EXPECT_EQ(fox_derivative(r, p.gen_index("a")), da);
    EXPECT_EQ(fox_derivative(r, p.gen_index("b")), db);
}

TEST(Fox, FundamentalIdentityOnCorpus)
{
    for (const char *name : corpus) {
        const auto p = load(name);
        for (const auto &r : p.relators()) {
            EXPECT_TRUE(p.fox_identity_holds(r)) << name << ": " << p.format_word(r);
        }
    }
}

TEST(Fox, ProjectedComplexes)
{
    const auto q = Field::rationals();
    const auto torus = fox_complex(nilpotent_quotient(load("torus.fpg"), 1), q);
    EXPECT_EQ(torus.d2[0][0].format(), "1 - b");
    EXPECT_EQ(torus.d2[1][0].format(), "-1 + a");
    EXPECT_EQ(torus.euler_characteristic(), 0);

    const auto f2 = fox_complex(nilpotent_quotient(load("f2.fpg"), 1), q);
    EXPECT_EQ(f2.length(), 2u);
    EXPECT_EQ(f2.d1[0].format(), "-1 + a");
    EXPECT_EQ(f2.d1[1].format(), "-1 + b");
    EXPECT_EQ(f2.euler_characteristic(), -1);

    const auto bs = fox_complex(nilpotent_quotient(load("bs12.fpg"), 1), q);
    EXPECT_EQ(bs.d2[0][0].format(), "-2 + t");
    EXPECT_TRUE(bs.d2[1][0].is_zero());

    for (const char *name : corpus) {
        for (const Field f : {Field::rationals(), Field::prime(2)}) {
            EXPECT_TRUE(fox_complex(nilpotent_quotient(load(name), 1), f).boundary_squares_to_zero()) << name;
        }
    }
}

TEST(NilpotentQuotient, Abelianisations)
{
    const auto bs = nilpotent_quotient(load("bs12.fpg"), 1);
    EXPECT_EQ(bs.target()->num_gens(), 1u);
    EXPECT_EQ(bs.describe(), "a=1 t=t");
    const auto torus = nilpotent_quotient(load("torus.fpg"), 1);
    EXPECT_EQ(torus.target()->num_gens(), 2u);
    EXPECT_EQ(torus.describe(), "a=a b=b");
    const auto mt = nilpotent_quotient(load("mapping_torus.fpg"), 1);
    EXPECT_EQ(mt.describe(), "a=1 b=1 t=t");
}

TEST(NilpotentQuotient, FreeClassTwoIsHeisenberg)
{
    const auto q = nilpotent_quotient(load("f2.fpg"), 2);
    const auto &g = *q.target();
    ASSERT_EQ(g.num_levels(), 2u);
    EXPECT_EQ(g.level_rank(0), 2u);
    EXPECT_EQ(g.level_rank(1), 1u);
    const auto ba = g.commutator(q.images()[1], q.images()[0]);
    EXPECT_FALSE(ba.is_identity());
    EXPECT_EQ(g.leading_level(ba), 1u);
}

TEST(NilpotentQuotient, TorusClassTwoIsAbelian)
{
    const auto q = nilpotent_quotient(load("torus.fpg"), 2);
    EXPECT_EQ(q.target()->num_gens(), 2u);
    EXPECT_THROW(nilpotent_quotient(load("torus.fpg"), 3), ClassUnsupported);
}

TEST(QuotientMap, ValidatesRelators)
{
    const auto p = load("torus.fpg");
    const auto h = heisenberg();
    EXPECT_THROW(parse_quotient_map("a=a b=b", p, h), RelatorNotKilled);
    const auto m = parse_quotient_map("a=a b=c", p, h);
    EXPECT_EQ(m.describe(), "a=a b=c");
    const auto z = parse_pc(read_data("z.pcg"));
    const auto mt = parse_quotient_map("t=t", load("mapping_torus.fpg"), z);
    EXPECT_EQ(mt.describe(), "a=1 b=1 t=t");
}
