#include <gtest/gtest.h>

#include <nilnov/charorder.hpp>
#include <nilnov/error.hpp>
#include <nilnov/groupring.hpp>

#include "support.hpp"

using namespace nilnov;
using namespace nilnov::testing;

namespace
{

RingElt random_ring(Rng &rng, const PcGroupPtr &g, Field f)
{
    RingElt x(g, f);
    const auto n = uniform(rng, 0, 4);
    for (long k = 0; k < n; ++k) {
        x.add_term(random_elt(rng, *g, 4, 2), FieldElem(f, uniform(rng, -3, 3)));
    }
    return x;
}

} // namespace

TEST(GroupRing, Products)
{
    const auto z = parse_pc(read_data("z.pcg"));
    const auto q = Field::rationals();
    EXPECT_EQ(ring_mul(parse_ring("1 + t", z, q), parse_ring("1 - t", z, q)).format(), "1 - t^2");
    const auto h = heisenberg();
    EXPECT_EQ(ring_mul(parse_ring("b", h, q), parse_ring("a", h, q)).format(), "a b c");
    const auto f2 = Field::prime(2);
    const auto x = parse_ring("1 + a", h, f2);
    EXPECT_EQ(ring_mul(x, x), parse_ring("1 + a^2", h, f2));
}

TEST(GroupRing, RingAxioms)
{
    const auto h = heisenberg();
    Rng rng(31);
    for (const Field f : {Field::rationals(), Field::prime(3)}) {
        const auto one = RingElt::one(h, f);
        for (int k = 0; k < 60; ++k) {
            const auto x = random_ring(rng, h, f), y = random_ring(rng, h, f), z = random_ring(rng, h, f);
            ASSERT_EQ((x * y) * z, x * (y * z));
            ASSERT_EQ(x * (y + z), x * y + x * z);
            ASSERT_EQ((x + y) * z, x * z + y * z);
            ASSERT_EQ(one * x, x);
            ASSERT_EQ(x * one, x);
            ASSERT_TRUE((x - x).is_zero());
            ASSERT_EQ(augment(x * y), augment(x) * augment(y));
        }
    }
}

TEST(GroupRing, Augmentation)
{
    const auto h = heisenberg();
    const auto q = Field::rationals();
    EXPECT_EQ(augment(parse_ring("3 + 2*a - b", h, q)).value(), 4);
    EXPECT_EQ(augment(RingElt(h, q)).value(), 0);
    const auto z = parse_pc(read_data("z.pcg"));
    EXPECT_EQ(augment(parse_ring("1 - t", z, q)).value(), 0);
}

TEST(GroupRing, DegreeTuples)
{
    const auto h = heisenberg();
    const auto chi = parse_mchar(read_data("chi_heis.mchar"), h);
    EXPECT_EQ(deg_tuple(chi, h->identity()), (DegTuple{0, 0}));
    EXPECT_EQ(deg_tuple(chi, h->collect(parse_word(*h, "a^2 c^3"))), (DegTuple{2, 3}));
    EXPECT_EQ(deg_tuple(chi, h->collect(parse_word(*h, "b a"))), (DegTuple{1, 1}));
}

TEST(GroupRing, ParsesCoefficients)
{
    const auto h = heisenberg();
    const auto q = Field::rationals();
    const auto x = parse_ring("1/2*a^-1 - 3 b c^2 + 2", h, q);
    EXPECT_EQ(x.coeff(h->collect(parse_word(*h, "a^-1"))).value(), mpq_class(1, 2));
    EXPECT_EQ(x.coeff(h->collect(parse_word(*h, "b c^2"))).value(), -3);
    EXPECT_EQ(x.coeff(h->identity()).value(), 2);
    EXPECT_EQ(parse_ring(x.format(), h, q), x);
    EXPECT_EQ(parse_ring("2/3", h, Field::prime(5)).coeff(h->identity()).value(), 4);
    EXPECT_THROW(parse_ring("", h, q), SyntaxError);
    EXPECT_THROW(parse_ring("a + x", h, q), UnknownGenerator);
}

TEST(GroupRing, RejectsMixedOperands)
{
    const auto h = heisenberg();
    const auto x = parse_ring("a", h, Field::rationals());
    EXPECT_THROW(x * parse_ring("a", h, Field::prime(2)), MismatchedField);
    EXPECT_THROW(x * parse_ring("a", heisenberg(), Field::rationals()), MismatchedGroup);
}
