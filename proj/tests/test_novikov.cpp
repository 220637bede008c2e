#include <gtest/gtest.h>

#include <nilnov/charorder.hpp>
#include <nilnov/error.hpp>
#include <nilnov/novikov.hpp>

#include "support.hpp"

using namespace nilnov;
using namespace nilnov::testing;

namespace
{

struct ZFixture {
    PcGroupPtr z = parse_pc(read_data("z.pcg"));
    MultiChar chi = parse_mchar(read_data("chi_z.mchar"), z);
    Field q = Field::rationals();

    NovSeries series(const std::string &s, long t) const
    {
        return NovSeries(parse_ring(s, z, q), chi, Trunc::uniform(1, t));
    }
};

struct HFixture {
    PcGroupPtr h = heisenberg();
    MultiChar chi = parse_mchar(read_data("chi_heis.mchar"), h);
    Field q = Field::rationals();
};

// beta * gamma - 1 and gamma * beta - 1 vanish below the certificate region.
bool residuals_clear(const NovSeries &beta, const NovSeries &gamma)
{
    const auto one = RingElt::one(beta.body().group(), beta.body().field());
    const auto md = min_degrees(beta.body(), beta.chi());
    DegTuple lo(md.size());
    for (std::size_t i = 0; i < md.size(); ++i) {
        lo[i] = beta.trunc().frontier[i] + std::min(mpq_class(0), md[i]);
    }
    return truncate(ring_mul(beta.body(), gamma.body()) - one, beta.chi(), lo).is_zero() &&
           truncate(ring_mul(gamma.body(), beta.body()) - one, beta.chi(), lo).is_zero();
}

} // namespace

TEST(Novikov, TruncationIsABox)
{
    HFixture f;
    const auto x = parse_ring("1 + a^3 + c^3 + a^2 c^2 + a c^5", f.h, f.q);
    EXPECT_EQ(truncate(x, f.chi, {3, 3}), parse_ring("1 + a^2 c^2", f.h, f.q));
    EXPECT_EQ(min_degrees(x, f.chi), (DegTuple{0, 0}));
    const Trunc t = Trunc::uniform(2, 3);
    EXPECT_EQ(t.doubled().frontier, (DegTuple{6, 6}));
    EXPECT_EQ(t.frontier_str(), "(3,3)");
    EXPECT_TRUE(t.retains({2, 2}));
    EXPECT_FALSE(t.retains({3, 0}));
}

TEST(Novikov, TelescopingProduct)
{
    ZFixture f;
    const auto p = nov_mul(f.series("1 + t + t^2 + t^3 + t^4 + t^5 + t^6", 5), f.series("1 - t", 5));
    EXPECT_EQ(p.format(), "1 + O(5)");
}

TEST(Novikov, UnitAndCentralProducts)
{
    HFixture f;
    const Trunc t = Trunc::uniform(2, 4);
    const NovSeries x(parse_ring("1 + a", f.h, f.q), f.chi, t), y(parse_ring("1 + c", f.h, f.q), f.chi, t);
    EXPECT_EQ(nov_mul(x, y).body(), nov_mul(y, x).body());
    const NovSeries one(RingElt::one(f.h, f.q), f.chi, t);
    EXPECT_EQ(nov_mul(x, one).body(), x.body());
}

TEST(Novikov, GeometricSeries)
{
    ZFixture f;
    const auto g = nov_invert(f.series("1 - t", 5));
    EXPECT_EQ(g.format(), "1 + t + t^2 + t^3 + t^4 + O(5)");
    EXPECT_TRUE(residuals_clear(f.series("1 - t", 5), g));
}

TEST(Novikov, GeometricSeriesUnderNegatedCharacter)
{
    ZFixture f;
    const auto neg = f.chi.with_signs({-1});
    const NovSeries beta(parse_ring("1 - t", f.z, f.q), neg, Trunc::uniform(1, 4));
    const auto g = nov_invert(beta);
    EXPECT_EQ(g.body(), parse_ring("-t^-1 - t^-2 - t^-3", f.z, f.q));
    EXPECT_TRUE(residuals_clear(beta, g));
}

TEST(Novikov, InversionErrors)
{
    ZFixture f;
    const auto zero_chi = MultiChar::zero(f.z);
    const NovSeries flat(parse_ring("1 - t", f.z, f.q), zero_chi, Trunc::uniform(1, 5));
    EXPECT_THROW(nov_invert(flat), NoStrictMinimum);
    EXPECT_THROW(nov_invert(f.series("0", 5)), NoStrictMinimum);
    const NovSeries capped(parse_ring("1 - t", f.z, f.q), f.chi, Trunc::uniform(1, 50, 3));
    EXPECT_THROW(nov_invert(capped), TruncationInsufficient);
}

TEST(Novikov, HeisenbergInverseMatchesGeometricSum)
{
    HFixture f;
    const Trunc t{{3, 3}, 12};
    const NovSeries beta(parse_ring("1 - a - c", f.h, f.q), f.chi, t);
    const auto g = nov_invert(beta);
    const auto s = parse_ring("a + c", f.h, f.q);
    RingElt power = RingElt::one(f.h, f.q), sum(f.h, f.q);
    for (int m = 0; m <= 6; ++m) {
        sum += power;
        power = ring_mul(power, s);
    }
    EXPECT_EQ(g.body(), truncate(sum, f.chi, t.frontier));
    EXPECT_EQ(g.body().coeff(f.h->collect(parse_word(*f.h, "a^2 c^2"))).value(), 6);
    EXPECT_TRUE(residuals_clear(beta, g));
}

TEST(Novikov, FrontierDoublingAgrees)
{
    HFixture f;
    Rng rng(41);
    for (int k = 0; k < 20; ++k) {
        RingElt beta = RingElt::one(f.h, f.q);
        for (int j = 0; j < 3; ++j) {
            // Positive level-0 degree, or central with positive level-1 degree.
            const Elt g = random_elt(rng, *f.h, 3, 2);
            const auto d = deg_tuple(f.chi, g);
            if (d[0] > 0 || (g.exponent(0) == 0 && g.exponent(1) == 0 && d[1] > 0)) {
                beta.add_term(g, FieldElem(f.q, uniform(rng, -2, 2)));
            }
        }
        const Trunc t = Trunc::uniform(2, 3, 40);
        const auto g1 = nov_invert(NovSeries(beta, f.chi, t));
        const auto g2 = nov_invert(NovSeries(beta, f.chi, t.doubled()));
        EXPECT_EQ(truncate(g2.body(), f.chi, t.frontier), g1.body());
    }
}

TEST(Novikov, RejectsMismatchedOperands)
{
    ZFixture f;
    const NovSeries x = f.series("1 - t", 5);
    const NovSeries y(parse_ring("1 - t", f.z, f.q), f.chi.with_signs({-1}), Trunc::uniform(1, 5));
    EXPECT_THROW(nov_mul(x, y), MismatchedCharacter);
    EXPECT_THROW(NovSeries(parse_ring("1", f.z, f.q), f.chi, Trunc::uniform(2, 5)), InvalidArgument);
}
