#include <algorithm>

#include <gtest/gtest.h>

#include <nilnov/charorder.hpp>
#include <nilnov/error.hpp>

#include "support.hpp"

using namespace nilnov;
using namespace nilnov::testing;

namespace
{

RatVec random_vec(Rng &rng, std::size_t n)
{
    RatVec v(n);
    while (std::all_of(v.begin(), v.end(), [](const mpq_class &x) { return x == 0; })) {
        for (auto &x : v) {
            x = mpq_class(uniform(rng, -4, 4), uniform(rng, 1, 3));
            x.canonicalize();
        }
    }
    return v;
}

MultiChar random_chi(Rng &rng, const PcGroupPtr &g)
{
    std::vector<Char> cs;
    for (std::size_t i = 0; i < g->num_levels(); ++i) {
        cs.push_back({i, random_vec(rng, g->level_rank(i))});
    }
    return MultiChar(g, cs);
}

Cmp flip(Cmp c)
{
    return c == Cmp::less ? Cmp::greater : c == Cmp::greater ? Cmp::less : Cmp::equal;
}

void check_axioms(const PcGroupPtr &g, unsigned seed, int triples)
{
    Rng rng(seed);
    for (int k = 0; k < triples; ++k) {
        const auto ord = LexOrder::from_multichar(random_chi(rng, g));
        const Elt x = random_elt(rng, *g), y = random_elt(rng, *g), z = random_elt(rng, *g);
        const Cmp xy = ord.compare(x, y);
        ASSERT_EQ(xy == Cmp::equal, x == y);
        ASSERT_EQ(ord.compare(y, x), flip(xy));
        ASSERT_EQ(ord.compare(g->mul(z, x), g->mul(z, y)), xy);
        ASSERT_EQ(ord.compare(g->mul(x, z), g->mul(y, z)), xy);
        if (xy == Cmp::less && ord.compare(y, z) == Cmp::less) {
            ASSERT_EQ(ord.compare(x, z), Cmp::less);
        }
    }
}

} // namespace

TEST(LexOrder, AxiomsOnHeisenberg)
{
    check_axioms(heisenberg(), 21, 300);
}

TEST(LexOrder, AxiomsOnZ3)
{
    check_axioms(free_abelian(3), 22, 300);
}

TEST(LexOrder, PrimaryCharacterDecidesFirst)
{
    const auto h = heisenberg();
    const auto chi = parse_mchar(read_data("chi_heis.mchar"), h);
    const auto ord = LexOrder::from_multichar(chi);
    EXPECT_EQ(ord.compare(h->collect(parse_word(*h, "a")), h->collect(parse_word(*h, "b"))), Cmp::greater);
    EXPECT_EQ(ord.compare(h->collect(parse_word(*h, "c")), h->identity()), Cmp::greater);
    EXPECT_EQ(ord.compare(h->collect(parse_word(*h, "b")), h->collect(parse_word(*h, "c^5"))), Cmp::greater);
    const auto rev = ord.reversed({-1, 1});
    EXPECT_EQ(rev.compare(h->collect(parse_word(*h, "a")), h->identity()), Cmp::less);
    EXPECT_EQ(rev.compare(h->collect(parse_word(*h, "c")), h->identity()), Cmp::greater);
}

TEST(LexOrder, RejectsNonInjectiveStacks)
{
    const auto z2 = free_abelian(2);
    EXPECT_THROW(LexOrder(z2, {{RatVec{1, 1}}}), InvalidArgument);
}

TEST(MultiChar, ParsesAndPrints)
{
    const auto h = heisenberg();
    const auto chi = parse_mchar("char 0: a=1/2 b=-3\nchar 1: c=2\n", h);
    EXPECT_EQ(chi.component(0).values, (RatVec{mpq_class(1, 2), -3}));
    EXPECT_EQ(parse_mchar(chi.to_mchar(), h).to_mchar(), chi.to_mchar());
    EXPECT_EQ(chi.with_signs({1, -1}).sign_pattern(), "+-");
    EXPECT_THROW(parse_mchar("char 0 a=1\n", h), SyntaxError);
    EXPECT_THROW(parse_mchar("char 0: c=1\n", h), InvalidArgument);
    EXPECT_THROW(chi.with_signs({1}), InvalidArgument);
}

TEST(FitCharacter, SimplestRationals)
{
    EXPECT_EQ(simplest_between(mpq_class(1, 3), mpq_class(1, 2)), mpq_class(2, 5));
    EXPECT_EQ(simplest_between(std::nullopt, std::nullopt), 0);
    EXPECT_EQ(simplest_between(mpq_class(0), std::nullopt), 1);
    EXPECT_EQ(simplest_between(std::nullopt, mpq_class(-3, 2)), -2);
    EXPECT_EQ(simplest_between(mpq_class(1), mpq_class(3)), 2);
}

TEST(FitCharacter, CoordinateChain)
{
    const std::vector<intmat::IntVec> chain{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}};
    const auto v = fit_character(3, chain);
    const Char c{0, v};
    EXPECT_LT(c(chain[0]), c(chain[1]));
    EXPECT_LT(c(chain[1]), c(chain[2]));
    EXPECT_EQ(v, (RatVec{2, 1, 0}));
}

TEST(FitCharacter, RandomOrderedChains)
{
    const auto z3 = free_abelian(3);
    Rng rng(23);
    for (int k = 0; k < 100; ++k) {
        const auto ord = LexOrder::from_multichar(random_chi(rng, z3));
        std::vector<intmat::IntVec> chain;
        const auto len = uniform(rng, 2, 6);
        while (static_cast<long>(chain.size()) < len) {
            intmat::IntVec v{uniform(rng, -3, 3), uniform(rng, -3, 3), uniform(rng, -3, 3)};
            if (std::find(chain.begin(), chain.end(), v) == chain.end()) {
                chain.push_back(v);
            }
        }
        std::sort(chain.begin(), chain.end(),
                  [&](const auto &a, const auto &b) { return ord.compare_level(0, a, b) == Cmp::less; });
        const Char c{0, fit_character(3, chain)};
        for (std::size_t j = 0; j + 1 < chain.size(); ++j) {
            ASSERT_LT(c(chain[j]), c(chain[j + 1])) << "chain " << k;
        }
    }
}

TEST(FitCharacter, InfeasibleChain)
{
    const std::vector<intmat::IntVec> chain{{1, 0}, {0, 0}, {2, 0}};
    EXPECT_THROW(fit_character(2, chain), Infeasible);
}
