#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "posetpack/boolean_lattice.hpp"

using namespace posetpack;

namespace {

SetFamily fam(int n, std::initializer_list<std::initializer_list<int>> sets) {
    GroundSet g(n);
    std::vector<Mask> masks;
    for (auto s : sets) masks.push_back(Subset::from_indices(g, s).bits());
    return SetFamily(g, masks);
}

std::vector<Mask> random_family(std::mt19937_64& rng, int n, int t) {
    std::set<Mask> s;
    while (static_cast<int>(s.size()) < t) s.insert(rng() & bits::full(n));
    return {s.begin(), s.end()};
}

}  // namespace

TEST(Subset, IndicesAndCaps) {
    GroundSet g(6);
    auto s = Subset::from_indices(g, {6, 1, 3});
    EXPECT_EQ(s.indices(), (std::vector<int>{1, 3, 6}));
    EXPECT_EQ(s.size(), 3);
    EXPECT_THROW(Subset::from_indices(g, {7}), InvalidInput);
    EXPECT_THROW(Subset::from_indices(g, {0}), InvalidInput);
    EXPECT_THROW(GroundSet(63), CapExceeded);
    EXPECT_NO_THROW(GroundSet(62));
}

TEST(Comparable, Examples) {
    GroundSet g(3);
    auto a = Subset::from_indices(g, {1});
    EXPECT_TRUE(comparable(a, Subset::from_indices(g, {1, 2})));
    EXPECT_FALSE(comparable(a, Subset::from_indices(g, {2})));
    EXPECT_TRUE(comparable(a, a));
    EXPECT_THROW(comparable(a, Subset::from_indices(GroundSet(4), {1})), InvalidInput);
}

TEST(SetFamily, CanonicalOrderIsSizeThenColex) {
    auto f = fam(3, {{1, 2}, {3}, {}, {1}, {2, 3}, {1, 3}, {2}, {1, 2, 3}, {1}});
    std::vector<Mask> expect{0b000, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111};
    EXPECT_EQ(f.masks(), expect);
}

TEST(ConvexHull, Examples) {
    EXPECT_EQ(convex_hull(fam(2, {{}})), fam(2, {{}}));
    EXPECT_EQ(convex_hull(fam(2, {{}, {1, 2}})).size(), 4U);
    EXPECT_EQ(convex_hull(fam(3, {{1}, {2}})), fam(3, {{1}, {2}}));
    EXPECT_THROW(convex_hull(SetFamily(GroundSet(2))), InvalidInput);
}

TEST(ConvexHull, MatchesDefinitionIdempotentMonotone) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        int n = 1 + static_cast<int>(rng() % 6);
        int t = 1 + static_cast<int>(rng() % std::min<int>(6, 1 << n));
        auto f = random_family(rng, n, t);
        SetFamily fa(GroundSet(n), f);
        auto h = convex_hull(fa);
        auto ref = oracle::hull_by_definition(n, f);
        ASSERT_EQ(h.size(), ref.size());
        for (Mask m : h.masks()) ASSERT_TRUE(ref.count(m));
        EXPECT_TRUE(h.includes(fa));
        EXPECT_EQ(convex_hull(h), h);
        auto g = f;
        g.push_back(rng() & bits::full(n));
        auto hg = convex_hull(SetFamily(GroundSet(n), g));
        EXPECT_TRUE(hg.includes(h));
    }
}

TEST(FamiliesIncomparable, Examples) {
    EXPECT_TRUE(families_incomparable(fam(2, {{1}}), fam(2, {{2}})));
    EXPECT_FALSE(families_incomparable(fam(2, {{1}}), fam(2, {{1, 2}})));
    auto v_hull = convex_hull(fam(3, {{}, {1}, {2}}));
    EXPECT_FALSE(families_incomparable(v_hull, fam(3, {{3}})));
    EXPECT_THROW(families_incomparable(fam(2, {{1}}), fam(3, {{2}})), InvalidInput);
}

TEST(ChainCount, Examples) {
    EXPECT_EQ(count_chains_meeting(fam(4, {{1, 2}})), 4);
    EXPECT_EQ(oracle::chains_by_permutations(4, {0b0011}), 4U);
    EXPECT_EQ(count_chains_meeting(SetFamily(GroundSet(4))), 0);
    EXPECT_EQ(count_chains_meeting(fam(5, {{}})), 120);
    EXPECT_THROW(count_chains_meeting(SetFamily(GroundSet(25), {Mask{1}})), CapExceeded);
}

TEST(ChainCount, MatchesPermutationWalkForSmallN) {
    std::mt19937_64 rng(5);
    for (int n = 1; n <= 7; ++n)
        for (int trial = 0; trial < 25; ++trial) {
            int t = 1 + static_cast<int>(rng() % std::min(8, 1 << n));
            auto f = random_family(rng, n, t);
            ASSERT_EQ(count_chains_meeting(SetFamily(GroundSet(n), f)), oracle::chains_by_permutations(n, f));
        }
}

TEST(ChainCount, WideTableAboveTwenty) {
    // Chains through {1} in B_21: 1! * 20!.
    auto f = fam(21, {{1}});
    EXPECT_EQ(count_chains_meeting(f), factorial(20));
}

TEST(ChainBound, Values) {
    for (int n = 1; n <= 10; ++n)
        EXPECT_EQ(chcount_lower_bound(1, n), Rational(factorial(n / 2) * factorial(n - n / 2)));
    EXPECT_EQ(chcount_lower_bound(2, 4), Rational(7));
    EXPECT_EQ(chcount_lower_bound(3, 3), Rational(4));
    EXPECT_LE(chcount_lower_bound(20, 4), 0);
    EXPECT_THROW(chcount_lower_bound(0, 4), InvalidInput);
}

TEST(ChainBound, ClosedFormFailsOnSmallInstance) {
    // {1} and {1,2} in B_3 meet 3 chains; the closed form asks for 10/3.
    auto f = fam(3, {{1}, {1, 2}});
    EXPECT_EQ(count_chains_meeting(f), 3);
    EXPECT_EQ(oracle::chains_by_permutations(3, f.masks()), 3U);
    EXPECT_EQ(chcount_lower_bound(2, 3), Rational(10, 3));
    EXPECT_GE(Rational(3), oracle::proven_chain_bound(2, 3));
}

TEST(ChainBound, InductionBoundAndComplementSymmetryOnRandomFamilies) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + static_cast<int>(rng() % 8);
        int t = 1 + static_cast<int>(rng() % n);
        auto f = random_family(rng, n, t);
        SetFamily fa(GroundSet(n), f);
        auto count = count_chains_meeting(fa);
        EXPECT_GE(Rational(count), oracle::proven_chain_bound(t, n)) << "n=" << n << " t=" << t;
        std::vector<Mask> comp;
        for (Mask m : f) comp.push_back(bits::full(n) & ~m);
        EXPECT_EQ(count, count_chains_meeting(SetFamily(GroundSet(n), comp)));
    }
}

TEST(Bits, ColexSubsetsOfSize) {
    std::vector<Mask> seen;
    bits::for_each_subset_of_size(0b10110, 2, [&](Mask m) {
        seen.push_back(m);
        return true;
    });
    EXPECT_EQ(seen, (std::vector<Mask>{0b00110, 0b10010, 0b10100}));
    int count = 0;
    bits::for_each_subset_of_size(bits::full(10), 4, [&](Mask) { return ++count, true; });
    EXPECT_EQ(count, 210);
    EXPECT_EQ(binomial(14, 7), 3432);
    EXPECT_EQ(binomial(3, 5), 0);
}
