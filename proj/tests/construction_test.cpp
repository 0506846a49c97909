#include <gtest/gtest.h>

#include "oracles.hpp"
#include "posetpack/construction.hpp"

using namespace posetpack;

namespace {

// K from the definition: codes with exactly one interval label, the first
// interval label p, before it only labels outside the interval.
BigInt brute_good_count(const OrderedCopySystem& s) {
    const auto [p, last] = s.interval();
    const std::uint32_t labels = s.labeling.label_count();
    BigInt total = 0;
    std::vector<std::uint32_t> code(s.blocks, 1);
    while (true) {
        int first = -1;
        bool ok = true;
        for (int r = 0; r < s.blocks; ++r) {
            bool inside = code[r] >= p && code[r] <= last;
            if (inside && first < 0) {
                first = r;
                ok = code[r] == p;
            }
        }
        if (first >= 0 && ok) ++total;
        int r = s.blocks - 1;
        while (r >= 0 && code[r] == labels) code[r--] = 1;
        if (r < 0) break;
        ++code[r];
    }
    return total;
}

}  // namespace

TEST(OrderedCopies, SingleQuarter) {
    auto s = build_ordered_copies(single_poset(), EmbeddingKind::weak);
    EXPECT_EQ(s.t, 1);
    EXPECT_EQ(s.base_m, 1);
    EXPECT_EQ(s.blocks, 2);
    EXPECT_EQ(s.ground, 2);
    EXPECT_EQ(s.count, 3);
}

TEST(OrderedCopies, PathTwoBlocks) {
    auto s = build_ordered_copies(chain_poset(2), EmbeddingKind::weak);
    EXPECT_EQ(s.blocks, 1);
    EXPECT_EQ(s.count, 1);
    OrderedCopyOptions opt;
    opt.min_blocks = 2;
    auto s2 = build_ordered_copies(chain_poset(2), EmbeddingKind::weak, opt);
    EXPECT_EQ(s2.blocks, 2);
    EXPECT_EQ(s2.ground, 2);
    EXPECT_EQ(s2.count, 2);
}

TEST(OrderedCopies, CountsAgreeAndOrderHolds) {
    for (const auto& p : {single_poset(), chain_poset(2), v_poset()})
        for (auto kind : {EmbeddingKind::weak, EmbeddingKind::induced})
            for (Rational eps : {Rational(1, 4), Rational(1, 2)})
                for (int min_blocks : {1, 2}) {
                    OrderedCopyOptions opt;
                    opt.epsilon_prime = eps;
                    opt.min_blocks = min_blocks;
                    auto s = build_ordered_copies(p, kind, opt);
                    ASSERT_TRUE(s.materialized);
                    EXPECT_EQ(Rational(s.count), s.closed_form);
                    EXPECT_GE(Rational(s.count), s.guarantee);
                    EXPECT_EQ(BigInt(s.copies.size()), s.count);
                    EXPECT_EQ(brute_good_count(s), s.count);
                    EXPECT_FALSE(find_order_violation(s.copies).has_value());
                    for (const auto& c : s.copies) {
                        Embedding e{s.poset, GroundSet(s.ground), c, kind};
                        EXPECT_TRUE(is_valid_embedding(e));
                    }
                    for (std::size_t i = 1; i < s.codes.size(); ++i) EXPECT_LT(s.codes[i - 1], s.codes[i]);
                }
}

TEST(OrderedCopies, RejectsBadEpsilon) {
    OrderedCopyOptions opt;
    opt.epsilon_prime = 1;
    EXPECT_THROW(build_ordered_copies(single_poset(), EmbeddingKind::weak, opt), InvalidInput);
    opt.epsilon_prime = 0;
    EXPECT_THROW(build_ordered_copies(single_poset(), EmbeddingKind::weak, opt), InvalidInput);
}

TEST(ParseRational, Forms) {
    EXPECT_EQ(parse_rational("1/4"), Rational(1, 4));
    EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
    EXPECT_EQ(parse_rational("3"), Rational(3));
    EXPECT_THROW(parse_rational("x"), InvalidInput);
    EXPECT_THROW(parse_rational("1/0"), InvalidInput);
}

TEST(LowerBound, PathTwoAtFourteen) {
    auto lb = build_incomparable_family(chain_poset(2), EmbeddingKind::weak, 14);
    EXPECT_EQ(lb.family.size(), 1287U);
    EXPECT_EQ(BigInt(lb.family.size()), lb.expected_size);
    EXPECT_TRUE(lb.meets_target);
    EXPECT_EQ(lb.target, Rational(858));
    EXPECT_TRUE(verify_packing(lb.family).pass());

    LowerBoundOptions opt;
    opt.min_blocks = 2;
    auto lb2 = build_incomparable_family(chain_poset(2), EmbeddingKind::weak, 14, opt);
    EXPECT_EQ(lb2.family.size(), 1287U);
    EXPECT_TRUE(verify_packing(lb2.family).pass());
}

TEST(LowerBound, TooSmallNamesMinimalN) {
    try {
        build_incomparable_family(v_poset(), EmbeddingKind::induced, 3);
        FAIL();
    } catch (const InvalidInput& e) {
        EXPECT_NE(std::string(e.what()).find("smallest feasible n is 4"), std::string::npos) << e.what();
    }
    auto lb = build_incomparable_family(v_poset(), EmbeddingKind::induced, 4);
    EXPECT_EQ(lb.family.size(), 1U);
    EXPECT_TRUE(lb.meets_target);
}

TEST(LowerBound, SmallFamiliesVerify) {
    for (const auto& p : {single_poset(), chain_poset(2), v_poset()})
        for (int n = 4; n <= 12; ++n) {
            try {
                auto lb = build_incomparable_family(p, EmbeddingKind::weak, n);
                EXPECT_EQ(BigInt(lb.family.size()), lb.expected_size);
                EXPECT_TRUE(verify_packing(lb.family).pass()) << "n=" << n;
            } catch (const InvalidInput&) {
            }
        }
}

TEST(PathFamily, SizesAndVerification) {
    for (int h = 0; h <= 3; ++h)
        for (int n = h; n <= 12; ++n) {
            auto fam = path_family(h, n);
            EXPECT_EQ(fam.size(), oracle::choose(n - h, (n - h) / 2));
            EXPECT_TRUE(verify_packing(fam).pass());
        }
    EXPECT_THROW(path_family(3, 2), InvalidInput);
}

TEST(ThinFamily, DiamondAndNonThin) {
    auto fam = thin_family(diamond_poset(), 8);
    EXPECT_EQ(fam.size(), oracle::choose(6, 3));
    EXPECT_TRUE(verify_packing(fam).pass());
    auto ind = thin_family(diamond_poset(), 8, EmbeddingKind::induced);
    EXPECT_TRUE(verify_packing(ind).pass());
    EXPECT_THROW(thin_family(v_poset(), 6), InvalidInput);
}

TEST(VFamily, SizesMatchSum) {
    EXPECT_EQ(v_family(2).size(), 1U);
    EXPECT_EQ(v_family(4).size(), 2U);
    EXPECT_EQ(v_family(6).size(), 7U);
    for (int n = 2; n <= 40; ++n) {
        BigInt sum = 0;
        for (int i = 1; 4 * i <= n + 2; ++i) sum += oracle::choose(n - 2 * i, (n + 1) / 2 - 2 * i + 1);
        EXPECT_EQ(v_conjecture_sum(n), sum) << n;
        if (n <= 14) {
            auto fam = v_family(n);
            EXPECT_EQ(BigInt(fam.size()), sum);
            EXPECT_TRUE(verify_packing(fam).pass()) << n;
        }
    }
}

TEST(AuxiliaryInequality, HoldsUpToThirty) {
    for (int n = 0; n <= 30; ++n)
        for (int big_n = 0; big_n <= n; ++big_n)
            EXPECT_GE((BigInt(1) << big_n) * binomial(n - big_n, (n - big_n) / 2), binomial(n, n / 2));
}
