#include <gtest/gtest.h>

#include "dmc/design.hpp"
#include "dmc/lta.hpp"
#include "support.hpp"

namespace dmc {
namespace {

using test::mono;

TEST(Antichain, ElevenAtDegreeThree) {
    auto a = antichain(8, 3, 11);
    std::vector<std::string> names;
    for (const auto& f : a) names.push_back(f.to_string());
    std::sort(names.begin(), names.end());
    EXPECT_EQ(names, (std::vector<std::string>{"x0x4x7", "x0x5x6", "x1x3x7", "x1x4x6", "x2x3x6", "x2x4x5"}));
    EXPECT_TRUE(antichain(8, 3, 2).empty());
    auto low = antichain(8, 3, 3);
    ASSERT_EQ(low.size(), 1U);
    EXPECT_EQ(low[0], mono("x0x1x2", 8));
}

TEST(Antichain, MembersAreTiedAndIncomparable) {
    for (int m = 2; m <= 8; ++m)
        for (int r = 1; r <= m; ++r) {
            int lo = r * (r - 1) / 2;
            int hi = lo + r * (m - r);
            for (int l = lo; l <= hi; ++l) {
                auto a = antichain(m, r, l);
                ASSERT_FALSE(a.empty());
                for (const auto& f : a) {
                    ASSERT_EQ(lambda(f).total, l - lo);
                    for (const auto& g : a) {
                        ASSERT_TRUE(std::is_eq(cmp_wmin(f, g)));
                        if (f != g) {
                            ASSERT_FALSE(leq(f, g)) << f.to_string() << " " << g.to_string();
                        }
                    }
                }
            }
        }
}

TEST(CmpWmin, Examples) {
    EXPECT_TRUE(std::is_lt(cmp_wmin(mono("x0x1x2", 8), mono("x5x6x7", 8))));
    EXPECT_TRUE(std::is_gt(cmp_wmin(mono("x5x6x7", 8), mono("x0x1x2", 8))));
    EXPECT_TRUE(std::is_eq(cmp_wmin(mono("x1x3x7", 8), mono("x1x3x7", 8))));
    EXPECT_THROW(cmp_wmin(mono("x0", 8), mono("x0x1", 8)), std::invalid_argument);
}

TEST(Score, ElevenAtDegreeThree) {
    EXPECT_EQ(type1_refinement_score(mono("x1x3x7", 8)), BigCount(56));
    EXPECT_EQ(type1_refinement_score(mono("x1x4x6", 8)), BigCount(72));
    EXPECT_EQ(type1_refinement_score(mono("x2x3x6", 8)), BigCount(72));
    EXPECT_EQ(type1_refinement_score(mono("x2x4x5", 8)), BigCount(72));
    EXPECT_EQ(type1_refinement_score(mono("x0x4x7", 8)), BigCount(0));
    EXPECT_EQ(type1_refinement_score(mono("x0x5x6", 8)), BigCount(0));
}

TEST(Score, EqualsRestrictedSelfOrbitInFullSet) {
    for (int m = 2; m <= 8; ++m)
        for (int r = 1; r <= m; ++r) {
            auto full = rm_set(r, m);
            for (const auto& f : monomials_of_degree(m, r))
                ASSERT_EQ(type1_refinement_score(f) * pow2(r),
                          restricted_self_I_size(f, Monomial::one(m), full))
                    << f.to_string();
        }
}

TEST(DesignCompare, TableRowsWithoutCensus) {
    DesignOptions opt;
    opt.profile.type2_census = false;
    std::vector<Monomial> cands;
    for (const char* s : {"x0x4x7", "x0x5x6", "x1x3x7", "x1x4x6", "x2x3x6", "x2x4x5"}) cands.push_back(mono(s, 8));
    auto rep = design_compare(8, cands, opt);
    ASSERT_EQ(rep.candidates.size(), 6U);
    EXPECT_EQ(rep.candidates[0].top_stratum, 18U);
    EXPECT_EQ(rep.candidates[2].top_stratum, 24U);
    const std::uint64_t wmin[] = {7000, 5208, 9240, 8984, 7960, 7064};
    for (std::size_t k = 0; k < 6; ++k) {
        const auto& c = rep.candidates[k];
        ASSERT_TRUE(c.error.empty()) << c.error;
        EXPECT_EQ(*c.profile.entries[0].combined(), BigCount(wmin[k])) << c.f_max.to_string();
        std::size_t below = 0;
        for (const auto& g : monomials_of_degree(8, 3)) below += test::brute_leq(g, c.f_max);
        EXPECT_EQ(c.top_stratum, below) << c.f_max.to_string();
        EXPECT_EQ(c.lambda_total, 8);
    }
    // ties on lambda are split by score, zero scores first
    ASSERT_EQ(rep.ranking.size(), 6U);
    EXPECT_EQ(rep.candidates[rep.ranking[0]].score, BigCount(0));
    EXPECT_EQ(rep.candidates[rep.ranking[5]].score, BigCount(72));
    EXPECT_FALSE(rep.notes.empty());
    auto table = render_design_table(rep);
    EXPECT_NE(table.find("x1x3x7"), std::string::npos);
    EXPECT_NE(table.find("+?"), std::string::npos);
}

TEST(DesignCompare, SingleCodeDegenerates) {
    DesignOptions opt;
    opt.profile.type2_census = false;
    auto rep = design_compare(std::vector<DecreasingSet>{rm_set(2, 5)}, opt);
    ASSERT_EQ(rep.candidates.size(), 1U);
    EXPECT_EQ(rep.ranking, std::vector<std::size_t>{0});
    EXPECT_EQ(rep.candidates[0].f_max, mono("x3x4", 5));
    EXPECT_THROW(design_compare(8, {mono("x0x1", 8)}, opt), std::invalid_argument);
}

}  // namespace
}  // namespace dmc
