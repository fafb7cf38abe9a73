#include "lefschetz/gl_params.hpp"

#include <gtest/gtest.h>

using namespace lefschetz;

namespace {
const Rational h = half();

std::vector<GLParam> grid() {
    std::vector<GLParam> out;
    const RationalVector shifts = {-1, -h, 0, h, 1};
    for (auto& r1 : shifts)
        for (long m1 = -1; m1 <= 2; ++m1)
            for (auto& r2 : shifts)
                for (long m2 = -1; m2 <= 2; ++m2) out.push_back(GLParam({r1 + m1, r2 + m2}, {r1, r2}));
    return out;
}
}  // namespace

TEST(Height, Examples) {
    EXPECT_EQ(height(GLParam({2, 1}, {1, 0})), 2);
    EXPECT_FALSE(height(GLParam({0, 1}, {1, 0})));
    EXPECT_EQ(height(GLParam({h, 3}, {h, 3})), 0);
}

TEST(Height, HermitianDualPreservesHeight) {
    for (auto& p : grid()) EXPECT_EQ(height(hermitian_dual(p)), height(p)) << p.str();
}

TEST(Thickened, Examples) {
    EXPECT_TRUE(is_thickened(GLParam({2, 1}, {1, 0})));
    EXPECT_FALSE(is_thickened(GLParam({2, 0}, {1, 0})));
    EXPECT_TRUE(is_thickened(GLParam({5}, {2})));
}

TEST(SortToStandard, Examples) {
    EXPECT_EQ(sort_to_standard(GLParam({1, 2}, {0, 1})), GLParam({2, 1}, {1, 0}));
    EXPECT_EQ(sort_to_standard(GLParam({2, 1}, {1, 0})), GLParam({2, 1}, {1, 0}));
    EXPECT_EQ(sort_to_standard(GLParam({1, 1}, {-1, 0})), GLParam({1, 1}, {0, -1}));
}

TEST(SortToStandard, SameMultisegment) {
    for (auto& p : grid()) {
        if (!height(p)) continue;
        const auto q = sort_to_standard(p);
        EXPECT_EQ(from_params(q.left, q.right), from_params(p.left, p.right)) << p.str();
    }
}

TEST(HermitianDual, Examples) {
    EXPECT_EQ(hermitian_dual(GLParam({2, 1}, {1, 0})), GLParam({-1, 0}, {-2, -1}));
    EXPECT_EQ(hermitian_dual(GLParam({h}, {-h})), GLParam({h}, {-h}));
}

TEST(Twist, Examples) {
    EXPECT_EQ(chi_twist(GLParam({1, 0}, {1, 0}), 1), GLParam({1, 0}, {0, -1}));
    EXPECT_EQ(chi_twist(GLParam({1, 0}, {1, 0}), 0), GLParam({1, 0}, {1, 0}));
    EXPECT_EQ(height(chi_twist(GLParam({1, 0}, {1, 0}), 1)), 2);
}

TEST(Thicken, Examples) {
    EXPECT_EQ(thicken(GLParam({2, 1}, {1, 0})).k, 0);
    auto t = thicken(GLParam({0, 1}, {1, 0}));
    EXPECT_EQ(t.k, 1);
    EXPECT_EQ(t.param.right, (RationalVector{0, -1}));
    EXPECT_EQ(thicken(GLParam({0}, {5})).k, 5);
}

TEST(Thicken, Minimal) {
    for (auto& p : grid()) {
        const auto t = thicken(p);
        EXPECT_TRUE(is_thickened(t.param));
        if (t.k >= 1) EXPECT_FALSE(is_thickened(chi_twist(p, t.k - 1))) << p.str();
    }
}

TEST(PairReducibility, Examples) {
    EXPECT_TRUE(pair_reducibility({2, 1}, {1, 0}));
    EXPECT_FALSE(pair_reducibility({1, 0}, {0, 0}));
    EXPECT_FALSE(pair_reducibility({1, 0}, {1, 0}));
}

// Linked segments always give a reducible pair; the converse fails once the
// segments are separated by a gap (e.g. chi_{2,1} and chi_{0,-1}).
TEST(PairReducibility, LinkedImpliesReducible) {
    const RationalVector values = {-2, -3 * h, -1, -h, 0, h, 1, 3 * h, 2};
    std::size_t gaps = 0;
    for (auto& a1 : values)
        for (auto& b1 : values)
            for (auto& a2 : values)
                for (auto& b2 : values) {
                    if (!is_integer(a1 - b1) || !is_integer(a2 - b2) || a1 <= b1 || a2 <= b2) continue;
                    const Character x{a1, b1}, y{a2, b2};
                    const bool linked = is_linked(segment_of(x), segment_of(y));
                    if (linked) EXPECT_TRUE(pair_reducibility(x, y));
                    gaps += !linked && pair_reducibility(x, y);
                }
    EXPECT_TRUE(pair_reducibility({2, 1}, {0, -1}));
    EXPECT_FALSE(is_linked(segment_of({2, 1}), segment_of({0, -1})));
    EXPECT_GT(gaps, 0u);
}

TEST(FiniteDimensional, Examples) {
    EXPECT_TRUE(is_finite_dimensional(GLParam({2, 1}, {1, 0})));
    EXPECT_FALSE(is_finite_dimensional(GLParam({1, 1}, {1, 0})));
    EXPECT_TRUE(is_finite_dimensional(GLParam({3 * h, h}, {-h, -3 * h})));
}

TEST(KTypes, Examples) {
    EXPECT_EQ(k_type_multiplicity(GLParam({1, 0}, {0, 0}), {1, 0}, KTypeMode::principal_series), 1);
    EXPECT_EQ(k_type_multiplicity(GLParam({1, 0}, {0, -1}), {1, 1}, KTypeMode::finite_dimensional), 1);
    EXPECT_EQ(k_type_multiplicity(GLParam({1, 0}, {0, -1}), {2, 0}, KTypeMode::finite_dimensional), 0);
}

// The lowest K-type lambda_L - lambda_R occurs exactly once.
TEST(KTypes, ExtremalOnce) {
    const std::vector<GLParam> params = {GLParam({2, 1}, {1, 0}), GLParam({3, 1}, {0, -1}), GLParam({3 * h, h}, {-h, -3 * h}),
                                         GLParam({2, 1, 0}, {1, 0, -1}), GLParam({4, 2, 0}, {0, -1, -3})};
    for (auto& p : params) {
        auto sl = sorted_descending(p.left), sr = sorted_descending(p.right);
        RationalVector gamma(p.rank());
        for (std::size_t i = 0; i < p.rank(); ++i) gamma[i] = sl[i] - sr[i];
        gamma = sorted_descending(gamma);
        EXPECT_EQ(k_type_multiplicity(p, gamma, KTypeMode::finite_dimensional), 1) << p.str();
    }
}

TEST(CharacterFormula, RankTwo) {
    const auto terms = char_formula_finite_dim({2, 1});
    ASSERT_EQ(terms.size(), 2u);
    EXPECT_EQ(terms[0].sign, 1);
    EXPECT_EQ(terms[0].param, GLParam({2, 1}, {-1, -2}));
    EXPECT_EQ(terms[1].sign, -1);
    EXPECT_EQ(terms[1].param, GLParam({2, 1}, {-2, -1}));
    const auto one = char_formula_finite_dim({3});
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0].param, GLParam({3}, {-3}));
}

TEST(CharacterFormula, RankThreeSixTerms) {
    const auto terms = char_formula_finite_dim({7, 3, -3});
    ASSERT_EQ(terms.size(), 6u);
    EXPECT_EQ(terms[0].param, GLParam({7, 3, -3}, {3, -3, -7}));
    EXPECT_EQ(terms[0].sign, 1);
    int sum = 0;
    for (auto& t : terms) sum += t.sign;
    EXPECT_EQ(sum, 0);
}

TEST(SpehParam, Examples) {
    EXPECT_EQ(speh_param(1, 1), GLParam({h}, {-h}));
    EXPECT_EQ(speh_param(2, 1), GLParam({1, 0}, {0, -1}));
    EXPECT_EQ(speh_param(2, 2), GLParam({3 * h, h}, {-h, -3 * h}));
    for (long n = 1; n <= 4; ++n)
        for (long d = 1; d <= 4; ++d) {
            const auto p = speh_param(n, d);
            EXPECT_EQ(from_params(p.left, p.right), speh(n, d));
        }
}
