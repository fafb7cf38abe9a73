#include "lefschetz/acceptance.hpp"
#include "lefschetz/json_io.hpp"

#include <gtest/gtest.h>

using namespace lefschetz;

namespace {
const Rational h = half();
GLParam chi(Rational a, Rational b) { return GLParam({std::move(a)}, {std::move(b)}); }
}  // namespace

TEST(GammaStandard, Examples) {
    auto one = gamma_standard(chi(2, 0), 2);
    ASSERT_FALSE(one.zero());
    EXPECT_TRUE(is_isomorphic(*one.module, steinberg(Segment(h, 3 * h))));

    auto two = gamma_standard(GLParam({2, 1}, {1, 0}), 2);
    ASSERT_FALSE(two.zero());
    EXPECT_EQ(two.module->dim, 2u);
    EXPECT_EQ(*two.multisegment, Multisegment({Segment(3 * h, 3 * h), Segment(h, h)}));
    EXPECT_TRUE(is_isomorphic(*two.module, induce(character_module(3 * h), character_module(h))));

    EXPECT_TRUE(gamma_standard(GLParam({2, 1}, {1, 0}), 3).zero());
}

TEST(GammaDim, Examples) {
    EXPECT_EQ(gamma_dim(GLParam({2, 1}, {0, 0}), 3), 3);
    EXPECT_EQ(gamma_dim(GLParam({1, 1}, {0, 0}), 2), 2);
    for (std::size_t m = 0; m < 5; ++m) EXPECT_EQ(gamma_dim(GLParam({0, 1}, {1, 0}), m), 0);
}

TEST(GammaIrreducible, Examples) {
    auto a21 = gamma_irreducible(speh_param(2, 1), 2);
    ASSERT_FALSE(a21.zero());
    EXPECT_EQ(a21.module->dim, 1u);
    EXPECT_EQ(a21.module->s.front(), Matrix{{1}});
    EXPECT_EQ(a21.module->y[0], Matrix{{h}});
    EXPECT_EQ(a21.module->y[1], Matrix{{-h}});

    // [3/2] and [1/2] are linked, so the image is the trivial-type quotient
    auto linked = gamma_irreducible(GLParam({2, 1}, {1, 0}), 2);
    EXPECT_EQ(linked.module->dim, 1u);
    EXPECT_EQ(linked.module->s.front(), Matrix{{1}});

    auto unit = gamma_irreducible(chi(h, h), 0);
    ASSERT_FALSE(unit.zero());
    EXPECT_EQ(unit.module->m, 0u);
    EXPECT_EQ(unit.module->dim, 1u);
}

TEST(GammaIrreducible, HermitianDuality) {
    for (auto& p : acceptance::small_rank_params()) {
        const auto m = static_cast<std::size_t>(*height(p));
        EXPECT_TRUE(is_isomorphic(*gamma_irreducible(hermitian_dual(p), m).module, star_dual(*gamma_irreducible(p, m).module)))
            << p.str();
    }
}

TEST(ParabolicCompat, Examples) {
    EXPECT_TRUE(check_parabolic_compat(chi(2, 0), chi(1, 0)));
    auto both = gamma_standard(GLParam({2, 1}, {0, 0}), 3);
    EXPECT_TRUE(is_isomorphic(*both.module, induce(steinberg(Segment(h, 3 * h)), steinberg(Segment(h, h)))));
    EXPECT_TRUE(check_parabolic_compat(chi(1, 0), chi(2, 0)));
    EXPECT_TRUE(check_parabolic_compat(chi(0, 1), chi(2, 1)));
    EXPECT_TRUE(gamma_standard(concat(chi(0, 1), chi(2, 1)), 1).zero());
}

TEST(BzCompat, Examples) {
    EXPECT_TRUE(check_bz_compat(chi(1, 0), trivial_partition(1), 0));
    EXPECT_TRUE(check_bz_compat(GLParam({2, 1}, {1, 0}), trivial_partition(1), 1));
    EXPECT_TRUE(check_bz_compat(GLParam({3, 1}, {1, 0}), sign_partition(1), 2));
    EXPECT_TRUE(check_bz_compat(speh_param(2, 2), trivial_partition(2), 2));
    EXPECT_TRUE(check_bz_compat(chi(3, 0), sign_partition(2), 1));
    EXPECT_TRUE(check_bz_compat(chi(3, 0), trivial_partition(2), 1));
}

TEST(BzCompat, GlSideNeedsFiniteDimensional) {
    EXPECT_THROW(tensor_summands(GLParam({1, 1}, {1, 0}), trivial_partition(1)), NotComputable);
}

TEST(SchurWeyl, SpehExamples) {
    auto two = schur_weyl_sides(speh_param(2, 1), Partition({2}));
    EXPECT_EQ(two.s_side, 1);
    EXPECT_EQ(two.k_side, 1);
    auto ones = schur_weyl_sides(speh_param(2, 1), Partition({1, 1}));
    EXPECT_EQ(ones.s_side, 0);
    EXPECT_EQ(ones.k_side, 0);
}

TEST(SchurWeyl, PrincipalSeries) {
    const GLParam p({1, 1}, {0, 0});
    for (auto& alpha : partitions_of(2)) {
        auto sides = schur_weyl_sides(p, alpha, SchurWeylMode::principal_series);
        EXPECT_EQ(sides.s_side, 1);
        EXPECT_EQ(sides.k_side, 1);
    }
}

TEST(DetectReducibility, Examples) {
    EXPECT_EQ(detect_reducibility(chi(2, 1), chi(1, 0)).verdict, Verdict::reducible);
    EXPECT_EQ(detect_reducibility(chi(h, -h), chi(0, 0)).verdict, Verdict::irreducible);
    EXPECT_EQ(detect_reducibility(chi(1, 1), chi(-h, -h)).verdict, Verdict::irreducible);
}

// chi_{2,1} x chi_{0,-1}: p = q = 2, so the GL criterion says reducible even
// though the transferred segments are unlinked; the thickened computation agrees.
TEST(DetectReducibility, AgreesWithGlCriterionAcrossGap) {
    EXPECT_TRUE(pair_reducibility({2, 1}, {0, -1}));
    EXPECT_EQ(detect_reducibility(chi(2, 1), chi(0, -1)).verdict, Verdict::reducible);
}

TEST(DetectReducibility, RankCap) {
    reducibility_rank_cap().store(3);
    EXPECT_THROW(detect_reducibility(chi(2, 1), chi(0, -1)), CapExceeded);
    reducibility_rank_cap().store(std::numeric_limits<std::size_t>::max());
}

TEST(DiracFiniteDim, Examples) {
    auto one = dirac_cohomology_finite_dim({3});
    EXPECT_EQ(one.k_type, (RationalVector{6}));
    EXPECT_EQ(one.multiplicity, 1);
    auto two = dirac_cohomology_finite_dim({3 * h, h});
    EXPECT_EQ(two.k_type, (RationalVector{5 * h, 3 * h}));
    EXPECT_EQ(two.multiplicity, 2);
    auto three = dirac_cohomology_finite_dim({7, 3, -3});
    EXPECT_EQ(three.k_type, (RationalVector{13, 6, -5}));
    EXPECT_EQ(three.multiplicity, 2);
}

TEST(CharacterIdentity, LadderSurvives) {
    const auto terms = char_formula_finite_dim({2, 1});
    std::map<Multisegment, long> sum;
    for (auto& t : terms) {
        const auto m = static_cast<std::size_t>(*height(t.param));
        auto g = gamma_standard(t.param, m);
        for (auto& [ms, k] : composition_factors(*g.module)) sum[ms] += t.sign * k;
    }
    std::erase_if(sum, [](const auto& kv) { return kv.second == 0; });
    ASSERT_EQ(sum.size(), 1u);
    EXPECT_TRUE(is_ladder(sum.begin()->first));
    EXPECT_EQ(sum.begin()->second, 1);
}

TEST(Json, RoundTrips) {
    const auto p = standard_module(Multisegment({Segment(0, 1), Segment(1, 1)}));
    const auto back = io::module_from(io::to_json(p));
    EXPECT_EQ(back.s, p.s);
    EXPECT_EQ(back.y, p.y);
    EXPECT_EQ(io::param_from(io::to_json(speh_param(2, 1))), speh_param(2, 1));
    const Multisegment ms({Segment(-h, 3 * h), Segment(0, 0)});
    EXPECT_EQ(io::multisegment_from(io::to_json(ms)), ms);
    EXPECT_THROW(io::rational_from(io::json("x/2")), io::InputError);
    EXPECT_EQ(io::to_json(gamma_standard(GLParam({2, 1}, {1, 0}), 3))["zero"], true);
}
