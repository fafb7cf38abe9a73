#include "lefschetz/hecke_algebra.hpp"
#include "lefschetz/selftest.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace lefschetz;
using E = HeckeElement;

TEST(Multiply, CrossRelationExamples) {
    const E s = E::s(2, 1), y1 = E::y(2, 1), y2 = E::y(2, 2), one = E::one(2);
    EXPECT_EQ(y1 * s, s * y2 + one);
    EXPECT_EQ(s * s, one);
    EXPECT_EQ(s * y2 * s, y1 - s);
}

TEST(Multiply, RelationFamiliesUpToRankFour) {
    for (std::size_t m = 1; m <= 4; ++m) {
        const E one = E::one(m);
        for (std::size_t i = 1; i < m; ++i) {
            const E s = E::s(m, i);
            EXPECT_EQ(s * s, one);
            EXPECT_EQ(s * E::y(m, i) - E::y(m, i + 1) * s, one);
            if (i + 1 < m) EXPECT_EQ(s * E::s(m, i + 1) * s, E::s(m, i + 1) * s * E::s(m, i + 1));
            for (std::size_t j = i + 2; j < m; ++j) EXPECT_EQ(s * E::s(m, j), E::s(m, j) * s);
            for (std::size_t j = 1; j <= m; ++j)
                if (j != i && j != i + 1) EXPECT_EQ(s * E::y(m, j), E::y(m, j) * s);
        }
        for (std::size_t i = 1; i <= m; ++i)
            for (std::size_t j = 1; j <= m; ++j) EXPECT_EQ(E::y(m, i) * E::y(m, j), E::y(m, j) * E::y(m, i));
    }
}

TEST(Multiply, AssociativeOnRandomTriples) {
    std::mt19937 rng(17);
    for (std::size_t m = 1; m <= 3; ++m)
        for (int t = 0; t < 20; ++t) {
            const E a = detail::random_element(m, rng), b = detail::random_element(m, rng), c = detail::random_element(m, rng);
            EXPECT_EQ((a * b) * c, a * (b * c)) << a.str() << " | " << b.str() << " | " << c.str();
        }
}

TEST(Star, Examples) {
    const E s = E::s(2, 1), y1 = E::y(2, 1);
    EXPECT_EQ(star(y1), y1 * Rational(-1) + s);
    EXPECT_EQ(star(s), s);
    EXPECT_EQ(star(star(y1 * s)), y1 * s);
}

TEST(Star, AntiHomomorphism) {
    std::mt19937 rng(23);
    for (std::size_t m = 1; m <= 3; ++m)
        for (int t = 0; t < 15; ++t) {
            const E a = detail::random_element(m, rng), b = detail::random_element(m, rng);
            EXPECT_EQ(star(a * b), star(b) * star(a));
            EXPECT_EQ(star(star(a)), a);
        }
}

TEST(IwahoriMatsumoto, Examples) {
    const E s = E::s(2, 1), y1 = E::y(2, 1);
    EXPECT_EQ(im_involution(s), s * Rational(-1));
    EXPECT_EQ(im_involution(y1), y1 * Rational(-1));
    EXPECT_EQ(im_involution(y1 * s), y1 * s);
}

TEST(IwahoriMatsumoto, Involution) {
    std::mt19937 rng(29);
    for (std::size_t m = 1; m <= 3; ++m)
        for (int t = 0; t < 15; ++t) {
            const E a = detail::random_element(m, rng), b = detail::random_element(m, rng);
            EXPECT_EQ(im_involution(a * b), im_involution(a) * im_involution(b));
            EXPECT_EQ(im_involution(im_involution(a)), a);
        }
}

TEST(ParabolicDecompose, Examples) {
    const E s = E::s(2, 1), y1 = E::y(2, 1), y2 = E::y(2, 2);
    auto parts = parabolic_decompose(y1 * s, 1, 1);
    ASSERT_EQ(parts.size(), 2u);
    EXPECT_EQ(parts.at(Permutation::simple(2, 1)), y2);
    EXPECT_EQ(parts.at(Permutation::identity(2)), E::one(2));

    auto inside = parabolic_decompose(s, 2, 0);
    ASSERT_EQ(inside.size(), 1u);
    EXPECT_EQ(inside.at(Permutation::identity(2)), s);

    auto y = parabolic_decompose(y2, 1, 1);
    ASSERT_EQ(y.size(), 1u);
    EXPECT_EQ(y.at(Permutation::identity(2)), y2);
}

TEST(ParabolicDecompose, Reassembles) {
    std::mt19937 rng(31);
    for (int t = 0; t < 20; ++t) {
        const E x = detail::random_element(3, rng);
        for (std::size_t m1 = 0; m1 <= 3; ++m1) {
            E sum(3);
            for (auto& [rep, part] : parabolic_decompose(x, m1, 3 - m1)) sum += E::group(rep) * part;
            EXPECT_EQ(sum, x);
        }
    }
}

TEST(Selftest, PassesAndCatchesInjectedFault) {
    SelftestOptions opt;
    opt.max_rank = 4;
    EXPECT_TRUE(run_selftest(opt).ok());
    opt.inject_fault = true;
    EXPECT_FALSE(run_selftest(opt).ok());
}
