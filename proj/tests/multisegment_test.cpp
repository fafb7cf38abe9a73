#include "lefschetz/multisegment.hpp"

#include <gtest/gtest.h>

using namespace lefschetz;

namespace {
Segment seg(Rational a, Rational b) { return {std::move(a), std::move(b)}; }
const Rational h = half();

std::vector<Multisegment> small_multisegments() {
    std::vector<Multisegment> out;
    for (long a1 = -1; a1 <= 2; ++a1)
        for (long b1 = a1; b1 <= 2; ++b1)
            for (long a2 = -1; a2 <= 2; ++a2)
                for (long b2 = a2 - 1; b2 <= 2; ++b2)
                    for (long a3 = 0; a3 <= 1; ++a3) out.emplace_back(std::vector<Segment>{seg(a1, b1), seg(a2, b2), seg(a3, a3)});
    return out;
}
}  // namespace

TEST(Segment, Linking) {
    EXPECT_TRUE(is_linked(seg(0, 1), seg(1, 2)));
    EXPECT_TRUE(precedes(seg(0, 1), seg(1, 2)));
    EXPECT_FALSE(precedes(seg(1, 2), seg(0, 1)));
    EXPECT_FALSE(is_linked(seg(0, 2), seg(1, 1)));
    EXPECT_TRUE(is_linked(seg(h, h), seg(-h, -h)));
    EXPECT_FALSE(is_linked(seg(0, 0), seg(h, h)));
    EXPECT_FALSE(is_linked(seg(0, 0), seg(2, 2)));
}

TEST(Segment, RejectsNonIntegralGap) { EXPECT_THROW(seg(0, h), ContractViolation); }

TEST(NormalizeOrder, Examples) {
    EXPECT_EQ(normalize_order(Multisegment({seg(0, 0), seg(1, 1)})), (std::vector<Segment>{seg(1, 1), seg(0, 0)}));
    EXPECT_EQ(normalize_order(Multisegment({seg(-1, 0), seg(0, 1)})), (std::vector<Segment>{seg(0, 1), seg(-1, 0)}));
    EXPECT_TRUE(normalize_order(Multisegment()).empty());
}

TEST(NormalizeOrder, NeverPrecedingNeighbours) {
    for (auto& ms : small_multisegments()) {
        const auto s = normalize_order(ms);
        for (std::size_t i = 0; i + 1 < s.size(); ++i) EXPECT_FALSE(precedes(s[i], s[i + 1])) << ms.str();
    }
}

TEST(FromParams, Examples) {
    EXPECT_EQ(from_params({2, 1}, {1, 0}), Multisegment({seg(3 * h, 3 * h), seg(h, h)}));
    EXPECT_TRUE(from_params({1, 1}, {1, 1}).empty());
    EXPECT_EQ(from_params({3 * h, h}, {-h, -3 * h}), Multisegment({seg(0, 1), seg(-1, 0)}));
}

TEST(LeftShrink, Examples) {
    EXPECT_EQ(left_shrink(Multisegment({seg(0, 1), seg(0, 0)})), Multisegment({seg(1, 1)}));
    EXPECT_EQ(left_shrink(Multisegment({seg(0, 1)})), Multisegment({seg(1, 1)}));
    EXPECT_TRUE(left_shrink(Multisegment()).empty());
}

TEST(LeftShrink, DropsOnePerSegment) {
    for (auto& ms : small_multisegments())
        EXPECT_EQ(left_shrink(ms).total(), ms.total() - static_cast<long>(ms.size())) << ms.str();
}

TEST(Classify, DiracExamples) {
    EXPECT_FALSE(classify(Multisegment({seg(3, 4), seg(0, 1), seg(-1, 0), seg(-4, -3)})).is_twisted_elliptic);
    auto c = classify(Multisegment({seg(0, 7), seg(-3, 4), seg(-4, 3), seg(-7, 0)}));
    ASSERT_TRUE(c.is_twisted_elliptic);
    EXPECT_EQ(*c.temp_witness, Multisegment({seg(-7, 7), seg(-4, 4), seg(-3, 3), seg(0, 0)}));
    EXPECT_TRUE(classify(Multisegment({seg(0, 1), seg(-1, 0)})).is_ladder);
}

TEST(Classify, ContentSizeIsTotal) {
    for (auto& ms : small_multisegments()) EXPECT_EQ(static_cast<long>(classify(ms).content.size()), ms.total());
}

TEST(Speh, Examples) {
    EXPECT_EQ(speh(1, 1), Multisegment({seg(0, 0)}));
    EXPECT_EQ(speh(2, 2), Multisegment({seg(0, 1), seg(-1, 0)}));
    EXPECT_EQ(speh(2, 1), Multisegment({seg(h, h), seg(-h, -h)}));
}

// brute force: try every multisegment of the form {[-c, c]} with the same content
TEST(Speh, LadderAndSymmetricWitness) {
    for (long n = 1; n <= 8; ++n)
        for (long d = 1; n * d <= 8; ++d) {
            const auto ms = speh(n, d);
            EXPECT_TRUE(is_ladder(ms));
            if ((n - d) % 2 != 0) continue;
            const auto c = classify(ms);
            bool found = false;
            for (auto& cand : multisegments_with_content(c.content)) {
                bool symmetric = true;
                for (auto& s : cand.segments()) symmetric &= s.a == -s.b;
                found |= symmetric;
            }
            EXPECT_EQ(c.is_twisted_elliptic, found) << "a(" << n << "," << d << ")";
            EXPECT_TRUE(c.is_twisted_elliptic);
        }
}

TEST(DiracSeries, Examples) {
    EXPECT_TRUE(dirac_series_test({}, {{1, 1}}));
    EXPECT_FALSE(dirac_series_test({{1, 2}, {1, 2}}, {}));
    EXPECT_TRUE(dirac_series_test({{2, 4}, {1, 1}}, {}));
}

TEST(Closure, Examples) {
    EXPECT_EQ(intersection_union_closure(Multisegment({seg(0, 0), seg(1, 1)})),
              (std::set<Multisegment>{Multisegment({seg(0, 0), seg(1, 1)}), Multisegment({seg(0, 1)})}));
    EXPECT_EQ(intersection_union_closure(Multisegment({seg(0, 0), seg(2, 2)})).size(), 1u);
    EXPECT_TRUE(intersection_union_closure(Multisegment({seg(0, 1), seg(1, 2)})).contains(Multisegment({seg(0, 2), seg(1, 1)})));
}

TEST(Closure, PreservesContent) {
    for (auto& ms : small_multisegments())
        for (auto& x : intersection_union_closure(ms)) EXPECT_EQ(x.content(), ms.content());
}

TEST(ContentEnumeration, CountsAndContent) {
    EXPECT_EQ(multisegments_with_content({0, 1}).size(), 2u);
    EXPECT_EQ(multisegments_with_content({0, 1, 2}).size(), 4u);
    for (auto& ms : multisegments_with_content({0, 0, 1, 2})) EXPECT_EQ(ms.content(), (RationalVector{0, 0, 1, 2}));
}
