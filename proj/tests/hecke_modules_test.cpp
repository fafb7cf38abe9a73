#include "lefschetz/acceptance.hpp"

#include <gtest/gtest.h>

using namespace lefschetz;

namespace {
Segment seg(Rational a, Rational b) { return {std::move(a), std::move(b)}; }
HeckeModule psi(Rational c) { return character_module(c); }
const Rational h = half();
}  // namespace

TEST(CharacterModule, Examples) {
    EXPECT_EQ(psi(0).y.front(), Matrix{{0}});
    EXPECT_EQ(psi(h).y.front(), Matrix{{h}});
    EXPECT_TRUE(check_relations(psi(3)));
}

TEST(Steinberg, Examples) {
    const auto st = steinberg(seg(0, 1));
    EXPECT_EQ(st.s.front(), Matrix{{-1}});
    EXPECT_EQ(st.y[0], Matrix{{0}});
    EXPECT_EQ(st.y[1], Matrix{{1}});
    EXPECT_TRUE(check_relations(st));
    const auto from_char = steinberg(segment_of({2, 0}));
    EXPECT_EQ(from_char.y[0], Matrix{{h}});
    EXPECT_EQ(from_char.y[1], Matrix{{3 * h}});
    EXPECT_TRUE(is_isomorphic(steinberg(seg(2, 2)), psi(2)));
}

TEST(Induce, TwoCharacters) {
    const auto p = induce(psi(1), psi(0));
    ASSERT_EQ(p.dim, 2u);
    EXPECT_TRUE(check_relations(p));
    // basis (1 (x) v, s (x) v); y_1 sends s (x) v to 0 * (s (x) v) + 1 (x) v
    EXPECT_EQ((p.y[0] * RationalVector{0, 1}), (RationalVector{1, 0}));
    const WeightTable expected{{{0, 1}, 1}, {{1, 0}, 1}};
    EXPECT_EQ(weights(p), expected);
}

TEST(Induce, UnlinkedFactorsCommute) {
    EXPECT_TRUE(is_isomorphic(induce(steinberg(seg(0, 0)), steinberg(seg(2, 2))),
                              induce(steinberg(seg(2, 2)), steinberg(seg(0, 0)))));
    EXPECT_FALSE(is_isomorphic(induce(psi(0), psi(1)), induce(psi(1), psi(0))));
}

TEST(Induce, DimensionFormula) {
    const std::vector<HeckeModule> pool = {psi(0), steinberg(seg(0, 1)), standard_module(Multisegment({seg(0, 0), seg(1, 1)})),
                                           unit_module()};
    for (auto& a : pool)
        for (auto& b : pool) {
            const auto p = induce(a, b);
            const mpz_class expected = a.dim * b.dim * factorial(static_cast<long>(a.m + b.m)) /
                                       (factorial(static_cast<long>(a.m)) * factorial(static_cast<long>(b.m)));
            EXPECT_EQ(mpz_class(static_cast<unsigned long>(p.dim)), expected);
            EXPECT_TRUE(check_relations(p));
        }
}

TEST(Induce, RespectsDimensionCap) {
    ScopedDimCap cap(10);
    EXPECT_THROW(standard_module(Multisegment({seg(0, 0), seg(1, 1), seg(2, 2), seg(3, 3)})), CapExceeded);
    EXPECT_NO_THROW(standard_module(Multisegment({seg(0, 0), seg(1, 1), seg(2, 2)})));
}

TEST(StandardModule, Examples) {
    EXPECT_TRUE(is_isomorphic(standard_module(Multisegment({seg(1, 1), seg(0, 0)})), induce(psi(1), psi(0))));
    EXPECT_EQ(standard_module(Multisegment({seg(0, 1), seg(-1, 0)})).dim, 6u);
    const auto unit = standard_module(Multisegment());
    EXPECT_EQ(unit.m, 0u);
    EXPECT_EQ(unit.dim, 1u);
}

TEST(Relations, CorruptedModuleFails) {
    auto p = induce(psi(0), psi(1));
    EXPECT_TRUE(check_relations(p));
    p.y[0](0, 0) += 1;
    EXPECT_FALSE(check_relations(p));
}

TEST(Weights, Examples) {
    EXPECT_EQ(weights(steinberg(seg(0, 1))), (WeightTable{{{0, 1}, 1}}));
    RationalVector content;
    for (auto& [w, k] : weights(standard_module(Multisegment({seg(0, 0), seg(1, 1)}))))
        for (std::size_t i = 0; i < k; ++i) {
            auto sorted = w;
            std::sort(sorted.begin(), sorted.end());
            EXPECT_EQ(sorted, (RationalVector{0, 1}));
        }
}

TEST(SmCharacter, Examples) {
    EXPECT_EQ(sm_character_decompose(steinberg(seg(0, 1))), (std::map<Partition, long>{{Partition({1, 1}), 1}}));
    EXPECT_EQ(sm_character_decompose(induce(psi(1), psi(0))),
              (std::map<Partition, long>{{Partition({2}), 1}, {Partition({1, 1}), 1}}));
    // induced sign characters: (1,1) x (1) gives (2,1) + (1,1,1)
    EXPECT_EQ(sm_character_decompose(induce(steinberg(seg(0, 1)), psi(5))),
              (std::map<Partition, long>{{Partition({2, 1}), 1}, {Partition({1, 1, 1}), 1}}));
}

TEST(Hom, Examples) {
    const auto st = steinberg(seg(0, 1));
    EXPECT_EQ(hom_dim(induce(psi(0), psi(1)), st), 1u);
    EXPECT_EQ(hom_dim(induce(psi(1), psi(0)), st), 0u);
    const auto p = standard_module(Multisegment({seg(0, 1), seg(1, 1)}));
    EXPECT_GE(hom_dim(p, p), 1u);
    EXPECT_TRUE(is_isomorphic(p, p));
}

TEST(SimpleQuotient, Examples) {
    const auto trivial_type = simple_quotient(induce(psi(1), psi(0)));
    ASSERT_EQ(trivial_type.dim, 1u);
    EXPECT_EQ(trivial_type.s.front(), Matrix{{1}});
    EXPECT_EQ(trivial_type.y[0], Matrix{{1}});
    EXPECT_EQ(trivial_type.y[1], Matrix{{0}});

    const auto sign_type = simple_quotient(induce(psi(0), psi(1)));
    EXPECT_TRUE(is_isomorphic(sign_type, steinberg(seg(0, 1))));

    const auto whole = standard_module(Multisegment({seg(0, 0), seg(2, 2)}));
    EXPECT_EQ(simple_quotient(whole).dim, 2u);
}

TEST(SimpleQuotient, AbsolutelyIrreducible) {
    for (auto& ms : acceptance::multisegments_from(acceptance::integer_segments(0, 2), 4)) {
        const auto st = simple_module(ms);
        EXPECT_TRUE(check_relations(st));
        const auto rep = irreducibility_report(st);
        EXPECT_TRUE(rep.irreducible) << ms.str();
        if (rep.algebra_dim) {
            EXPECT_EQ(*rep.algebra_dim, st.dim * st.dim);
            EXPECT_EQ(*rep.radical_dim, 0u);
        }
    }
}

TEST(SimpleModule, AgreesUnderDimensionCap) {
    std::size_t rebuilt = 0;
    for (auto& ms : acceptance::multisegments_from(acceptance::integer_segments(0, 2), 4)) {
        const auto direct = simple_module(ms);
        std::optional<HeckeModule> capped;
        {
            ScopedDimCap cap(8);
            try {
                capped = simple_module(ms);
            } catch (const CapExceeded&) {
                continue;
            }
        }
        if (multinomial_dim(normalize_order(ms)) > 8) ++rebuilt;
        EXPECT_TRUE(check_relations(*capped)) << ms.str();
        EXPECT_TRUE(is_isomorphic(*capped, direct)) << ms.str();
    }
    EXPECT_GT(rebuilt, 0u);
}

TEST(SimpleModule, SpehFitsUnderDefaultCap) {
    ScopedDimCap cap(400);
    const auto a61 = simple_module(speh(6, 1));
    EXPECT_EQ(a61.dim, 1u);
    EXPECT_TRUE(check_relations(a61));
}

TEST(Irreducibility, DetectsReducibleModule) {
    EXPECT_FALSE(is_absolutely_irreducible(induce(psi(1), psi(0))));
    EXPECT_FALSE(is_absolutely_irreducible(standard_module(Multisegment({seg(0, 1), seg(-1, 0)}))));
}

TEST(CompositionFactors, Examples) {
    const Multisegment ab({seg(0, 0), seg(1, 1)});
    EXPECT_EQ(composition_factors(standard_module(ab)), (CompositionTable{{ab, 1}, {Multisegment({seg(0, 1)}), 1}}));
    const Multisegment apart({seg(0, 0), seg(2, 2)});
    EXPECT_EQ(composition_factors(standard_module(apart)), (CompositionTable{{apart, 1}}));
    const Multisegment one({seg(0, 1)});
    EXPECT_EQ(composition_factors(steinberg(seg(0, 1))), (CompositionTable{{one, 1}}));
}

TEST(CompositionFactors, ConserveDimensionAndWeights) {
    for (auto& ms : acceptance::multisegments_from(acceptance::integer_segments(0, 2), 4)) {
        const auto std_mod = standard_module(ms);
        std::size_t dim = 0;
        WeightTable merged;
        for (auto& [f, k] : composition_factors(std_mod)) {
            EXPECT_GT(k, 0);
            const auto st = simple_module(f);
            dim += static_cast<std::size_t>(k) * st.dim;
            for (auto& [w, mult] : weights(st)) merged[w] += static_cast<std::size_t>(k) * mult;
        }
        EXPECT_EQ(dim, std_mod.dim) << ms.str();
        EXPECT_EQ(merged, weights(std_mod)) << ms.str();
    }
}

TEST(HermitianForm, Examples) {
    const auto zero = hermitian_form(psi(0));
    EXPECT_TRUE(zero.exists);
    EXPECT_TRUE(zero.unitary);
    EXPECT_FALSE(hermitian_form(psi(1)).exists);
    const auto speh21 = hermitian_form(simple_quotient(standard_module(speh(2, 1))));
    EXPECT_EQ(speh21.solution_dim, 1u);
    EXPECT_TRUE(speh21.unitary);
}

TEST(HermitianForm, NonUnitaryHasIndefiniteForm) {
    // St{[-1,0],[0,1]} ~ GL ladder with a form of mixed signature
    const auto f = hermitian_form(simple_module(Multisegment({seg(-1, -1), seg(1, 1)})));
    ASSERT_TRUE(f.unique());
    EXPECT_FALSE(f.unitary);
}

TEST(BzDerivative, Examples) {
    const auto st01 = steinberg(seg(0, 1));
    EXPECT_TRUE(is_isomorphic(bz_derivative(st01, trivial_partition(1)), steinberg(seg(1, 1))));
    const auto trivial_type = simple_module(Multisegment({seg(0, 0), seg(1, 1)}));
    const auto unit = bz_derivative(trivial_type, trivial_partition(2));
    EXPECT_EQ(unit.m, 0u);
    EXPECT_EQ(unit.dim, 1u);
    EXPECT_EQ(bz_derivative(trivial_type, sign_partition(2)).dim, 0u);
}

TEST(BzDerivative, HighestDerivativeShrinks) {
    for (auto& ms : acceptance::multisegments_from(acceptance::integer_segments(0, 2), 4)) {
        const auto d = bz_derivative(simple_module(ms), trivial_partition(static_cast<int>(ms.size())));
        EXPECT_TRUE(check_relations(d));
        EXPECT_TRUE(is_isomorphic(d, simple_module(left_shrink(ms)))) << ms.str();
    }
}

TEST(ImTwist, Examples) {
    EXPECT_TRUE(is_isomorphic(im_twist(psi(2)), psi(-2)));
    const auto st = im_twist(steinberg(seg(1, 2)));
    EXPECT_EQ(st.s.front(), Matrix{{1}});
    EXPECT_EQ(st.y[0], Matrix{{-1}});
    EXPECT_EQ(st.y[1], Matrix{{-2}});
    const auto p = standard_module(Multisegment({seg(0, 1), seg(1, 1)}));
    const auto back = im_twist(im_twist(p));
    EXPECT_EQ(back.s, p.s);
    EXPECT_EQ(back.y, p.y);
}

TEST(StarDual, RelationsAndInvolution) {
    const auto p = standard_module(Multisegment({seg(0, 1), seg(1, 1)}));
    const auto d = star_dual(p);
    EXPECT_TRUE(check_relations(d));
    EXPECT_TRUE(is_isomorphic(star_dual(d), p));
}

TEST(MultiplicityOne, SmallSweep) {
    for (auto& ms : multisegments_with_content({0, 1, 2}))
        for (int i = 1; i <= 3; ++i)
            for (bool sign : {false, true}) {
                const auto d = bz_derivative(simple_module(ms), sign ? sign_partition(i) : trivial_partition(i));
                if (d.dim == 0) continue;
                for (auto& other : acceptance::multisegments_from(acceptance::integer_segments(0, 2), 3 - i)) {
                    if (other.total() != 3 - i) continue;
                    EXPECT_LE(hom_dim(d, simple_module(other)), 1u);
                }
            }
}
