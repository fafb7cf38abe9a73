#pragma once

#include "lefschetz/module_analysis.hpp"

#include <random>

namespace lefschetz {

struct SelftestOptions {
    std::size_t max_rank = 4;
    unsigned seed = 7;
    std::size_t fuzz_rounds = 12;
    // corrupts one module matrix; the run must then fail
    bool inject_fault = false;
};

struct SelftestReport {
    std::size_t checks = 0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

namespace detail {

inline HeckeElement random_element(std::size_t m, std::mt19937& rng) {
    std::uniform_int_distribution<int> coeff(-3, 3), expo(0, 2), terms(1, 3);
    const auto group = all_permutations(m);
    std::uniform_int_distribution<std::size_t> pick(0, group.size() - 1);
    HeckeElement x(m);
    for (int t = terms(rng); t > 0; --t) {
        Exponents alpha(m);
        for (auto& a : alpha) a = expo(rng);
        const int c = coeff(rng);
        if (c) x += HeckeElement::monomial(group[pick(rng)], alpha, c);
    }
    return x;
}

}  // namespace detail

inline SelftestReport run_selftest(const SelftestOptions& opt) {
    SelftestReport rep;
    auto expect = [&](bool ok, std::string what) {
        ++rep.checks;
        if (!ok) rep.violations.push_back(std::move(what));
    };
    using E = HeckeElement;
    for (std::size_t m = 1; m <= opt.max_rank; ++m) {
        const std::string at = " m=" + std::to_string(m);
        const E one = E::one(m);
        for (std::size_t i = 1; i < m; ++i) {
            const E s = E::s(m, i);
            expect(s * s == one, "s_square(" + std::to_string(i) + ")" + at);
            expect(s * E::y(m, i) - E::y(m, i + 1) * s == one, "cross(" + std::to_string(i) + ")" + at);
            if (i + 1 < m) {
                const E t = E::s(m, i + 1);
                expect(s * t * s == t * s * t, "braid(" + std::to_string(i) + ")" + at);
            }
            for (std::size_t j = 1; j <= m; ++j)
                if (j != i && j != i + 1) expect(s * E::y(m, j) == E::y(m, j) * s, "s_y_commute(" + std::to_string(i) + "," + std::to_string(j) + ")" + at);
        }
        for (std::size_t i = 1; i <= m; ++i)
            for (std::size_t j = i + 1; j <= m; ++j)
                expect(E::y(m, i) * E::y(m, j) == E::y(m, j) * E::y(m, i), "y_commute" + at);
    }

    std::mt19937 rng(opt.seed);
    for (std::size_t m = 1; m <= std::min<std::size_t>(opt.max_rank, 4); ++m) {
        const std::string at = " m=" + std::to_string(m);
        for (std::size_t r = 0; r < opt.fuzz_rounds; ++r) {
            const E a = detail::random_element(m, rng), b = detail::random_element(m, rng), c = detail::random_element(m, rng);
            expect((a * b) * c == a * (b * c), "associativity" + at);
            expect(star(star(a)) == a, "star_involution" + at);
            expect(star(a * b) == star(b) * star(a), "star_antimultiplicative" + at);
            expect(im_involution(im_involution(a)) == a, "im_involution" + at);
            expect(im_involution(a * b) == im_involution(a) * im_involution(b), "im_multiplicative" + at);
        }
    }

    std::vector<HeckeModule> modules;
    for (long len = 1; len <= 3 && static_cast<std::size_t>(len) <= opt.max_rank; ++len)
        modules.push_back(steinberg(Segment(Rational(0), Rational(len - 1))));
    if (opt.max_rank >= 3) {
        modules.push_back(standard_module(Multisegment({Segment(0, 1), Segment(1, 1)})));
        modules.push_back(simple_module(Multisegment({Segment(0, 0), Segment(1, 1), Segment(2, 2)})));
    }
    if (opt.max_rank >= 4) modules.push_back(standard_module(Multisegment({Segment(0, 1), Segment(-1, 0)})));
    if (opt.inject_fault && !modules.empty()) {
        HeckeModule& victim = modules.back();
        victim.y.front()(0, 0) += 1;
    }
    for (auto& p : modules) {
        for (auto& v : relation_violations(p)) expect(false, "module " + p.label + ": " + v);
        if (p.m < 1 || p.m > 3) continue;
        for (std::size_t r = 0; r < 3; ++r) {
            const E a = detail::random_element(p.m, rng), b = detail::random_element(p.m, rng);
            expect(element_action(p, a * b) == element_action(p, a) * element_action(p, b), "action_homomorphism " + p.label);
        }
        if (p.m >= 2) {
            expect(check_relations(star_dual(p)), "star_dual relations " + p.label);
            expect(check_relations(im_twist(p)), "im_twist relations " + p.label);
        }
    }
    return rep;
}

}  // namespace lefschetz
