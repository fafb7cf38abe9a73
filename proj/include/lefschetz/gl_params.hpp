#pragma once

#include "lefschetz/multisegment.hpp"
#include "lefschetz/symgroup.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace lefschetz {

struct GLParam {
    RationalVector left;
    RationalVector right;

    GLParam() = default;
    GLParam(RationalVector l, RationalVector r) : left(std::move(l)), right(std::move(r)) {
        require(left.size() == right.size(), "GLParam: lengths differ");
        for (std::size_t i = 0; i < left.size(); ++i)
            require(is_integer(left[i] - right[i]), "GLParam: lambda_L - lambda_R must be integral");
    }

    std::size_t rank() const { return left.size(); }
    RationalVector mu() const {
        RationalVector m(left.size());
        for (std::size_t i = 0; i < left.size(); ++i) m[i] = left[i] - right[i];
        return m;
    }
    std::string str() const { return "((" + join(left) + "),(" + join(right) + "))"; }

    friend bool operator==(const GLParam&, const GLParam&) = default;
};

// nullopt stands for minus infinity
using Height = std::optional<long>;

inline Height height(const GLParam& p) {
    long h = 0;
    for (auto& x : p.mu()) {
        if (x < 0) return std::nullopt;
        h += to_long(x);
    }
    return h;
}

inline bool is_thickened(const GLParam& p) {
    if (p.rank() == 0) return true;
    return *std::min_element(p.left.begin(), p.left.end()) >= *std::max_element(p.right.begin(), p.right.end());
}

// lambda_L descending, ties broken by lambda_R descending
inline GLParam sort_to_standard(const GLParam& p) {
    std::vector<std::size_t> idx(p.rank());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
        if (p.left[i] != p.left[j]) return p.left[i] > p.left[j];
        return p.right[i] > p.right[j];
    });
    GLParam out;
    for (auto i : idx) {
        out.left.push_back(p.left[i]);
        out.right.push_back(p.right[i]);
    }
    return out;
}

inline GLParam hermitian_dual(const GLParam& p) {
    GLParam out;
    for (auto& x : p.right) out.left.push_back(-x);
    for (auto& x : p.left) out.right.push_back(-x);
    return out;
}

inline GLParam chi_twist(const GLParam& p, long k) {
    GLParam out = p;
    for (auto& x : out.right) x -= k;
    return out;
}

struct Thickening {
    GLParam param;
    long k = 0;
};

inline Thickening thicken(const GLParam& p) {
    if (is_thickened(p)) return {p, 0};
    Rational gap = *std::max_element(p.right.begin(), p.right.end()) - *std::min_element(p.left.begin(), p.left.end());
    mpz_class k;
    mpz_cdiv_q(k.get_mpz_t(), gap.get_num_mpz_t(), gap.get_den_mpz_t());
    long kk = k.get_si();
    return {chi_twist(p, kk), kk};
}

inline GLParam concat(const GLParam& x, const GLParam& y) {
    GLParam out = x;
    out.left.insert(out.left.end(), y.left.begin(), y.left.end());
    out.right.insert(out.right.end(), y.right.begin(), y.right.end());
    return out;
}

// GL_1 character chi_{a,b}
struct Character {
    Rational a;
    Rational b;
};

// Two-character principal series: reducible iff the quotient character is z^p zbar^q
// with p, q nonzero integers of equal sign.
inline bool pair_reducibility(const Character& x, const Character& y) {
    require(is_integer(x.a - x.b) && is_integer(y.a - y.b), "pair_reducibility: non-integral character");
    Rational p = x.a - y.a, q = x.b - y.b;
    if (!is_integer(p) || !is_integer(q)) return false;
    return sgn(p) != 0 && sgn(p) == sgn(q);
}

inline Segment segment_of(const Character& c) { return {c.b + half(), c.a - half()}; }

inline RationalVector rho(std::size_t n) {
    RationalVector r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = Rational(static_cast<long>(n) - 1 - 2 * static_cast<long>(i), 2);
    for (auto& x : r) x.canonicalize();
    return r;
}

namespace detail {
inline bool regular_integral(const RationalVector& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (v[i] == v[j] || !is_integer(v[i] - v[j])) return false;
    return true;
}
}  // namespace detail

inline bool is_finite_dimensional(const GLParam& p) {
    return detail::regular_integral(p.left) && detail::regular_integral(p.right);
}

// Common rational shift making a weight integral; returns the integer vector and the shift used.
inline std::pair<Weight, Rational> integral_part(const RationalVector& v) {
    Weight w;
    if (v.empty()) return {w, 0};
    Rational base = v.back();
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), base.get_num_mpz_t(), base.get_den_mpz_t());
    Rational shift = base - Rational(fl);
    for (auto& x : v) {
        Rational y = x - shift;
        require(is_integer(y), "weight is not integral up to a common shift");
        w.push_back(to_long(y));
    }
    return {w, shift};
}

inline RationalVector sorted_descending(RationalVector v) {
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

enum class KTypeMode { finite_dimensional, principal_series };

// Multiplicity of the K-type F_gamma.
inline mpz_class k_type_multiplicity(const GLParam& p, const RationalVector& gamma, KTypeMode mode) {
    for (std::size_t i = 1; i < gamma.size(); ++i) require(gamma[i] <= gamma[i - 1], "k_type_multiplicity: gamma not dominant");
    require(gamma.size() == p.rank(), "k_type_multiplicity: rank mismatch");
    if (mode == KTypeMode::principal_series) {
        Weight g, mu;
        for (auto& x : gamma) {
            if (!is_integer(x)) return 0;
            g.push_back(to_long(x));
        }
        for (auto& x : p.mu()) mu.push_back(to_long(x));
        return kostka(g, mu);
    }
    require(is_finite_dimensional(p), "k_type_multiplicity: parameter not finite-dimensional");
    const auto r = rho(p.rank());
    RationalVector a(p.rank()), bneg(p.rank());
    auto sl = sorted_descending(p.left), sr = sorted_descending(p.right);
    for (std::size_t i = 0; i < p.rank(); ++i) {
        a[i] = sl[i] - r[i];
        // -w0 (lambda_R - rho)
        bneg[i] = -(sr[p.rank() - 1 - i] - r[p.rank() - 1 - i]);
    }
    auto [wa, sa] = integral_part(a);
    auto [wb, sb] = integral_part(bneg);
    RationalVector g = gamma;
    Weight wg;
    for (auto& x : g) {
        Rational y = x - sa - sb;
        if (!is_integer(y)) return 0;
        wg.push_back(to_long(y));
    }
    return lr_coefficient(wa, wb, wg);
}

struct SignedParam {
    int sign;
    GLParam param;
};
using SignedParamSum = std::vector<SignedParam>;

// sum over w in S_n of det(w) X(lambda, -w w0 lambda)
inline SignedParamSum char_formula_finite_dim(const RationalVector& lambda) {
    for (std::size_t i = 0; i < lambda.size(); ++i)
        for (std::size_t j = i + 1; j < lambda.size(); ++j)
            require(lambda[i] != lambda[j], "char_formula_finite_dim: lambda not regular");
    const std::size_t n = lambda.size();
    SignedParamSum out;
    RationalVector w0l(lambda.rbegin(), lambda.rend());
    for (auto& w : all_permutations(n)) {
        RationalVector right(n);
        // (w v)_i = v_{w^{-1}(i)}
        for (std::size_t i = 0; i < n; ++i) right[w(static_cast<int>(i + 1)) - 1] = -w0l[i];
        out.push_back({w.sign(), GLParam(lambda, right)});
    }
    return out;
}

inline GLParam speh_param(long n, long d) {
    require(n >= 1 && d >= 1, "speh_param: n, d >= 1");
    RationalVector l, r;
    for (long j = 0; j < n; ++j) {
        l.push_back(Rational((n - 1) - 2 * j + d, 2));
        r.push_back(Rational((n - 1) - 2 * j - d, 2));
    }
    for (auto& x : l) x.canonicalize();
    for (auto& x : r) x.canonicalize();
    return {l, r};
}

}  // namespace lefschetz
