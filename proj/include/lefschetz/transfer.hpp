#pragma once

#include "lefschetz/gl_params.hpp"
#include "lefschetz/module_analysis.hpp"

#include <optional>

namespace lefschetz {

struct TransferResult {
    std::optional<HeckeModule> module;
    std::optional<Multisegment> multisegment;
    bool zero() const { return !module.has_value(); }
};

inline std::vector<Segment> transfer_segments(const GLParam& p) {
    std::vector<Segment> segs;
    for (std::size_t i = 0; i < p.rank(); ++i) {
        Segment s(p.right[i] + half(), p.left[i] - half());
        if (!s.empty()) segs.push_back(s);
    }
    return segs;
}

inline bool at_height(const GLParam& p, std::size_t m) {
    auto h = height(p);
    return h && *h == static_cast<long>(m);
}

// St(D_1) x ... x St(D_n) in input coordinate order, D_i = [lambda_R,i + 1/2, lambda_L,i - 1/2]
inline TransferResult gamma_standard(const GLParam& p, std::size_t m) {
    if (!at_height(p, m)) return {};
    HeckeModule mod = product_of_steinbergs(transfer_segments(p));
    mod.label = "X" + p.str();
    return {std::move(mod), from_params(p.left, p.right)};
}

inline mpz_class gamma_dim(const GLParam& p, std::size_t m) {
    if (!at_height(p, m)) return 0;
    mpz_class d = factorial(static_cast<long>(m));
    for (auto& x : p.mu()) d /= factorial(to_long(x));
    return d;
}

// St(m(lambda_L, lambda_R)); the irreducibility assertion runs when verify is set
inline TransferResult gamma_irreducible(const GLParam& p, std::size_t m, bool verify = true) {
    if (!at_height(p, m)) return {};
    const GLParam sorted = sort_to_standard(p);
    Multisegment ms = from_params(sorted.left, sorted.right);
    HeckeModule mod = simple_module(ms);
    if (verify && !is_absolutely_irreducible(mod)) throw EngineError("transfer image is not irreducible");
    mod.label = "J" + p.str();
    return {std::move(mod), std::move(ms)};
}

inline bool check_parabolic_compat(const GLParam& p1, const GLParam& p2) {
    const GLParam both = concat(p1, p2);
    const auto h1 = height(p1), h2 = height(p2), h = height(both);
    if (!h1 || !h2) return !h;
    auto lhs = gamma_standard(both, static_cast<std::size_t>(*h));
    auto g1 = gamma_standard(p1, static_cast<std::size_t>(*h1));
    auto g2 = gamma_standard(p2, static_cast<std::size_t>(*h2));
    HeckeModule rhs = induce(*g1.module, *g2.module);
    return !lhs.zero() && is_isomorphic(*lhs.module, rhs) && check_relations(rhs) && check_relations(*lhs.module);
}

struct NotComputable : std::invalid_argument {
    NotComputable() : std::invalid_argument("not computable on GL side") {}
};

// X (x) S_sigma(V) = sum over nu of c^nu_{lambda_R - rho, sigma} J(lambda_L, nu + rho),
// sigma = tau^T, for X finite-dimensional (or n = 1).
inline std::vector<GLParam> tensor_summands(const GLParam& p, const Partition& tau) {
    const std::size_t n = p.rank();
    const Partition sigma = tau.transpose();
    if (sigma.length() > n) return {};
    GLParam sorted = sort_to_standard(p);
    if (n > 1) {
        if (!is_finite_dimensional(p)) throw NotComputable();
        for (std::size_t i = 1; i < n; ++i)
            if (sorted.right[i] > sorted.right[i - 1]) throw NotComputable();
    }
    const auto r = rho(n);
    RationalVector base(n);
    for (std::size_t i = 0; i < n; ++i) base[i] = sorted.right[i] - r[i];
    auto [a, shift] = integral_part(base);
    Weight b(n, 0);
    for (std::size_t i = 0; i < sigma.length(); ++i) b[i] = sigma.parts[i];
    const long total = std::accumulate(a.begin(), a.end(), 0L) + std::accumulate(b.begin(), b.end(), 0L);
    std::vector<GLParam> out;
    Weight nu(n);
    std::function<void(std::size_t, long)> rec = [&](std::size_t k, long left) {
        if (left < 0) return;
        if (k == n) {
            if (left != 0) return;
            const mpz_class c = lr_coefficient(a, b, nu);
            for (mpz_class t = 0; t < c; ++t) {
                RationalVector right(n);
                for (std::size_t i = 0; i < n; ++i) right[i] = Rational(nu[i]) + shift + r[i];
                out.emplace_back(sorted.left, right);
            }
            return;
        }
        const long hi = k == 0 ? a[0] + b[0] : std::min(nu[k - 1], a[k] + b[0]);
        for (long v = hi; v >= a[k]; --v) {
            nu[k] = v;
            rec(k + 1, left - (v - a[k]));
        }
    };
    rec(0, total - std::accumulate(a.begin(), a.end(), 0L));
    return out;
}

inline bool check_bz_compat(const GLParam& p, const Partition& tau, std::size_t m) {
    const std::size_t i = static_cast<std::size_t>(tau.size());
    const auto summands = tensor_summands(p, tau);
    auto top = gamma_irreducible(p, m + i);
    HeckeModule lhs = top.zero() ? zero_module(m) : bz_derivative(*top.module, tau);
    HeckeModule rhs = zero_module(m);
    for (auto& q : summands) {
        auto g = gamma_irreducible(q, m);
        if (!g.zero()) rhs = direct_sum(rhs, *g.module);
    }
    if (lhs.dim != rhs.dim) return false;
    if (lhs.dim == 0) return true;
    return check_relations(lhs) && is_isomorphic(lhs, rhs);
}

enum class SchurWeylMode { automatic, principal_series, finite_dimensional };

struct SchurWeylSides {
    long s_side = 0;
    long k_side = 0;
};

// S_m multiplicity of alpha in the transfer against the K multiplicity of F_{alpha^T}.
inline SchurWeylSides schur_weyl_sides(const GLParam& p, const Partition& alpha,
                                       SchurWeylMode mode = SchurWeylMode::automatic) {
    if (mode == SchurWeylMode::automatic)
        mode = is_finite_dimensional(p) ? SchurWeylMode::finite_dimensional : SchurWeylMode::principal_series;
    const std::size_t n = p.rank();
    const std::size_t m = static_cast<std::size_t>(alpha.size());
    SchurWeylSides out;
    auto image = mode == SchurWeylMode::finite_dimensional ? gamma_irreducible(p, m) : gamma_standard(p, m);
    if (!image.zero()) {
        auto dec = sm_character_decompose(*image.module);
        if (auto it = dec.find(alpha); it != dec.end()) out.s_side = it->second;
    }
    const Partition t = alpha.transpose();
    if (t.length() <= n) {
        RationalVector gamma(n);
        for (std::size_t i = 0; i < t.length(); ++i) gamma[i] = t.parts[i];
        const auto kmode = mode == SchurWeylMode::finite_dimensional ? KTypeMode::finite_dimensional
                                                                     : KTypeMode::principal_series;
        if (mode == SchurWeylMode::principal_series)
            for (auto& x : p.mu())
                if (!is_integer(x)) throw std::invalid_argument("K side not computable");
        out.k_side = k_type_multiplicity(p, gamma, kmode).get_si();
    }
    return out;
}

inline bool check_schur_weyl(const GLParam& p, const Partition& alpha, SchurWeylMode mode = SchurWeylMode::automatic) {
    auto sides = schur_weyl_sides(p, alpha, mode);
    return sides.s_side == sides.k_side;
}

enum class Verdict { irreducible, reducible };

inline std::string to_string(Verdict v) { return v == Verdict::irreducible ? "irreducible" : "reducible"; }

struct ReducibilityReport {
    Verdict verdict;
    long twist = 0;
    CompositionTable factors;
};

inline std::atomic<std::size_t>& reducibility_rank_cap() {
    static std::atomic<std::size_t> cap{std::numeric_limits<std::size_t>::max()};
    return cap;
}

// Twist both parameters far enough to be thickened (plus one), transfer, induce,
// and count composition factors.
inline ReducibilityReport detect_reducibility(const GLParam& p1, const GLParam& p2) {
    const long k = thicken(concat(p1, p2)).k + 1;
    const GLParam t1 = chi_twist(p1, k), t2 = chi_twist(p2, k);
    const auto h1 = height(t1), h2 = height(t2);
    require(h1 && h2, "detect_reducibility: twist failed to thicken");
    if (static_cast<std::size_t>(*h1 + *h2) > reducibility_rank_cap().load()) throw CapExceeded();
    auto g1 = gamma_irreducible(t1, static_cast<std::size_t>(*h1), false);
    auto g2 = gamma_irreducible(t2, static_cast<std::size_t>(*h2), false);
    HeckeModule prod = induce(*g1.module, *g2.module);
    ReducibilityReport r;
    r.twist = k;
    r.factors = composition_factors(prod);
    r.verdict = total_multiplicity(r.factors) == 1 ? Verdict::irreducible : Verdict::reducible;
    return r;
}

struct DiracDatum {
    RationalVector k_type;
    mpz_class multiplicity;
};

inline DiracDatum dirac_cohomology_finite_dim(const RationalVector& lambda) {
    const std::size_t n = lambda.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) require(lambda[i] != lambda[j], "dirac_cohomology_finite_dim: lambda not regular");
    const auto r = rho(n);
    DiracDatum d;
    for (std::size_t i = 0; i < n; ++i) d.k_type.push_back(2 * lambda[i] - r[i]);
    d.multiplicity = mpz_class(1) << static_cast<mp_bitcnt_t>(n / 2);
    return d;
}

}  // namespace lefschetz
