#pragma once

#include "lefschetz/symgroup.hpp"

#include <map>
#include <string>
#include <vector>

namespace lefschetz {

using Exponents = std::vector<int>;
using Polynomial = std::map<Exponents, Rational>;

namespace detail {

inline void add_term(Polynomial& p, const Exponents& e, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = p.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) p.erase(it);
    }
}

inline Polynomial poly_mul(const Polynomial& f, const Polynomial& g) {
    Polynomial out;
    for (auto& [a, x] : f)
        for (auto& [b, y] : g) {
            Exponents e(a.size());
            for (std::size_t k = 0; k < a.size(); ++k) e[k] = a[k] + b[k];
            add_term(out, e, x * y);
        }
    return out;
}

// swap y_i and y_{i+1}
inline Polynomial poly_swap(const Polynomial& f, std::size_t i) {
    Polynomial out;
    for (auto& [a, x] : f) {
        Exponents e = a;
        std::swap(e[i - 1], e[i]);
        add_term(out, e, x);
    }
    return out;
}

// (f - s_i f) / (y_i - y_{i+1})
inline Polynomial divided_difference(const Polynomial& f, std::size_t i) {
    Polynomial out;
    for (auto& [alpha, c] : f) {
        const int a = alpha[i - 1], b = alpha[i];
        if (a == b) continue;
        const int lo = std::min(a, b), gap = std::abs(a - b);
        const Rational coeff = a > b ? c : Rational(-c);
        for (int k = 0; k < gap; ++k) {
            Exponents e = alpha;
            // a > b: x^lo z^lo x^(gap-1-k) z^k ; a < b: x^lo z^lo z^(gap-1-k) x^k
            e[i - 1] = lo + (a > b ? gap - 1 - k : k);
            e[i] = lo + (a > b ? k : gap - 1 - k);
            add_term(out, e, coeff);
        }
    }
    return out;
}

}  // namespace detail

// Sum of w * y^alpha, group element on the left.
class HeckeElement {
public:
    using Terms = std::map<Permutation, Polynomial>;

    HeckeElement() = default;
    explicit HeckeElement(std::size_t m) : m_(m) {}

    static HeckeElement scalar(std::size_t m, const Rational& c) {
        HeckeElement x(m);
        x.add(Permutation::identity(m), Exponents(m, 0), c);
        return x;
    }
    static HeckeElement one(std::size_t m) { return scalar(m, 1); }
    static HeckeElement group(const Permutation& w, const Rational& c = 1) {
        HeckeElement x(w.size());
        x.add(w, Exponents(w.size(), 0), c);
        return x;
    }
    static HeckeElement s(std::size_t m, std::size_t i) { return group(Permutation::simple(m, i)); }
    static HeckeElement y(std::size_t m, std::size_t j) {
        require(j >= 1 && j <= m, "y index out of range");
        HeckeElement x(m);
        Exponents e(m, 0);
        e[j - 1] = 1;
        x.add(Permutation::identity(m), e, 1);
        return x;
    }
    static HeckeElement monomial(const Permutation& w, const Exponents& alpha, const Rational& c) {
        require(alpha.size() == w.size(), "exponent length mismatch");
        HeckeElement x(w.size());
        x.add(w, alpha, c);
        return x;
    }

    std::size_t rank() const { return m_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const {
        std::size_t n = 0;
        for (auto& [w, f] : terms_) n += f.size();
        return n;
    }

    void add(const Permutation& w, const Exponents& alpha, const Rational& c) {
        if (sgn(c) == 0) return;
        auto& f = terms_[w];
        detail::add_term(f, alpha, c);
        if (f.empty()) terms_.erase(w);
    }

    HeckeElement& operator+=(const HeckeElement& o) {
        require(m_ == o.m_, "rank mismatch");
        for (auto& [w, f] : o.terms_)
            for (auto& [a, c] : f) add(w, a, c);
        return *this;
    }
    HeckeElement& operator-=(const HeckeElement& o) { return *this += o * Rational(-1); }
    HeckeElement& operator*=(const Rational& c) {
        if (sgn(c) == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [w, f] : terms_)
            for (auto& [a, x] : f) x *= c;
        return *this;
    }
    friend HeckeElement operator+(HeckeElement a, const HeckeElement& b) { return a += b; }
    friend HeckeElement operator-(HeckeElement a, const HeckeElement& b) { return a -= b; }
    friend HeckeElement operator*(HeckeElement a, const Rational& c) { return a *= c; }
    friend HeckeElement operator*(const Rational& c, HeckeElement a) { return a *= c; }
    friend bool operator==(const HeckeElement& a, const HeckeElement& b) {
        return a.m_ == b.m_ && a.terms_ == b.terms_;
    }

    // x * s_i:  (w f) s_i = (w s_i)(s_i f) + w (d_i f)
    HeckeElement times_simple(std::size_t i) const {
        HeckeElement out(m_);
        for (auto& [w, f] : terms_) {
            out.add_poly(w.right_simple(i), detail::poly_swap(f, i));
            out.add_poly(w, detail::divided_difference(f, i));
        }
        return out;
    }

    HeckeElement times_poly(const Polynomial& g) const {
        HeckeElement out(m_);
        for (auto& [w, f] : terms_) out.add_poly(w, detail::poly_mul(f, g));
        return out;
    }

    HeckeElement left_group(const Permutation& u) const {
        HeckeElement out(m_);
        for (auto& [w, f] : terms_) out.add_poly(u * w, f);
        return out;
    }

    friend HeckeElement operator*(const HeckeElement& x, const HeckeElement& y) {
        require(x.m_ == y.m_, "multiply: rank mismatch");
        HeckeElement out(x.m_);
        for (auto& [u, f] : x.terms_) {
            for (auto& [v, g] : y.terms_) {
                HeckeElement cur(x.m_);
                cur.add_poly(Permutation::identity(x.m_), f);
                for (auto i : v.reduced_word()) cur = cur.times_simple(i);
                out += cur.times_poly(g).left_group(u);
            }
        }
        return out;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto& [w, f] : terms_)
            for (auto& [a, c] : f) {
                if (!out.empty()) out += " + ";
                out += to_string(c);
                if (!w.is_identity()) {
                    out += "*w[";
                    for (std::size_t k = 0; k < w.size(); ++k) out += (k ? "," : "") + std::to_string(w.one_line()[k]);
                    out += "]";
                }
                for (std::size_t k = 0; k < a.size(); ++k)
                    if (a[k]) out += "*y" + std::to_string(k + 1) + (a[k] > 1 ? "^" + std::to_string(a[k]) : "");
            }
        return out;
    }

private:
    void add_poly(const Permutation& w, const Polynomial& f) {
        for (auto& [a, c] : f) add(w, a, c);
    }

    std::size_t m_ = 0;
    Terms terms_;
};

inline HeckeElement multiply(const HeckeElement& x, const HeckeElement& y) { return x * y; }

inline HeckeElement power(const HeckeElement& x, int k) {
    HeckeElement r = HeckeElement::one(x.rank());
    for (int i = 0; i < k; ++i) r = r * x;
    return r;
}

// y_j^* = -w0 y_{m+1-j} w0
inline HeckeElement star_of_y(std::size_t m, std::size_t j) {
    auto w0 = HeckeElement::group(Permutation::longest(m));
    return w0 * HeckeElement::y(m, m + 1 - j) * w0 * Rational(-1);
}

// Anti-involution: s_i^* = s_i, extended anti-multiplicatively, so w^* = w^{-1}.
inline HeckeElement star(const HeckeElement& x) {
    const std::size_t m = x.rank();
    std::vector<HeckeElement> ystar;
    for (std::size_t j = 1; j <= m; ++j) ystar.push_back(star_of_y(m, j));
    HeckeElement out(m);
    for (auto& [w, f] : x.terms())
        for (auto& [alpha, c] : f) {
            // (w y^alpha)^* = (y^alpha)^* w^{-1}; the y_j^* commute
            HeckeElement t = HeckeElement::scalar(m, c);
            for (std::size_t j = 0; j < m; ++j) t = t * power(ystar[j], alpha[j]);
            out += t * HeckeElement::group(w.inverse());
        }
    return out;
}

// w -> (-1)^{l(w)} w, y_j -> -y_j
inline HeckeElement im_involution(const HeckeElement& x) {
    HeckeElement out(x.rank());
    for (auto& [w, f] : x.terms())
        for (auto& [alpha, c] : f) {
            int deg = 0;
            for (int e : alpha) deg += e;
            const bool flip = (w.length() + deg) % 2;
            out.add(w, alpha, flip ? Rational(-c) : c);
        }
    return out;
}

// x = sum_rep rep * h_rep with rep a minimal left coset representative for S_{m1} x S_{m2}
// and h_rep supported on the Young subgroup.
inline std::map<Permutation, HeckeElement> parabolic_decompose(const HeckeElement& x, std::size_t m1, std::size_t m2) {
    require(m1 + m2 == x.rank(), "parabolic_decompose: m1 + m2 != m");
    std::vector<std::size_t> parts;
    if (m1) parts.push_back(m1);
    if (m2) parts.push_back(m2);
    std::map<Permutation, HeckeElement> out;
    if (parts.empty()) {
        out.emplace(Permutation::identity(0), x);
        return out;
    }
    Composition c(parts);
    for (auto& [u, f] : x.terms()) {
        auto [rep, sigma] = split_coset(u, c);
        auto [it, inserted] = out.try_emplace(rep, HeckeElement(x.rank()));
        for (auto& [alpha, coeff] : f) it->second.add(sigma, alpha, coeff);
    }
    return out;
}

}  // namespace lefschetz
