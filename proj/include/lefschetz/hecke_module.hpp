#pragma once

#include "lefschetz/hecke_algebra.hpp"
#include "lefschetz/matrix.hpp"
#include "lefschetz/multisegment.hpp"

#include <atomic>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace lefschetz {

struct CapExceeded : std::runtime_error {
    CapExceeded() : std::runtime_error("instance too large") {}
};

struct Limits {
    std::atomic<std::size_t> max_dim{std::numeric_limits<std::size_t>::max()};
};

inline Limits& limits() {
    static Limits l;
    return l;
}

inline void check_dim(std::size_t d) {
    if (d > limits().max_dim.load()) throw CapExceeded();
}

// Sets the dimension cap for the lifetime of the guard.
class ScopedDimCap {
public:
    explicit ScopedDimCap(std::size_t cap) : previous_(limits().max_dim.exchange(cap)) {}
    ~ScopedDimCap() { limits().max_dim.store(previous_); }
    ScopedDimCap(const ScopedDimCap&) = delete;
    ScopedDimCap& operator=(const ScopedDimCap&) = delete;

private:
    std::size_t previous_;
};

// A module generated by v0 on which the parabolic subalgebra acts through
// St(f_1) x ... x St(f_k); basis vector b equals basis_words[b] . v0.
struct CyclicData {
    std::vector<Segment> factors;
    std::vector<Permutation> basis_words;
};

struct HeckeModule {
    std::size_t m = 0;
    std::size_t dim = 0;
    std::vector<Matrix> s;  // s_1 .. s_{m-1}
    std::vector<Matrix> y;  // y_1 .. y_m
    std::string label;
    std::optional<CyclicData> cyclic;
    // every y-eigenvalue lies in this set, when known
    std::optional<std::set<Rational>> spectrum;

    // generators in the order s_1..s_{m-1}, y_1..y_m
    std::vector<const Matrix*> generators() const {
        std::vector<const Matrix*> g;
        for (auto& x : s) g.push_back(&x);
        for (auto& x : y) g.push_back(&x);
        return g;
    }
};

inline HeckeModule unit_module() {
    HeckeModule u;
    u.dim = 1;
    u.label = "{}";
    u.cyclic = CyclicData{{}, {Permutation::identity(0)}};
    u.spectrum = std::set<Rational>{};
    return u;
}

inline HeckeModule character_module(const Rational& c) {
    HeckeModule p;
    p.m = 1;
    p.dim = 1;
    p.y.push_back(Matrix{{c}});
    p.label = "psi(" + to_string(c) + ")";
    p.cyclic = CyclicData{{Segment(c, c)}, {Permutation::identity(1)}};
    p.spectrum = std::set<Rational>{c};
    return p;
}

// one-dimensional: s_i -> -1, y_j -> a + j - 1
inline HeckeModule steinberg(const Segment& seg) {
    require(!seg.empty(), "steinberg: empty segment");
    HeckeModule st;
    st.m = static_cast<std::size_t>(seg.length());
    st.dim = 1;
    for (std::size_t i = 1; i < st.m; ++i) st.s.push_back(Matrix{{Rational(-1)}});
    std::set<Rational> eigenvalues;
    for (auto& x : seg.elements()) {
        st.y.push_back(Matrix{{x}});
        eigenvalues.insert(x);
    }
    st.label = "St(" + seg.str() + ")";
    st.cyclic = CyclicData{{seg}, {Permutation::identity(st.m)}};
    st.spectrum = std::move(eigenvalues);
    return st;
}

// Sparse copies of the generators for repeated vector products.
class ModuleAction {
public:
    explicit ModuleAction(const HeckeModule& p) : dim_(p.dim) {
        for (auto& x : p.s) s_.emplace_back(x);
        for (auto& x : p.y) y_.emplace_back(x);
    }

    std::size_t dim() const { return dim_; }
    const SparseMatrix& s(std::size_t i) const { return s_[i - 1]; }
    const SparseMatrix& y(std::size_t j) const { return y_[j - 1]; }

    std::vector<const SparseMatrix*> generators() const {
        std::vector<const SparseMatrix*> g;
        for (auto& x : s_) g.push_back(&x);
        for (auto& x : y_) g.push_back(&x);
        return g;
    }

    RationalVector apply(const Permutation& w, RationalVector v) const {
        auto word = w.reduced_word();
        for (auto it = word.rbegin(); it != word.rend(); ++it) v = s_[*it - 1] * v;
        return v;
    }

    Matrix group_matrix(const Permutation& w) const {
        Matrix out(dim_, dim_);
        for (std::size_t j = 0; j < dim_; ++j) {
            RationalVector e(dim_);
            e[j] = 1;
            e = apply(w, std::move(e));
            for (std::size_t i = 0; i < dim_; ++i) out(i, j) = e[i];
        }
        return out;
    }

private:
    std::size_t dim_;
    std::vector<SparseMatrix> s_, y_;
};

inline Matrix group_matrix(const HeckeModule& p, const Permutation& w) {
    if (w.is_identity()) return Matrix::identity(p.dim);
    return ModuleAction(p).group_matrix(w);
}

inline Matrix element_action(const HeckeModule& p, const HeckeElement& x) {
    require(x.rank() == p.m, "element_action: rank mismatch");
    Matrix out(p.dim, p.dim);
    for (auto& [w, f] : x.terms()) {
        Matrix g = group_matrix(p, w);
        for (auto& [alpha, c] : f) {
            Matrix t = g;
            for (std::size_t j = 0; j < alpha.size(); ++j)
                for (int e = 0; e < alpha[j]; ++e) t = t * p.y[j];
            out += t * c;
        }
    }
    return out;
}

// Names of violated defining relations; empty when the module is valid.
inline std::vector<std::string> relation_violations(const HeckeModule& p) {
    std::vector<std::string> bad;
    const std::size_t m = p.m, d = p.dim;
    auto shape_ok = [d](const Matrix& a) { return a.rows() == d && a.cols() == d; };
    if (p.y.size() != m || p.s.size() != (m ? m - 1 : 0)) return {"generator count"};
    for (auto* g : p.generators())
        if (!shape_ok(*g)) return {"matrix shape"};
    const Matrix id = Matrix::identity(d);
    auto name = [](const char* f, std::size_t i, std::size_t j) {
        return std::string(f) + "(" + std::to_string(i) + "," + std::to_string(j) + ")";
    };
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (!(p.y[i] * p.y[j] == p.y[j] * p.y[i])) bad.push_back(name("y_commute", i + 1, j + 1));
    for (std::size_t i = 0; i + 1 < m; ++i) {
        if (!(p.s[i] * p.s[i] == id)) bad.push_back(name("s_square", i + 1, i + 1));
        if (i + 2 < m && !(p.s[i] * p.s[i + 1] * p.s[i] == p.s[i + 1] * p.s[i] * p.s[i + 1]))
            bad.push_back(name("braid", i + 1, i + 2));
        for (std::size_t j = i + 2; j + 1 < m; ++j)
            if (!(p.s[i] * p.s[j] == p.s[j] * p.s[i])) bad.push_back(name("s_commute", i + 1, j + 1));
        if (!(p.s[i] * p.y[i] - p.y[i + 1] * p.s[i] == id)) bad.push_back(name("cross", i + 1, i + 1));
        for (std::size_t j = 0; j < m; ++j)
            if (j != i && j != i + 1 && !(p.s[i] * p.y[j] == p.y[j] * p.s[i])) bad.push_back(name("s_y_commute", i + 1, j + 1));
    }
    return bad;
}

inline bool check_relations(const HeckeModule& p) { return relation_violations(p).empty(); }

namespace detail {

inline std::optional<std::set<Rational>> merge_spectra(const HeckeModule& a, const HeckeModule& b) {
    if (!a.spectrum || !b.spectrum) return std::nullopt;
    auto out = *a.spectrum;
    out.insert(b.spectrum->begin(), b.spectrum->end());
    return out;
}

}  // namespace detail

// pi1 x pi2 with basis w (x) v1 (x) v2, w over minimal left coset representatives
// sorted by length; index = w * (d1 d2) + i1 * d2 + i2.
inline HeckeModule induce(const HeckeModule& p1, const HeckeModule& p2) {
    const std::size_t m1 = p1.m, m2 = p2.m, m = m1 + m2;
    const std::size_t d12 = p1.dim * p2.dim;
    std::vector<Permutation> reps;
    if (m1 && m2) reps = min_coset_reps(Composition({m1, m2}));
    else reps.push_back(Permutation::identity(m));
    check_dim(reps.size() * d12);

    HeckeModule out;
    out.m = m;
    out.dim = reps.size() * d12;
    out.label = p1.label + "x" + p2.label;
    out.spectrum = detail::merge_spectra(p1, p2);

    std::map<Permutation, std::size_t> rep_index;
    for (std::size_t k = 0; k < reps.size(); ++k) rep_index.emplace(reps[k], k);

    const ModuleAction act1(p1), act2(p2);
    std::map<Permutation, Matrix> cache1, cache2;
    auto rho1 = [&](const Permutation& w) -> const Matrix& {
        auto it = cache1.find(w);
        if (it == cache1.end()) it = cache1.emplace(w, act1.group_matrix(w)).first;
        return it->second;
    };
    auto rho2 = [&](const Permutation& w) -> const Matrix& {
        auto it = cache2.find(w);
        if (it == cache2.end()) it = cache2.emplace(w, act2.group_matrix(w)).first;
        return it->second;
    };
    // action of sigma * y^alpha (sigma in the Young subgroup) on v1 (x) v2
    auto block = [&](const Permutation& sigma, const Exponents& alpha) {
        std::vector<int> w1(m1), w2(m2);
        for (std::size_t k = 0; k < m1; ++k) w1[k] = sigma(static_cast<int>(k + 1));
        for (std::size_t k = 0; k < m2; ++k) w2[k] = sigma(static_cast<int>(m1 + k + 1)) - static_cast<int>(m1);
        Matrix a = rho1(Permutation(w1)), b = rho2(Permutation(w2));
        for (std::size_t j = 0; j < m1; ++j)
            for (int e = 0; e < alpha[j]; ++e) a = a * p1.y[j];
        for (std::size_t j = 0; j < m2; ++j)
            for (int e = 0; e < alpha[m1 + j]; ++e) b = b * p2.y[j];
        return Matrix::kron(a, b);
    };

    auto build = [&](const HeckeElement& g) {
        Matrix mat(out.dim, out.dim);
        for (std::size_t col = 0; col < reps.size(); ++col) {
            HeckeElement x = g * HeckeElement::group(reps[col]);
            for (auto& [rep, h] : parabolic_decompose(x, m1, m2)) {
                const std::size_t row = rep_index.at(rep);
                for (auto& [sigma, f] : h.terms())
                    for (auto& [alpha, c] : f) {
                        Matrix b = block(sigma, alpha);
                        for (std::size_t i = 0; i < d12; ++i)
                            for (std::size_t j = 0; j < d12; ++j)
                                if (sgn(b(i, j)) != 0) mat(row * d12 + i, col * d12 + j) += c * b(i, j);
                    }
            }
        }
        return mat;
    };
    for (std::size_t i = 1; i < m; ++i) out.s.push_back(build(HeckeElement::s(m, i)));
    for (std::size_t j = 1; j <= m; ++j) out.y.push_back(build(HeckeElement::y(m, j)));

    if (p1.cyclic && p2.cyclic) {
        CyclicData cd;
        cd.factors = p1.cyclic->factors;
        cd.factors.insert(cd.factors.end(), p2.cyclic->factors.begin(), p2.cyclic->factors.end());
        for (auto& w : reps)
            for (auto& x1 : p1.cyclic->basis_words)
                for (auto& x2 : p2.cyclic->basis_words) {
                    std::vector<int> line(m);
                    for (std::size_t k = 0; k < m1; ++k) line[k] = x1(static_cast<int>(k + 1));
                    for (std::size_t k = 0; k < m2; ++k) line[m1 + k] = x2(static_cast<int>(k + 1)) + static_cast<int>(m1);
                    cd.basis_words.push_back(w * Permutation(line));
                }
        out.cyclic = std::move(cd);
    }
    return out;
}

inline std::size_t multinomial_dim(const std::vector<Segment>& segs) {
    mpz_class d = 1;
    long total = 0;
    for (auto& s : segs) {
        total += s.length();
        d *= factorial(total) / (factorial(s.length()) * factorial(total - s.length()));
    }
    if (!d.fits_ulong_p()) throw CapExceeded();
    return d.get_ui();
}

inline HeckeModule product_of_steinbergs(const std::vector<Segment>& segs) {
    check_dim(multinomial_dim(segs));
    HeckeModule out = unit_module();
    for (auto& s : segs) out = induce(out, steinberg(s));
    std::string label;
    for (auto& s : segs) label += (label.empty() ? "" : "x") + ("St(" + s.str() + ")");
    out.label = label.empty() ? "{}" : label;
    return out;
}

// lambda(m): product in the normalized order
inline HeckeModule standard_module(const Multisegment& ms) {
    auto out = product_of_steinbergs(normalize_order(ms));
    out.label = "lambda" + ms.str();
    return out;
}

inline HeckeModule im_twist(const HeckeModule& p) {
    HeckeModule out = p;
    for (auto& x : out.s) x = -x;
    for (auto& x : out.y) x = -x;
    out.label = "IM(" + p.label + ")";
    out.cyclic.reset();
    if (p.spectrum) {
        std::set<Rational> neg;
        for (auto& c : *p.spectrum) neg.insert(-c);
        out.spectrum = std::move(neg);
    }
    return out;
}

// g -> rho(g^*)^T
inline HeckeModule star_dual(const HeckeModule& p) {
    HeckeModule out;
    out.m = p.m;
    out.dim = p.dim;
    for (auto& x : p.s) out.s.push_back(x.transpose());
    const Matrix w0 = group_matrix(p, Permutation::longest(p.m));
    for (std::size_t j = 1; j <= p.m; ++j) out.y.push_back((-(w0 * p.y[p.m - j] * w0)).transpose());
    out.label = "star_dual(" + p.label + ")";
    if (p.spectrum) {
        std::set<Rational> neg;
        for (auto& c : *p.spectrum) neg.insert(-c);
        out.spectrum = std::move(neg);
    }
    return out;
}

inline HeckeModule direct_sum(const HeckeModule& a, const HeckeModule& b) {
    require(a.m == b.m, "direct_sum: rank mismatch");
    HeckeModule out;
    out.m = a.m;
    out.dim = a.dim + b.dim;
    auto blockdiag = [&](const Matrix& x, const Matrix& z) {
        Matrix r(out.dim, out.dim);
        for (std::size_t i = 0; i < a.dim; ++i)
            for (std::size_t j = 0; j < a.dim; ++j) r(i, j) = x(i, j);
        for (std::size_t i = 0; i < b.dim; ++i)
            for (std::size_t j = 0; j < b.dim; ++j) r(a.dim + i, a.dim + j) = z(i, j);
        return r;
    };
    for (std::size_t i = 0; i < a.s.size(); ++i) out.s.push_back(blockdiag(a.s[i], b.s[i]));
    for (std::size_t i = 0; i < a.y.size(); ++i) out.y.push_back(blockdiag(a.y[i], b.y[i]));
    out.label = a.label + "+" + b.label;
    out.spectrum = detail::merge_spectra(a, b);
    return out;
}

inline HeckeModule zero_module(std::size_t m) {
    HeckeModule z;
    z.m = m;
    z.s.assign(m ? m - 1 : 0, Matrix(0, 0));
    z.y.assign(m, Matrix(0, 0));
    z.label = "0";
    z.spectrum = std::set<Rational>{};
    return z;
}

}  // namespace lefschetz
