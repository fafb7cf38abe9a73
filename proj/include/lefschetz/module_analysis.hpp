#pragma once

#include "lefschetz/hecke_module.hpp"

#include <deque>
#include <mutex>
#include <stdexcept>

namespace lefschetz {

// Raised when an engine-level assertion about module structure fails.
struct EngineError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using WeightTable = std::map<RationalVector, std::size_t>;
using CompositionTable = std::map<Multisegment, long>;

inline bool is_zero_vector(const RationalVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

// Fully reduced echelon basis of a subspace. The lead of a vector is its last
// nonzero coordinate; every basis vector is 1 at its lead and 0 at the others.
// Upper-triangular operators stay upper triangular on an invariant subspace in
// this basis, ordered by lead.
class LeadBasis {
public:
    explicit LeadBasis(std::size_t ambient) : n_(ambient) {}

    std::size_t ambient() const { return n_; }
    std::size_t size() const { return rows_.size(); }

    void reduce(RationalVector& v) const {
        Rational f, t;
        for (auto& [lead, u] : rows_) {
            if (sgn(v[lead]) == 0) continue;
            f = v[lead];
            for (std::size_t i = 0; i <= lead; ++i)
                if (sgn(u[i]) != 0) {
                    t = f * u[i];
                    v[i] -= t;
                }
        }
    }

    bool contains(RationalVector v) const {
        reduce(v);
        return is_zero_vector(v);
    }

    // false when v already lies in the span
    bool insert(RationalVector v) {
        require(v.size() == n_, "LeadBasis: wrong vector length");
        reduce(v);
        std::size_t lead = n_;
        for (std::size_t i = n_; i-- > 0;)
            if (sgn(v[i]) != 0) {
                lead = i;
                break;
            }
        if (lead == n_) return false;
        const Rational inv = 1 / v[lead];
        for (auto& x : v)
            if (sgn(x) != 0) x *= inv;
        Rational f, t;
        for (auto& [l, u] : rows_) {
            if (l < lead || sgn(u[lead]) == 0) continue;
            f = u[lead];
            for (std::size_t i = 0; i <= lead; ++i)
                if (sgn(v[i]) != 0) {
                    t = f * v[i];
                    u[i] -= t;
                }
        }
        rows_.emplace(lead, std::move(v));
        return true;
    }

    std::vector<std::size_t> leads() const {
        std::vector<std::size_t> out;
        for (auto& [l, u] : rows_) out.push_back(l);
        return out;
    }

    std::vector<RationalVector> vectors() const {
        std::vector<RationalVector> out;
        for (auto& [l, u] : rows_) out.push_back(u);
        return out;
    }

    // coordinates of a vector known to lie in the span
    RationalVector coordinates(const RationalVector& v) const {
        RationalVector c;
        for (auto& [l, u] : rows_) c.push_back(v[l]);
        return c;
    }

    Matrix as_columns() const { return Matrix::from_columns(vectors(), n_); }

private:
    std::size_t n_;
    std::map<std::size_t, RationalVector> rows_;
};

inline RationalVector unit_vector(std::size_t n, std::size_t i) {
    RationalVector e(n);
    e[i] = 1;
    return e;
}

// Smallest subspace containing the seeds and stable under the given operators.
inline LeadBasis invariant_closure(const std::vector<const SparseMatrix*>& ops, std::size_t dim,
                                   const std::vector<RationalVector>& seeds) {
    LeadBasis basis(dim);
    std::deque<RationalVector> queue;
    for (auto& v : seeds)
        if (basis.insert(v)) queue.push_back(v);
    while (!queue.empty() && basis.size() < dim) {
        RationalVector v = std::move(queue.front());
        queue.pop_front();
        for (auto* g : ops) {
            RationalVector w = *g * v;
            if (basis.insert(w)) queue.push_back(std::move(w));
            if (basis.size() == dim) break;
        }
    }
    return basis;
}

inline LeadBasis generated_submodule(const HeckeModule& p, const std::vector<RationalVector>& seeds) {
    ModuleAction act(p);
    return invariant_closure(act.generators(), p.dim, seeds);
}

// Matrix of g on an invariant subspace, in the lead-ordered basis.
inline Matrix restrict_operator(const SparseMatrix& g, const LeadBasis& b) {
    const auto vecs = b.vectors();
    const std::size_t k = vecs.size();
    Matrix out(k, k);
    for (std::size_t c = 0; c < k; ++c) {
        RationalVector w = g * vecs[c];
        auto coords = b.coordinates(w);
        for (std::size_t r = 0; r < k; ++r) out(r, c) = coords[r];
        if (k <= 128) {
            for (std::size_t r = 0; r < k; ++r)
                if (sgn(coords[r]) != 0)
                    for (std::size_t i = 0; i < w.size(); ++i) w[i] -= coords[r] * vecs[r][i];
            if (!is_zero_vector(w)) throw EngineError("subspace is not invariant");
        }
    }
    return out;
}

inline HeckeModule restrict_module(const HeckeModule& p, const LeadBasis& b) {
    ModuleAction act(p);
    HeckeModule out;
    out.m = p.m;
    out.dim = b.size();
    for (std::size_t i = 1; i < p.m; ++i) out.s.push_back(restrict_operator(act.s(i), b));
    for (std::size_t j = 1; j <= p.m; ++j) out.y.push_back(restrict_operator(act.y(j), b));
    out.label = "sub(" + p.label + ")";
    out.spectrum = p.spectrum;
    return out;
}

// p / U on the images of the standard vectors outside the leads of U
inline HeckeModule quotient_module(const HeckeModule& p, const LeadBasis& u) {
    const auto leads = u.leads();
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < p.dim; ++i)
        if (!std::binary_search(leads.begin(), leads.end(), i)) rest.push_back(i);
    auto build = [&](const Matrix& g) {
        Matrix out(rest.size(), rest.size());
        for (std::size_t c = 0; c < rest.size(); ++c) {
            RationalVector v = g.column(rest[c]);
            u.reduce(v);
            for (std::size_t r = 0; r < rest.size(); ++r) out(r, c) = v[rest[r]];
        }
        return out;
    };
    HeckeModule out;
    out.m = p.m;
    out.dim = rest.size();
    for (auto& g : p.s) out.s.push_back(build(g));
    for (auto& g : p.y) out.y.push_back(build(g));
    out.label = "quot(" + p.label + ")";
    out.spectrum = p.spectrum;
    return out;
}

inline WeightTable weights(const HeckeModule& p) {
    WeightTable out;
    if (p.dim == 0) return out;
    if (std::all_of(p.y.begin(), p.y.end(), [](const Matrix& y) { return is_upper_triangular(y); })) {
        for (std::size_t i = 0; i < p.dim; ++i) {
            RationalVector w;
            for (auto& y : p.y) w.push_back(y(i, i));
            ++out[w];
        }
        return out;
    }
    struct Piece {
        Matrix basis;
        RationalVector prefix;
    };
    std::vector<Piece> pieces{{Matrix::identity(p.dim), {}}};
    for (auto& y : p.y) {
        std::vector<Piece> next;
        for (auto& piece : pieces) {
            auto sol = solve_linear(piece.basis, y * piece.basis);
            if (!sol.consistent) throw EngineError("y-operators do not commute");
            const Matrix& local = sol.particular;
            std::vector<Rational> candidates;
            if (p.spectrum) candidates.assign(p.spectrum->begin(), p.spectrum->end());
            else candidates = rational_roots(characteristic_polynomial(local));
            std::size_t found = 0;
            for (auto& c : candidates) {
                Matrix e = generalized_eigenspace(local, c);
                if (e.cols() == 0) continue;
                found += e.cols();
                RationalVector prefix = piece.prefix;
                prefix.push_back(c);
                next.push_back({piece.basis * e, std::move(prefix)});
            }
            if (found != local.rows()) throw EngineError("non-rational weight");
        }
        pieces = std::move(next);
    }
    for (auto& piece : pieces) out[piece.prefix] += piece.basis.cols();
    return out;
}

inline std::map<Partition, long> sm_character_decompose(const HeckeModule& p) {
    std::map<Partition, long> out;
    if (p.dim == 0) return out;
    const int m = static_cast<int>(p.m);
    if (m == 0) {
        out[Partition()] = static_cast<long>(p.dim);
        return out;
    }
    ModuleAction act(p);
    std::map<Partition, Rational> traces;
    for (auto& mu : partitions_of(m)) {
        const Permutation w = cycle_representative(mu);
        Rational tr = 0;
        for (std::size_t i = 0; i < p.dim; ++i) tr += act.apply(w, unit_vector(p.dim, i))[i];
        traces[mu] = tr;
    }
    const Rational order(factorial(m));
    for (auto& lambda : partitions_of(m)) {
        Rational mult = 0;
        for (auto& [mu, tr] : traces) mult += Rational(class_size(mu)) * sm_character(lambda, mu) * tr;
        mult /= order;
        if (!is_integer(mult)) throw EngineError("non-integral S_m multiplicity");
        if (sgn(mult) != 0) out[lambda] = to_long(mult);
    }
    return out;
}

// n in N with s_j n = -n inside every block and y_{p+r} n = (a_t + r - 1) n.
inline Matrix frobenius_vectors(const std::vector<Segment>& factors, const HeckeModule& target) {
    HomogeneousSystem sys(target.dim);
    auto add_rows = [&](const Matrix& g, const Rational& shift) {
        for (std::size_t i = 0; i < target.dim; ++i) {
            HomogeneousSystem::SparseRow row;
            for (std::size_t k = 0; k < target.dim; ++k)
                if (sgn(g(i, k)) != 0) row[k] = g(i, k);
            row[i] -= shift;
            if (sgn(row[i]) == 0) row.erase(i);
            if (!row.empty()) sys.add(std::move(row));
        }
    };
    std::size_t pos = 0;
    for (auto& seg : factors) {
        const auto vals = seg.elements();
        for (std::size_t r = 0; r < vals.size(); ++r) add_rows(target.y[pos + r], vals[r]);
        for (std::size_t r = 0; r + 1 < vals.size(); ++r) add_rows(target.s[pos + r], -1);
        pos += vals.size();
    }
    require(pos == target.m, "frobenius_vectors: rank mismatch");
    return sys.solutions();
}

namespace detail {

inline std::vector<Matrix> frobenius_homs(const HeckeModule& source, const HeckeModule& target) {
    const CyclicData& cd = *source.cyclic;
    for (auto& f : cd.factors) require(f.length() >= 1, "frobenius_homs: empty factor");
    Matrix sols = frobenius_vectors(cd.factors, target);
    ModuleAction act(target);
    std::vector<Matrix> out;
    for (std::size_t k = 0; k < sols.cols(); ++k) {
        const RationalVector n = sols.column(k);
        Matrix t(target.dim, source.dim);
        for (std::size_t b = 0; b < cd.basis_words.size(); ++b) {
            auto col = act.apply(cd.basis_words[b], n);
            for (std::size_t i = 0; i < target.dim; ++i) t(i, b) = col[i];
        }
        out.push_back(std::move(t));
    }
    return out;
}

inline std::vector<Matrix> general_homs(const HeckeModule& a, const HeckeModule& b) {
    const std::size_t da = a.dim, db = b.dim;
    if (da * db > 160000) throw CapExceeded();
    HomogeneousSystem sys(da * db);
    auto idx = [da](std::size_t r, std::size_t c) { return r * da + c; };
    auto add_generator = [&](const Matrix& ga, const Matrix& gb) {
        SparseMatrix ca(ga), rb(gb.transpose());
        for (std::size_t r = 0; r < db; ++r)
            for (std::size_t c = 0; c < da; ++c) {
                HomogeneousSystem::SparseRow row;
                auto bump = [&row](std::size_t key, const Rational& v) {
                    auto [it, inserted] = row.try_emplace(key, v);
                    if (!inserted) {
                        it->second += v;
                        if (sgn(it->second) == 0) row.erase(it);
                    }
                };
                for (auto& [k, v] : ca.column(c)) bump(idx(r, k), v);
                for (auto& [k, v] : rb.column(r)) bump(idx(k, c), -v);
                if (!row.empty()) sys.add(std::move(row));
            }
    };
    for (std::size_t j = 0; j < a.m; ++j) add_generator(a.y[j], b.y[j]);
    for (std::size_t i = 0; i + 1 < a.m; ++i) add_generator(a.s[i], b.s[i]);
    Matrix sols = sys.solutions();
    std::vector<Matrix> out;
    for (std::size_t k = 0; k < sols.cols(); ++k) {
        Matrix t(db, da);
        for (std::size_t r = 0; r < db; ++r)
            for (std::size_t c = 0; c < da; ++c) t(r, c) = sols(idx(r, c), k);
        out.push_back(std::move(t));
    }
    return out;
}

}  // namespace detail

// Basis of Hom(a, b) as matrices T with T rho_a(g) = rho_b(g) T.
inline std::vector<Matrix> hom_space(const HeckeModule& a, const HeckeModule& b) {
    require(a.m == b.m, "hom_space: rank mismatch");
    if (a.dim == 0 || b.dim == 0) return {};
    if (a.cyclic) return detail::frobenius_homs(a, b);
    return detail::general_homs(a, b);
}

inline std::size_t hom_dim(const HeckeModule& a, const HeckeModule& b) { return hom_space(a, b).size(); }

// An invertible element of span(basis), if any. det(sum c_i T_i) has degree <= d,
// so it cannot vanish on all of {0..d}^k unless it vanishes identically.
inline std::optional<Matrix> find_invertible(const std::vector<Matrix>& basis) {
    if (basis.empty()) return std::nullopt;
    const std::size_t d = basis.front().rows(), k = basis.size();
    if (!basis.front().square()) return std::nullopt;
    auto combine = [&](const std::vector<long>& c) {
        Matrix t(d, d);
        for (std::size_t i = 0; i < k; ++i)
            if (c[i]) t += basis[i] * Rational(c[i]);
        return t;
    };
    auto invertible = [&](const std::vector<long>& c) -> std::optional<Matrix> {
        Matrix t = combine(c);
        if (sgn(determinant(t)) != 0) return t;
        return std::nullopt;
    };
    std::vector<long> c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = static_cast<long>(i + 1);
    if (auto t = invertible(c)) return t;
    if (k == 1) return std::nullopt;
    double grid = 1;
    for (std::size_t i = 0; i < k; ++i) grid *= static_cast<double>(d + 1);
    if (grid > 4096) throw EngineError("invertibility search too large");
    std::fill(c.begin(), c.end(), 0);
    while (true) {
        std::size_t i = 0;
        while (i < k && c[i] == static_cast<long>(d)) c[i++] = 0;
        if (i == k) return std::nullopt;
        ++c[i];
        if (auto t = invertible(c)) return t;
    }
}

inline bool is_isomorphic(const HeckeModule& a, const HeckeModule& b) {
    if (a.m != b.m || a.dim != b.dim) return false;
    if (a.dim == 0) return true;
    if (weights(a) != weights(b)) return false;
    if (a.dim <= 64 && sm_character_decompose(a) != sm_character_decompose(b)) return false;
    const auto homs = a.cyclic ? hom_space(a, b) : b.cyclic ? hom_space(b, a) : hom_space(a, b);
    return find_invertible(homs).has_value();
}

// Basis of the algebra image as flattened matrices; nullopt past the cap.
inline std::optional<std::vector<Matrix>> algebra_image(const HeckeModule& p, std::size_t max_dim = 12) {
    const std::size_t d = p.dim;
    if (d > max_dim) return std::nullopt;
    auto flatten = [d](const Matrix& a) {
        RationalVector v(d * d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) v[i * d + j] = a(i, j);
        return v;
    };
    LeadBasis basis(d * d);
    std::vector<Matrix> elements;
    std::deque<Matrix> queue;
    Matrix id = Matrix::identity(d);
    if (d == 0) return elements;
    basis.insert(flatten(id));
    elements.push_back(id);
    queue.push_back(id);
    const auto gens = p.generators();
    while (!queue.empty() && basis.size() < d * d) {
        Matrix x = std::move(queue.front());
        queue.pop_front();
        for (auto* g : gens) {
            Matrix z = *g * x;
            if (basis.insert(flatten(z))) {
                elements.push_back(z);
                queue.push_back(std::move(z));
            }
        }
    }
    return elements;
}

// Trace-form radical {b : tr(b B) = 0} of the algebra image, as matrices.
inline std::vector<Matrix> algebra_radical(const std::vector<Matrix>& elements) {
    const std::size_t k = elements.size();
    Matrix gram(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i; j < k; ++j) {
            gram(i, j) = (elements[i] * elements[j]).trace();
            gram(j, i) = gram(i, j);
        }
    Matrix null = nullspace(gram);
    std::vector<Matrix> out;
    for (std::size_t c = 0; c < null.cols(); ++c) {
        Matrix r(elements.front().rows(), elements.front().cols());
        for (std::size_t i = 0; i < k; ++i)
            if (sgn(null(i, c)) != 0) r += elements[i] * null(i, c);
        out.push_back(std::move(r));
    }
    return out;
}

struct IrreducibilityReport {
    bool irreducible = false;
    bool norton = false;
    std::optional<std::size_t> algebra_dim;
    std::optional<std::size_t> radical_dim;
};

namespace detail {

inline HeckeModule transposed(const HeckeModule& p) {
    HeckeModule t = p;
    for (auto& x : t.s) x = x.transpose();
    for (auto& x : t.y) x = x.transpose();
    t.cyclic.reset();
    return t;
}

inline Matrix joint_eigenvectors(const std::vector<Matrix>& ys, const RationalVector& chi, bool transpose) {
    const std::size_t d = ys.front().rows();
    Matrix stacked(ys.size() * d, d);
    for (std::size_t j = 0; j < ys.size(); ++j)
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c) {
                Rational v = transpose ? ys[j](c, r) : ys[j](r, c);
                if (r == c) v -= chi[j];
                stacked(j * d + r, c) = v;
            }
    return nullspace(stacked);
}

// Norton's argument with the commuting family y_j - chi_j in place of a single
// theta: a one-dimensional joint eigenspace (for the action and for its
// transpose) whose vector generates decides irreducibility.
inline std::optional<bool> joint_norton(const HeckeModule& p, const WeightTable& ws) {
    if (p.m == 0) return std::nullopt;
    std::vector<std::pair<std::size_t, RationalVector>> order;
    for (auto& [chi, mult] : ws) order.emplace_back(mult, chi);
    std::sort(order.begin(), order.end());
    for (auto& [mult, chi] : order) {
        Matrix ker = joint_eigenvectors(p.y, chi, false);
        if (ker.cols() != 1) continue;
        if (generated_submodule(p, {ker.column(0)}).size() < p.dim) return false;
        Matrix kert = joint_eigenvectors(p.y, chi, true);
        if (kert.cols() != 1) continue;
        return generated_submodule(transposed(p), {kert.column(0)}).size() == p.dim;
    }
    return std::nullopt;
}

// Norton's test with theta = sum_j r_j (y_j - chi_j): a one-dimensional kernel
// whose vector generates, and whose transpose kernel generates under the
// transposed action, proves absolute irreducibility. nullopt when no suitable
// theta is found.
inline std::optional<bool> norton(const HeckeModule& p) {
    const std::size_t d = p.dim;
    const auto ws = weights(p);
    const std::vector<std::vector<long>> mixes = {{1, 2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31},
                                                  {1, -3, 9, -27, 81, -243, 729, -2187, 6561, -19683, 59049, -177147}};
    for (auto& [chi, mult] : ws)
        for (auto& mix : mixes) {
            Matrix theta(d, d);
            for (std::size_t j = 0; j < p.m; ++j)
                theta += (p.y[j] - Matrix::scalar(d, chi[j])) * Rational(mix[j % mix.size()] + static_cast<long>(j / mix.size()));
            Matrix ker = nullspace(theta);
            if (ker.cols() != 1) continue;
            if (generated_submodule(p, {ker.column(0)}).size() < d) return false;
            Matrix kert = nullspace(theta.transpose());
            if (generated_submodule(transposed(p), {kert.column(0)}).size() < d) return false;
            return true;
        }
    return joint_norton(p, ws);
}

}  // namespace detail

inline IrreducibilityReport irreducibility_report(const HeckeModule& p, std::size_t burnside_cap = 12) {
    IrreducibilityReport r;
    if (p.dim == 0) return r;
    if (auto n = detail::norton(p)) {
        r.norton = *n;
        r.irreducible = *n;
    }
    if (auto b = algebra_image(p, burnside_cap)) {
        r.algebra_dim = b->size();
        r.radical_dim = algebra_radical(*b).size();
        const bool full = *r.algebra_dim == p.dim * p.dim && *r.radical_dim == 0;
        if (!r.norton) r.irreducible = full;
        else if (!full) throw EngineError("Norton test and algebra image disagree");
    } else if (!r.norton && p.dim > 1) {
        throw EngineError("irreducibility test inconclusive");
    }
    return r;
}

inline bool is_absolutely_irreducible(const HeckeModule& p) { return irreducibility_report(p).irreducible; }

inline bool non_preceding_order(const std::vector<Segment>& factors) {
    for (std::size_t i = 0; i < factors.size(); ++i)
        for (std::size_t j = i + 1; j < factors.size(); ++j)
            if (precedes(factors[i], factors[j])) return false;
    return true;
}

struct IntertwinerImage {
    HeckeModule target;  // the product in reversed order
    LeadBasis image;
};

// Image of the unique (up to scalar) map from the product in the given order to
// the product in the reversed order; for a non-preceding order this is the
// simple quotient.
inline IntertwinerImage intertwiner_image(const std::vector<Segment>& factors, const std::vector<Permutation>& words) {
    std::vector<Segment> reversed(factors.rbegin(), factors.rend());
    HeckeModule target = product_of_steinbergs(reversed);
    Matrix sols = frobenius_vectors(factors, target);
    if (sols.cols() != 1) throw EngineError("not unique maximal");
    const RationalVector n = sols.column(0);
    ModuleAction act(target);
    LeadBasis image(target.dim);
    for (auto& w : words) image.insert(act.apply(w, n));
    return {std::move(target), std::move(image)};
}

inline std::vector<Permutation> standard_words(const std::vector<Segment>& factors) {
    std::vector<std::size_t> parts;
    for (auto& f : factors) parts.push_back(static_cast<std::size_t>(f.length()));
    if (parts.empty()) return {Permutation::identity(0)};
    return min_coset_reps(Composition(parts));
}

inline WeightTable simple_character(const Multisegment& ms) {
    static std::mutex mutex;
    static std::map<Multisegment, WeightTable> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(ms); it != cache.end()) return it->second;
    }
    WeightTable out;
    if (ms.empty()) out[{}] = 1;
    else {
        const auto factors = normalize_order(ms);
        auto [target, image] = intertwiner_image(factors, standard_words(factors));
        for (auto l : image.leads()) {
            RationalVector w;
            for (auto& y : target.y) w.push_back(y(l, l));
            ++out[w];
        }
    }
    std::lock_guard lock(mutex);
    cache.emplace(ms, out);
    return out;
}

namespace detail {

inline HeckeModule trace_radical_quotient(const HeckeModule& p) {
    auto elements = algebra_image(p, 24);
    if (!elements) throw CapExceeded();
    auto rad = algebra_radical(*elements);
    std::vector<RationalVector> span;
    for (auto& r : rad)
        for (std::size_t j = 0; j < p.dim; ++j) span.push_back(r.column(j));
    LeadBasis sub(p.dim);
    for (auto& v : span) sub.insert(v);
    HeckeModule q = quotient_module(p, sub);
    auto image = algebra_image(q, 24);
    if (q.dim == 0 || image->size() != q.dim * q.dim) throw EngineError("not unique maximal");
    return q;
}

}  // namespace detail

// Unique simple quotient. Products of Steinbergs in a non-preceding order go
// through the intertwiner to the reversed product; other modules use the
// trace-form radical of the algebra image.
inline HeckeModule simple_quotient(const HeckeModule& p) {
    if (p.cyclic && p.m == 0) return p;
    if (p.cyclic && non_preceding_order(p.cyclic->factors)) {
        auto [target, image] = intertwiner_image(p.cyclic->factors, p.cyclic->basis_words);
        HeckeModule out = restrict_module(target, image);
        out.label = "St" + Multisegment(p.cyclic->factors).str();
        return out;
    }
    return detail::trace_radical_quotient(p);
}

// When the standard module is over the cap, St(m) is rebuilt from St(m') and the
// last segment: any nonzero St(m') x St(D) -> St(D) x St(m') composes to the
// standard intertwiner, so its image is St(m).
inline HeckeModule simple_module(const Multisegment& ms) {
    if (ms.empty()) return unit_module();
    const auto factors = normalize_order(ms);
    if (factors.size() > 1 && multinomial_dim(factors) > limits().max_dim.load()) {
        const Multisegment rest(std::vector<Segment>(factors.begin(), factors.end() - 1));
        const HeckeModule head = simple_module(rest), tail = steinberg(factors.back());
        const HeckeModule source = induce(head, tail), target = induce(tail, head);
        const auto homs = hom_space(source, target);
        require(!homs.empty(), "simple_module: no intertwiner");
        std::vector<RationalVector> columns;
        for (std::size_t c = 0; c < source.dim; ++c) columns.push_back(homs.front().column(c));
        HeckeModule out = restrict_module(target, generated_submodule(target, columns));
        out.label = "St" + ms.str();
        return out;
    }
    auto [target, image] = intertwiner_image(factors, standard_words(factors));
    HeckeModule out = restrict_module(target, image);
    out.label = "St" + ms.str();
    return out;
}

// Matches the weight character against simple characters of candidates with the
// same content whose leading weight occurs.
inline CompositionTable composition_factors(const HeckeModule& p) {
    CompositionTable out;
    if (p.dim == 0) return out;
    const auto ws = weights(p);
    if (p.m == 0) {
        out[Multisegment{}] = static_cast<long>(p.dim);
        return out;
    }
    std::map<RationalVector, WeightTable> by_content;
    for (auto& [w, k] : ws) {
        RationalVector c = w;
        std::sort(c.begin(), c.end());
        by_content[c][w] = k;
    }
    for (auto& [content, part] : by_content) {
        std::vector<Multisegment> candidates;
        std::vector<WeightTable> chars;
        for (auto& ms : multisegments_with_content(content)) {
            if (!part.count(ms.leading_weight())) continue;
            candidates.push_back(ms);
            chars.push_back(simple_character(ms));
        }
        std::map<RationalVector, std::size_t> row_of;
        for (auto& [w, k] : part) row_of.emplace(w, row_of.size());
        for (auto& ch : chars)
            for (auto& [w, k] : ch) row_of.emplace(w, row_of.size());
        Matrix a(row_of.size(), candidates.size()), b(row_of.size(), 1);
        for (std::size_t c = 0; c < chars.size(); ++c)
            for (auto& [w, k] : chars[c]) a(row_of.at(w), c) = static_cast<long>(k);
        for (auto& [w, k] : part) b(row_of.at(w), 0) = static_cast<long>(k);
        auto sol = solve_linear(a, b);
        if (!sol.consistent || sol.nullspace.cols() != 0) throw EngineError("candidate match failed");
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            const Rational& x = sol.particular(c, 0);
            if (!is_integer(x) || x < 0) throw EngineError("candidate match failed");
            if (sgn(x) != 0) out[candidates[c]] += to_long(x);
        }
    }
    return out;
}

inline long total_multiplicity(const CompositionTable& t) {
    long n = 0;
    for (auto& [ms, k] : t) n += k;
    return n;
}

struct FormReport {
    bool exists = false;
    std::optional<Matrix> gram;
    std::optional<Signature> signature;
    bool unitary = false;
    std::size_t solution_dim = 0;
    bool unique() const { return solution_dim == 1; }
};

// Symmetric S with S rho(g) = rho(g^*)^T S for all generators.
inline FormReport hermitian_form(const HeckeModule& p) {
    FormReport report;
    const std::size_t d = p.dim;
    if (d == 0) return report;
    std::vector<std::vector<std::size_t>> idx(d, std::vector<std::size_t>(d));
    std::size_t n = 0;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) idx[i][j] = idx[j][i] = n++;
    HomogeneousSystem sys(n);
    auto add_generator = [&](const Matrix& a, const Matrix& bt) {
        // (S A)(i,j) - (B S)(i,j), with B^T given
        SparseMatrix ca(a), rb(bt);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                HomogeneousSystem::SparseRow row;
                auto bump = [&row](std::size_t key, const Rational& v) {
                    auto [it, inserted] = row.try_emplace(key, v);
                    if (!inserted) {
                        it->second += v;
                        if (sgn(it->second) == 0) row.erase(it);
                    }
                };
                for (auto& [k, v] : ca.column(j)) bump(idx[i][k], v);
                for (auto& [k, v] : rb.column(i)) bump(idx[k][j], -v);
                if (!row.empty()) sys.add(std::move(row));
            }
    };
    for (auto& s : p.s) add_generator(s, s);
    const Matrix w0 = group_matrix(p, Permutation::longest(p.m));
    for (std::size_t j = 1; j <= p.m; ++j) {
        Matrix ystar = -(w0 * p.y[p.m - j] * w0);
        add_generator(p.y[j - 1], ystar);
    }
    Matrix sols = sys.solutions();
    report.solution_dim = sols.cols();
    std::vector<Matrix> forms;
    for (std::size_t k = 0; k < sols.cols(); ++k) {
        Matrix s(d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) s(i, j) = sols(idx[i][j], k);
        forms.push_back(std::move(s));
    }
    if (forms.size() == 1) {
        Matrix s = forms.front();
        Signature sig = symmetric_signature(s);
        if (sig.negative > sig.positive) {
            s = -s;
            std::swap(sig.positive, sig.negative);
        }
        report.exists = sig.zero == 0;
        report.unitary = report.exists && sig.negative == 0;
        report.gram = std::move(s);
        report.signature = sig;
    } else if (!forms.empty()) {
        report.exists = find_invertible(forms).has_value();
    }
    return report;
}

namespace detail {

inline Permutation embed(const Permutation& w, std::size_t m) {
    std::vector<int> line = w.one_line();
    for (std::size_t k = w.size() + 1; k <= m; ++k) line.push_back(static_cast<int>(k));
    return Permutation(line);
}

// which row and column of the row-reading tableau of shape tau holds k
inline std::pair<std::vector<int>, std::vector<int>> tableau_cells(const Partition& tau) {
    std::vector<int> row, col;
    for (std::size_t r = 0; r < tau.parts.size(); ++r)
        for (int c = 0; c < tau.parts[r]; ++c) {
            row.push_back(static_cast<int>(r));
            col.push_back(c);
        }
    return {row, col};
}

}  // namespace detail

// tau-multiplicity space of the S_i generated by s_1..s_{i-1}, carrying
// s_k -> s_{i+k}, y_k -> y_{i+k}; realized as the image of a Young symmetrizer.
inline HeckeModule bz_derivative(const HeckeModule& p, const Partition& tau) {
    const std::size_t i = static_cast<std::size_t>(tau.size());
    require(i <= p.m, "bz_derivative: |tau| > m");
    if (i == 0) return p;
    const std::size_t d = p.dim, m = p.m;
    ModuleAction act(p);
    auto [row, col] = detail::tableau_cells(tau);
    Matrix sym(d, d), anti(d, d), central(d, d);
    for (auto& w : all_permutations(i)) {
        bool keeps_rows = true, keeps_cols = true;
        for (std::size_t k = 0; k < i; ++k) {
            const std::size_t t = static_cast<std::size_t>(w(static_cast<int>(k + 1)) - 1);
            keeps_rows = keeps_rows && row[t] == row[k];
            keeps_cols = keeps_cols && col[t] == col[k];
        }
        const Rational chi = sm_character(tau, cycle_type(w));
        if (!keeps_rows && !keeps_cols && sgn(chi) == 0) continue;
        const Matrix g = act.group_matrix(detail::embed(w, m));
        if (keeps_rows) sym += g;
        if (keeps_cols) anti += g * Rational(w.sign());
        if (sgn(chi) != 0) central += g * chi;
    }
    central *= Rational(hook_dimension(tau)) / Rational(factorial(static_cast<long>(i)));
    const Matrix c = anti * sym;
    LeadBasis image(d);
    for (std::size_t j = 0; j < d; ++j) image.insert(c.column(j));
    if (rank(central) != static_cast<std::size_t>(hook_dimension(tau).get_ui()) * image.size())
        throw EngineError("isotypic rank mismatch");
    HeckeModule out;
    out.m = m - i;
    out.dim = image.size();
    for (std::size_t k = 1; k + i < m; ++k) out.s.push_back(restrict_operator(act.s(i + k), image));
    for (std::size_t k = 1; k + i <= m; ++k) out.y.push_back(restrict_operator(act.y(i + k), image));
    std::string t;
    for (auto x : tau.parts) t += (t.empty() ? "" : ",") + std::to_string(x);
    out.label = "BZ_(" + t + ")(" + p.label + ")";
    out.spectrum = p.spectrum;
    return out;
}

inline Partition trivial_partition(int i) { return i ? Partition(std::vector<int>{i}) : Partition(); }
inline Partition sign_partition(int i) { return Partition(std::vector<int>(static_cast<std::size_t>(i), 1)); }

}  // namespace lefschetz
