#pragma once

#include "lefschetz/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace lefschetz {

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<Rational>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        a_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            require(row.size() == cols_, "ragged matrix literal");
            for (const auto& x : row) a_.push_back(x);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static Matrix scalar(std::size_t n, const Rational& c) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
        return m;
    }
    static Matrix diagonal(const RationalVector& d) {
        Matrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }
    // columns become the given vectors
    static Matrix from_columns(const std::vector<RationalVector>& cols, std::size_t rows) {
        Matrix m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            require(cols[j].size() == rows, "column length mismatch");
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    RationalVector column(std::size_t j) const {
        RationalVector v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    RationalVector row(std::size_t i) const {
        return RationalVector(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
    }

    bool is_zero() const {
        return std::all_of(a_.begin(), a_.end(), [](const Rational& x) { return sgn(x) == 0; });
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Rational trace() const {
        require(square(), "trace of non-square matrix");
        Rational t = 0;
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    Matrix& operator+=(const Matrix& o) {
        require(rows_ == o.rows_ && cols_ == o.cols_, "shape mismatch in +");
        for (std::size_t k = 0; k < a_.size(); ++k)
            if (sgn(o.a_[k]) != 0) a_[k] += o.a_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        require(rows_ == o.rows_ && cols_ == o.cols_, "shape mismatch in -");
        for (std::size_t k = 0; k < a_.size(); ++k)
            if (sgn(o.a_[k]) != 0) a_[k] -= o.a_[k];
        return *this;
    }
    Matrix& operator*=(const Rational& c) {
        for (auto& x : a_)
            if (sgn(x) != 0) x *= c;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator-(Matrix a) { return a *= Rational(-1); }
    friend Matrix operator*(Matrix a, const Rational& c) { return a *= c; }
    friend Matrix operator*(const Rational& c, Matrix a) { return a *= c; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        require(a.cols_ == b.rows_, "shape mismatch in *");
        Matrix c(a.rows_, b.cols_);
        // nonzero pattern of b, row by row
        std::vector<std::vector<std::size_t>> nz(b.rows_);
        for (std::size_t k = 0; k < b.rows_; ++k)
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (sgn(b(k, j)) != 0) nz[k].push_back(j);
        Rational t;
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Rational& aik = a(i, k);
                if (sgn(aik) == 0) continue;
                for (std::size_t j : nz[k]) {
                    t = aik * b(k, j);
                    c(i, j) += t;
                }
            }
        return c;
    }

    friend RationalVector operator*(const Matrix& a, const RationalVector& v) {
        require(a.cols_ == v.size(), "shape mismatch in matrix-vector product");
        RationalVector out(a.rows_);
        Rational t;
        for (std::size_t k = 0; k < a.cols_; ++k) {
            if (sgn(v[k]) == 0) continue;
            for (std::size_t i = 0; i < a.rows_; ++i) {
                const Rational& x = a(i, k);
                if (sgn(x) == 0) continue;
                t = x * v[k];
                out[i] += t;
            }
        }
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    // rows and columns picked by index lists
    Matrix select(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
        Matrix m(rs.size(), cs.size());
        for (std::size_t i = 0; i < rs.size(); ++i)
            for (std::size_t j = 0; j < cs.size(); ++j) m(i, j) = (*this)(rs[i], cs[j]);
        return m;
    }

    static Matrix hstack(const Matrix& a, const Matrix& b) {
        require(a.rows_ == b.rows_, "hstack row mismatch");
        Matrix m(a.rows_, a.cols_ + b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
            for (std::size_t j = 0; j < b.cols_; ++j) m(i, a.cols_ + j) = b(i, j);
        }
        return m;
    }

    static Matrix kron(const Matrix& a, const Matrix& b) {
        Matrix m(a.rows_ * b.rows_, a.cols_ * b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) {
                if (sgn(a(i, j)) == 0) continue;
                for (std::size_t k = 0; k < b.rows_; ++k)
                    for (std::size_t l = 0; l < b.cols_; ++l)
                        if (sgn(b(k, l)) != 0) m(i * b.rows_ + k, j * b.cols_ + l) = a(i, j) * b(k, l);
            }
        return m;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> a_;
};

inline bool is_upper_triangular(const Matrix& a) {
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < i && j < a.cols(); ++j)
            if (sgn(a(i, j)) != 0) return false;
    return true;
}

inline bool is_symmetric(const Matrix& a) {
    if (!a.square()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j)
            if (a(i, j) != a(j, i)) return false;
    return true;
}

struct Echelon {
    Matrix reduced;
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

// Reduced row echelon form, first nonzero entry in a column is the pivot.
inline Echelon rref(Matrix a) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    Rational f, t;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && sgn(a(p, c)) == 0) ++p;
        if (p == a.rows()) continue;
        if (p != r)
            for (std::size_t j = c; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
        Rational inv = 1 / a(r, c);
        for (std::size_t j = c; j < a.cols(); ++j)
            if (sgn(a(r, j)) != 0) a(r, j) *= inv;
        std::vector<std::size_t> support;
        for (std::size_t j = c; j < a.cols(); ++j)
            if (sgn(a(r, j)) != 0) support.push_back(j);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || sgn(a(i, c)) == 0) continue;
            f = a(i, c);
            for (std::size_t j : support) {
                t = f * a(r, j);
                a(i, j) -= t;
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(a), std::move(pivots)};
}

inline std::size_t rank(const Matrix& a) { return rref(a).pivots.size(); }

// Columns form a basis of {x : A x = 0}.
inline Matrix nullspace(const Matrix& a) {
    Echelon e = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto c : e.pivots) is_pivot[c] = true;
    std::vector<std::size_t> free;
    for (std::size_t c = 0; c < a.cols(); ++c)
        if (!is_pivot[c]) free.push_back(c);
    Matrix basis(a.cols(), free.size());
    for (std::size_t k = 0; k < free.size(); ++k) {
        basis(free[k], k) = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r) basis(e.pivots[r], k) = -e.reduced(r, free[k]);
    }
    return basis;
}

struct LinearSolution {
    bool consistent = false;
    Matrix particular;  // A.cols x B.cols
    Matrix nullspace;   // columns span ker A
};

inline LinearSolution solve_linear(const Matrix& a, const Matrix& b) {
    require(a.rows() == b.rows(), "solve_linear: A.rows != B.rows");
    Echelon e = rref(Matrix::hstack(a, b));
    LinearSolution out;
    for (auto c : e.pivots)
        if (c >= a.cols()) return out;
    out.consistent = true;
    out.particular = Matrix(a.cols(), b.cols());
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
        for (std::size_t j = 0; j < b.cols(); ++j) out.particular(e.pivots[r], j) = e.reduced(r, a.cols() + j);
    out.nullspace = nullspace(a);
    return out;
}

inline Rational determinant(Matrix a) {
    require(a.square(), "determinant of non-square matrix");
    Rational det = 1, f, t;
    const std::size_t n = a.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(a(p, c)) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (std::size_t j = c; j < n; ++j) std::swap(a(p, j), a(c, j));
            det = -det;
        }
        det *= a(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (sgn(a(i, c)) == 0) continue;
            f = a(i, c) / a(c, c);
            for (std::size_t j = c; j < n; ++j) {
                if (sgn(a(c, j)) == 0) continue;
                t = f * a(c, j);
                a(i, j) -= t;
            }
        }
    }
    return det;
}

inline std::optional<Matrix> inverse(const Matrix& a) {
    require(a.square(), "inverse of non-square matrix");
    const std::size_t n = a.rows();
    Echelon e = rref(Matrix::hstack(a, Matrix::identity(n)));
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
    return inv;
}

// Basis (as columns) of the column span, taken from the original columns.
inline Matrix column_basis(const Matrix& a) {
    Echelon e = rref(a);
    Matrix out(a.rows(), e.pivots.size());
    for (std::size_t k = 0; k < e.pivots.size(); ++k)
        for (std::size_t i = 0; i < a.rows(); ++i) out(i, k) = a(i, e.pivots[k]);
    return out;
}

inline Matrix power(const Matrix& a, std::size_t k) {
    Matrix r = Matrix::identity(a.rows());
    for (std::size_t i = 0; i < k; ++i) r = r * a;
    return r;
}

// ker (A - lambda I)^n, n = A.rows(); the powers stop once the kernel stops growing.
inline Matrix generalized_eigenspace(const Matrix& a, const Rational& lambda) {
    require(a.square(), "generalized_eigenspace of non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return Matrix(0, 0);
    Matrix shifted = a - Matrix::scalar(n, lambda);
    Matrix p = shifted;
    std::size_t last = n - rank(p);
    for (std::size_t k = 1; k < n; ++k) {
        Matrix q = p * shifted;
        std::size_t dim = n - rank(q);
        if (dim == last) break;
        p = std::move(q);
        last = dim;
    }
    return nullspace(p);
}

struct Signature {
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t zero = 0;
    friend bool operator==(const Signature&, const Signature&) = default;
};

// Congruence diagonalization (Lagrange): S -> P^T S P, diagonal.
inline Signature symmetric_signature(Matrix s) {
    require(is_symmetric(s), "symmetric_signature: input not symmetric");
    const std::size_t n = s.rows();
    Signature sig;
    Rational f, t;
    for (std::size_t k = 0; k < n; ++k) {
        if (sgn(s(k, k)) == 0) {
            std::size_t p = k + 1;
            while (p < n && sgn(s(p, p)) == 0) ++p;
            if (p < n) {
                for (std::size_t j = 0; j < n; ++j) std::swap(s(k, j), s(p, j));
                for (std::size_t i = 0; i < n; ++i) std::swap(s(i, k), s(i, p));
            } else {
                std::size_t q = k + 1;
                while (q < n && sgn(s(k, q)) == 0) ++q;
                if (q == n) {
                    ++sig.zero;
                    continue;
                }
                // e_k <- e_k + e_q makes the diagonal entry 2 s(k,q)
                for (std::size_t j = 0; j < n; ++j) s(k, j) += s(q, j);
                for (std::size_t i = 0; i < n; ++i) s(i, k) += s(i, q);
            }
        }
        const Rational pivot = s(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (sgn(s(i, k)) == 0) continue;
            f = s(i, k) / pivot;
            for (std::size_t j = k; j < n; ++j) {
                t = f * s(k, j);
                s(i, j) -= t;
            }
            for (std::size_t j = k; j < n; ++j) s(j, i) = s(i, j);
        }
        if (sgn(pivot) > 0) ++sig.positive;
        else ++sig.negative;
    }
    return sig;
}

// Column-compressed copy for repeated matrix-vector products.
class SparseMatrix {
public:
    SparseMatrix() = default;
    explicit SparseMatrix(const Matrix& a) : rows_(a.rows()), cols_(a.cols()) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            Column c;
            for (std::size_t i = 0; i < a.rows(); ++i)
                if (sgn(a(i, j)) != 0) c.emplace_back(i, a(i, j));
            entries_.push_back(std::move(c));
        }
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    friend RationalVector operator*(const SparseMatrix& a, const RationalVector& v) {
        RationalVector out(a.rows_);
        Rational t;
        for (std::size_t j = 0; j < a.cols_; ++j) {
            if (sgn(v[j]) == 0) continue;
            for (auto& [i, x] : a.entries_[j]) {
                t = x * v[j];
                out[i] += t;
            }
        }
        return out;
    }

    // (row, value) pairs of column j
    const auto& column(std::size_t j) const { return entries_[j]; }

private:
    using Column = std::vector<std::pair<std::size_t, Rational>>;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Column> entries_;
};

// Coefficients c_0..c_n of det(x I - A), c_n = 1 (Faddeev-LeVerrier).
inline RationalVector characteristic_polynomial(const Matrix& a) {
    require(a.square(), "characteristic_polynomial of non-square matrix");
    const std::size_t n = a.rows();
    RationalVector c(n + 1);
    c[n] = 1;
    Matrix m(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        m = a * m + Matrix::scalar(n, c[n - k + 1]);
        c[n - k] = -(a * m).trace() / static_cast<long>(k);
    }
    return c;
}

namespace detail {
inline std::vector<mpz_class> divisors(mpz_class n) {
    n = abs(n);
    require(n <= mpz_class("1000000000000"), "rational_roots: coefficient too large to factor");
    std::vector<mpz_class> out;
    for (mpz_class d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n) out.push_back(n / d);
        }
    return out;
}
}  // namespace detail

// Distinct rational roots of sum c_k x^k, by the rational root theorem.
inline std::vector<Rational> rational_roots(RationalVector c) {
    while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
    std::vector<Rational> roots;
    if (c.size() <= 1) return roots;
    std::size_t low = 0;
    while (sgn(c[low]) == 0) ++low;
    if (low > 0) roots.push_back(0);
    mpz_class l = 1;
    for (auto& x : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    std::vector<mpz_class> z;
    for (std::size_t k = low; k < c.size(); ++k) {
        Rational t = c[k] * l;
        z.push_back(t.get_num());
    }
    auto eval = [&](const Rational& x) {
        Rational acc = 0;
        for (auto it = z.rbegin(); it != z.rend(); ++it) acc = acc * x + Rational(*it);
        return acc;
    };
    for (auto& p : detail::divisors(z.front()))
        for (auto& q : detail::divisors(z.back()))
            for (int s : {1, -1}) {
                Rational x(s * p, q);
                x.canonicalize();
                if (sgn(eval(x)) == 0 && std::find(roots.begin(), roots.end(), x) == roots.end()) roots.push_back(x);
            }
    std::sort(roots.begin(), roots.end());
    return roots;
}

// Incremental elimination for large sparse homogeneous systems.
class HomogeneousSystem {
public:
    using SparseRow = std::map<std::size_t, Rational>;

    explicit HomogeneousSystem(std::size_t unknowns) : n_(unknowns) {}

    std::size_t unknowns() const { return n_; }
    std::size_t rank() const { return pivot_rows_.size(); }

    void add(SparseRow row) {
        reduce(row);
        while (!row.empty() && sgn(row.begin()->second) == 0) row.erase(row.begin());
        if (row.empty()) return;
        auto lead = row.begin()->first;
        Rational inv = 1 / row.begin()->second;
        for (auto& [c, v] : row) v *= inv;
        pivot_rows_.emplace(lead, std::move(row));
    }

    // Columns span the solution space.
    Matrix solutions() {
        // back substitution to full reduction, highest pivot first
        for (auto it = pivot_rows_.rbegin(); it != pivot_rows_.rend(); ++it) {
            SparseRow& row = it->second;
            std::vector<std::size_t> cols;
            for (auto& [c, v] : row)
                if (c != it->first) cols.push_back(c);
            for (auto c : cols) {
                auto p = pivot_rows_.find(c);
                if (p == pivot_rows_.end()) continue;
                auto rc = row.find(c);
                if (rc == row.end()) continue;
                Rational f = rc->second;
                axpy(row, p->second, -f);
            }
        }
        std::vector<std::size_t> free;
        for (std::size_t c = 0; c < n_; ++c)
            if (!pivot_rows_.count(c)) free.push_back(c);
        std::map<std::size_t, std::size_t> free_index;
        for (std::size_t k = 0; k < free.size(); ++k) free_index[free[k]] = k;
        Matrix basis(n_, free.size());
        for (std::size_t k = 0; k < free.size(); ++k) basis(free[k], k) = 1;
        for (auto& [lead, row] : pivot_rows_)
            for (auto& [c, v] : row)
                if (c != lead) basis(lead, free_index.at(c)) = -v;
        return basis;
    }

private:
    static void axpy(SparseRow& row, const SparseRow& src, const Rational& f) {
        Rational t;
        for (auto& [c, v] : src) {
            t = f * v;
            auto [it, inserted] = row.try_emplace(c, t);
            if (!inserted) {
                it->second += t;
                if (sgn(it->second) == 0) row.erase(it);
            }
        }
    }

    void reduce(SparseRow& row) const {
        auto it = row.begin();
        while (it != row.end()) {
            if (sgn(it->second) == 0) {
                it = row.erase(it);
                continue;
            }
            auto p = pivot_rows_.find(it->first);
            if (p == pivot_rows_.end()) {
                ++it;
                continue;
            }
            std::size_t col = it->first;
            Rational f = -it->second;
            axpy(row, p->second, f);
            it = row.upper_bound(col);
        }
    }

    std::size_t n_;
    std::map<std::size_t, SparseRow> pivot_rows_;
};

}  // namespace lefschetz
