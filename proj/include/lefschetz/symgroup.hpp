#pragma once

#include "lefschetz/rational.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <vector>

namespace lefschetz {

// One-line notation, values 1..m; composition is (u*v)(k) = u(v(k)).
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> one_line) : w_(std::move(one_line)) {
        std::vector<bool> seen(w_.size() + 1, false);
        for (int x : w_) {
            require(x >= 1 && x <= static_cast<int>(w_.size()) && !seen[x], "not a permutation");
            seen[x] = true;
        }
    }
    static Permutation identity(std::size_t m) {
        std::vector<int> w(m);
        std::iota(w.begin(), w.end(), 1);
        return Permutation(std::move(w), Trusted{});
    }
    // s_i swaps i and i+1
    static Permutation simple(std::size_t m, std::size_t i) {
        require(i >= 1 && i < m, "simple reflection index out of range");
        auto p = identity(m);
        std::swap(p.w_[i - 1], p.w_[i]);
        return p;
    }
    static Permutation longest(std::size_t m) {
        std::vector<int> w(m);
        for (std::size_t k = 0; k < m; ++k) w[k] = static_cast<int>(m - k);
        return Permutation(std::move(w), Trusted{});
    }

    std::size_t size() const { return w_.size(); }
    int operator()(int k) const { return w_[k - 1]; }
    const std::vector<int>& one_line() const { return w_; }
    bool is_identity() const {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k] != static_cast<int>(k + 1)) return false;
        return true;
    }

    Permutation inverse() const {
        std::vector<int> inv(w_.size());
        for (std::size_t k = 0; k < w_.size(); ++k) inv[w_[k] - 1] = static_cast<int>(k + 1);
        return Permutation(std::move(inv), Trusted{});
    }

    friend Permutation operator*(const Permutation& u, const Permutation& v) {
        require(u.size() == v.size(), "permutation size mismatch");
        std::vector<int> w(v.size());
        for (std::size_t k = 0; k < v.size(); ++k) w[k] = u.w_[v.w_[k] - 1];
        return Permutation(std::move(w), Trusted{});
    }

    // s_i * w: swap the values i and i+1
    Permutation left_simple(std::size_t i) const {
        auto p = *this;
        for (auto& x : p.w_) {
            if (x == static_cast<int>(i)) x = static_cast<int>(i + 1);
            else if (x == static_cast<int>(i + 1)) x = static_cast<int>(i);
        }
        return p;
    }
    // w * s_i: swap positions i and i+1
    Permutation right_simple(std::size_t i) const {
        auto p = *this;
        std::swap(p.w_[i - 1], p.w_[i]);
        return p;
    }

    std::size_t length() const {
        std::size_t inv = 0;
        for (std::size_t i = 0; i < w_.size(); ++i)
            for (std::size_t j = i + 1; j < w_.size(); ++j)
                if (w_[i] > w_[j]) ++inv;
        return inv;
    }
    int sign() const { return length() % 2 ? -1 : 1; }

    // w = s_{r[0]} s_{r[1]} ... , reduced
    std::vector<std::size_t> reduced_word() const {
        std::vector<std::size_t> word;
        Permutation p = *this;
        for (;;) {
            std::size_t i = 1;
            while (i < p.size() && p.w_[i - 1] < p.w_[i]) ++i;
            if (i >= p.size()) break;
            word.push_back(i);
            p = p.right_simple(i);
        }
        std::reverse(word.begin(), word.end());
        return word;
    }

    // embed into S_total acting on positions offset+1..offset+size
    Permutation shifted(std::size_t offset, std::size_t total) const {
        auto p = identity(total);
        for (std::size_t k = 0; k < w_.size(); ++k) p.w_[offset + k] = w_[k] + static_cast<int>(offset);
        return p;
    }

    friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
    struct Trusted {};
    Permutation(std::vector<int> w, Trusted) : w_(std::move(w)) {}
    std::vector<int> w_;
};

inline std::vector<Permutation> all_permutations(std::size_t m) {
    std::vector<Permutation> out;
    std::vector<int> w(m);
    std::iota(w.begin(), w.end(), 1);
    do out.emplace_back(w);
    while (std::next_permutation(w.begin(), w.end()));
    return out;
}

struct Partition {
    std::vector<int> parts;

    Partition() = default;
    explicit Partition(std::vector<int> p) : parts(std::move(p)) {
        while (!parts.empty() && parts.back() == 0) parts.pop_back();
        for (std::size_t i = 0; i < parts.size(); ++i) {
            require(parts[i] > 0, "partition parts must be positive");
            require(i == 0 || parts[i] <= parts[i - 1], "partition parts must be weakly decreasing");
        }
    }
    int size() const { return std::accumulate(parts.begin(), parts.end(), 0); }
    std::size_t length() const { return parts.size(); }
    Partition transpose() const {
        std::vector<int> t;
        for (int c = 1; !parts.empty() && c <= parts.front(); ++c) {
            int h = 0;
            for (int p : parts) h += p >= c;
            t.push_back(h);
        }
        return Partition(std::move(t));
    }
    friend auto operator<=>(const Partition&, const Partition&) = default;
};

struct Composition {
    std::vector<std::size_t> parts;
    explicit Composition(std::vector<std::size_t> p) : parts(std::move(p)) {
        for (auto x : parts) require(x >= 1, "composition parts must be positive");
    }
    std::size_t total() const { return std::accumulate(parts.begin(), parts.end(), std::size_t{0}); }
};

// Partitions of m, reverse lexicographic (m) first.
inline std::vector<Partition> partitions_of(int m) {
    std::vector<Partition> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int rest, int max_part) {
        if (rest == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int p = std::min(rest, max_part); p >= 1; --p) {
            cur.push_back(p);
            rec(rest - p, p);
            cur.pop_back();
        }
    };
    rec(m, m);
    return out;
}

inline Partition cycle_type(const Permutation& w) {
    std::vector<bool> seen(w.size() + 1, false);
    std::vector<int> cycles;
    for (int k = 1; k <= static_cast<int>(w.size()); ++k) {
        if (seen[k]) continue;
        int len = 0;
        for (int j = k; !seen[j]; j = w(j)) {
            seen[j] = true;
            ++len;
        }
        cycles.push_back(len);
    }
    std::sort(cycles.rbegin(), cycles.rend());
    return Partition(std::move(cycles));
}

// Product of consecutive cycles (1..c1)(c1+1..c1+c2)...
inline Permutation cycle_representative(const Partition& type) {
    const auto m = static_cast<std::size_t>(type.size());
    std::vector<int> w(m);
    std::size_t start = 0;
    for (int len : type.parts) {
        for (int k = 0; k < len; ++k) w[start + k] = static_cast<int>(start + (k + 1) % len + 1);
        start += len;
    }
    return Permutation(std::move(w));
}

inline mpz_class factorial(long n) {
    mpz_class f = 1;
    for (long k = 2; k <= n; ++k) f *= k;
    return f;
}

inline mpz_class centralizer_order(const Partition& type) {
    std::map<int, long> mult;
    for (int p : type.parts) ++mult[p];
    mpz_class z = 1;
    for (auto [k, a] : mult) {
        mpz_class kp;
        mpz_ui_pow_ui(kp.get_mpz_t(), k, a);
        z *= kp * factorial(a);
    }
    return z;
}

inline mpz_class class_size(const Partition& type) { return factorial(type.size()) / centralizer_order(type); }

// Minimal-length representatives of the left cosets w (S_{c1} x ... x S_{ck}):
// exactly the w increasing on every block of positions. Sorted by length, then one-line.
inline std::vector<Permutation> min_coset_reps(const Composition& c) {
    require(!c.parts.empty(), "min_coset_reps: empty composition");
    const std::size_t m = c.total();
    std::vector<Permutation> out;
    std::vector<int> w(m);
    std::vector<bool> used(m + 1, false);
    std::vector<std::size_t> block_of(m), block_start(c.parts.size());
    for (std::size_t b = 0, pos = 0; b < c.parts.size(); ++b) {
        block_start[b] = pos;
        for (std::size_t k = 0; k < c.parts[b]; ++k) block_of[pos++] = b;
    }
    std::function<void(std::size_t)> rec = [&](std::size_t pos) {
        if (pos == m) {
            out.emplace_back(w);
            return;
        }
        int lo = pos == block_start[block_of[pos]] ? 1 : w[pos - 1] + 1;
        for (int v = lo; v <= static_cast<int>(m); ++v) {
            if (used[v]) continue;
            used[v] = true;
            w[pos] = v;
            rec(pos + 1);
            used[v] = false;
        }
    };
    rec(0);
    std::stable_sort(out.begin(), out.end(), [](const Permutation& a, const Permutation& b) {
        auto la = a.length(), lb = b.length();
        return la != lb ? la < lb : a < b;
    });
    return out;
}

// u = rep * sigma with rep increasing on blocks and sigma in the Young subgroup
inline std::pair<Permutation, Permutation> split_coset(const Permutation& u, const Composition& c) {
    std::vector<int> rep = u.one_line();
    std::size_t pos = 0;
    for (auto len : c.parts) {
        std::sort(rep.begin() + pos, rep.begin() + pos + len);
        pos += len;
    }
    Permutation r(std::move(rep));
    return {r, r.inverse() * u};
}

inline mpz_class hook_dimension(const Partition& p) {
    const auto t = p.transpose();
    mpz_class hooks = 1;
    for (std::size_t i = 0; i < p.parts.size(); ++i)
        for (int j = 0; j < p.parts[i]; ++j) hooks *= (p.parts[i] - j - 1) + (t.parts[j] - static_cast<int>(i) - 1) + 1;
    return factorial(p.size()) / hooks;
}

namespace detail {

// Murnaghan-Nakayama on beta-sets
inline long mn_value(std::vector<int> beta, const std::vector<int>& cycles, std::size_t k,
                     std::map<std::pair<std::vector<int>, std::size_t>, long>& memo) {
    if (k == cycles.size()) return 1;
    auto key = std::make_pair(beta, k);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const int r = cycles[k];
    long total = 0;
    for (std::size_t i = 0; i < beta.size(); ++i) {
        int target = beta[i] - r;
        if (target < 0 || std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
        int between = 0;
        for (int b : beta)
            if (b > target && b < beta[i]) ++between;
        auto next = beta;
        next[i] = target;
        std::sort(next.rbegin(), next.rend());
        long v = mn_value(next, cycles, k + 1, memo);
        total += between % 2 ? -v : v;
    }
    memo.emplace(std::move(key), total);
    return total;
}

}  // namespace detail

inline Rational sm_character(const Partition& p, const Partition& cycle_class) {
    require(p.size() == cycle_class.size(), "sm_character: size mismatch");
    static std::mutex mutex;
    static std::map<std::pair<Partition, Partition>, long> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find({p, cycle_class}); it != cache.end()) return it->second;
    }
    const std::size_t len = p.parts.size();
    std::vector<int> beta(len);
    for (std::size_t i = 0; i < len; ++i) beta[i] = p.parts[i] + static_cast<int>(len - 1 - i);
    std::map<std::pair<std::vector<int>, std::size_t>, long> memo;
    long v = detail::mn_value(beta, cycle_class.parts, 0, memo);
    std::lock_guard lock(mutex);
    cache.emplace(std::make_pair(p, cycle_class), v);
    return v;
}

// Integer weights; kostka and lr_coefficient accept negative entries via a common shift.
using Weight = std::vector<long>;

inline bool is_dominant(const Weight& w) {
    for (std::size_t i = 1; i < w.size(); ++i)
        if (w[i] > w[i - 1]) return false;
    return true;
}

// Number of Gelfand-Tsetlin patterns with top row gamma and weight mu.
inline mpz_class kostka(const Weight& gamma, const Weight& mu) {
    require(is_dominant(gamma), "kostka: highest weight not dominant");
    require(gamma.size() == mu.size(), "kostka: length mismatch");
    const std::size_t n = gamma.size();
    if (n == 0) return 1;
    long shift = std::min(0L, std::min(gamma.back(), *std::min_element(mu.begin(), mu.end())));
    Weight g = gamma, w = mu;
    for (auto& x : g) x -= shift;
    for (auto& x : w) x -= shift;
    if (std::accumulate(g.begin(), g.end(), 0L) != std::accumulate(w.begin(), w.end(), 0L)) return 0;
    // row k (length k) must sum to w_1 + ... + w_k
    std::vector<long> prefix(n + 1, 0);
    for (std::size_t k = 0; k < n; ++k) prefix[k + 1] = prefix[k] + w[k];
    std::map<std::vector<long>, mpz_class> memo;
    std::function<mpz_class(const std::vector<long>&)> count = [&](const std::vector<long>& row) -> mpz_class {
        const std::size_t len = row.size();
        if (len == 1) return row[0] == prefix[1] ? 1 : 0;
        if (auto it = memo.find(row); it != memo.end()) return it->second;
        mpz_class total = 0;
        std::vector<long> next(len - 1);
        std::function<void(std::size_t, long)> fill = [&](std::size_t i, long sum) {
            if (i == len - 1) {
                if (sum == prefix[len - 1]) total += count(next);
                return;
            }
            for (long v = row[i + 1]; v <= row[i]; ++v) {
                next[i] = v;
                fill(i + 1, sum + v);
            }
        };
        fill(0, 0);
        memo.emplace(row, total);
        return total;
    };
    return count(g);
}

// Littlewood-Richardson coefficient c^gamma_{a,b} for dominant integer weights.
inline mpz_class lr_coefficient(const Weight& a, const Weight& b, const Weight& gamma) {
    require(is_dominant(a) && is_dominant(b) && is_dominant(gamma), "lr_coefficient: weights not dominant");
    require(a.size() == b.size() && b.size() == gamma.size(), "lr_coefficient: length mismatch");
    const std::size_t n = a.size();
    if (n == 0) return 1;
    const long sa = -std::min(0L, a.back()), sb = -std::min(0L, b.back());
    Weight la = a, lb = b, lg = gamma;
    for (auto& x : la) x += sa;
    for (auto& x : lb) x += sb;
    for (auto& x : lg) x += sa + sb;
    if (std::accumulate(la.begin(), la.end(), 0L) + std::accumulate(lb.begin(), lb.end(), 0L) !=
        std::accumulate(lg.begin(), lg.end(), 0L))
        return 0;
    for (std::size_t i = 0; i < n; ++i)
        if (lg[i] < la[i] || lg[i] < 0) return 0;
    // x[r][k]: number of letters k+1 in row r of the skew shape gamma/a
    std::vector<std::vector<long>> x(n, std::vector<long>(n, 0));
    std::vector<long> used(n, 0);
    mpz_class total = 0;
    std::function<void(std::size_t, std::size_t, long)> rec = [&](std::size_t r, std::size_t k, long left) {
        if (r == n) {
            for (std::size_t j = 0; j < n; ++j)
                if (used[j] != lb[j]) return;
            ++total;
            return;
        }
        if (k > r || k == n) {
            if (left != 0) return;
            rec(r + 1, 0, r + 1 < n ? lg[r + 1] - la[r + 1] : 0);
            return;
        }
        // letters above k+1 still to place in this row need their own room; bound by the row remainder
        for (long c = 0; c <= left; ++c) {
            if (used[k] + c > lb[k]) break;
            // lattice: #(k+1) in rows <= r must not exceed #k in rows < r
            if (k > 0) {
                long prev = 0, mine = c;
                for (std::size_t q = 0; q < r; ++q) {
                    prev += x[q][k - 1];
                    mine += x[q][k];
                }
                if (mine > prev) break;
            }
            // column strictness against row r-1
            if (r > 0) {
                long upto_mine = la[r] + c, upto_above = la[r - 1];
                for (std::size_t q = 0; q < k; ++q) {
                    upto_mine += x[r][q];
                    upto_above += x[r - 1][q];
                }
                if (upto_mine > upto_above) break;
            }
            x[r][k] = c;
            used[k] += c;
            rec(r, k + 1, left - c);
            used[k] -= c;
            x[r][k] = 0;
        }
    };
    rec(0, 0, lg[0] - la[0]);
    return total;
}

// Weyl dimension of the GL_n irreducible with dominant integer highest weight.
inline mpz_class weyl_dimension(const Weight& gamma) {
    const std::size_t n = gamma.size();
    mpq_class num = 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            num *= mpq_class(gamma[i] - gamma[j] + static_cast<long>(j - i), static_cast<long>(j - i));
    num.canonicalize();
    return num.get_num();
}

}  // namespace lefschetz
