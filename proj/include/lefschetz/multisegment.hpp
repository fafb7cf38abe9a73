#pragma once

#include "lefschetz/rational.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace lefschetz {

// [a, b] = {a, a+1, ..., b}; b = a - 1 is the empty segment.
struct Segment {
    Rational a;
    Rational b;

    Segment() = default;
    Segment(Rational lo, Rational hi) : a(std::move(lo)), b(std::move(hi)) {
        Rational gap = b - a;
        require(is_integer(gap) && gap >= -1, "segment endpoints must differ by an integer >= -1");
    }

    bool empty() const { return b < a; }
    long length() const { return to_long(b - a) + 1; }
    bool contains(const Segment& o) const { return o.empty() || (!empty() && a <= o.a && o.b <= b); }
    RationalVector elements() const {
        RationalVector out;
        for (Rational x = a; x <= b; x += 1) out.push_back(x);
        return out;
    }
    std::string str() const { return "[" + to_string(a) + "," + to_string(b) + "]"; }

    friend bool operator==(const Segment&, const Segment&) = default;
};

inline bool same_class(const Segment& x, const Segment& y) { return is_integer(x.a - y.a); }

inline bool is_linked(const Segment& x, const Segment& y) {
    require(!x.empty() && !y.empty(), "is_linked: empty segment");
    if (!same_class(x, y)) return false;
    if (x.contains(y) || y.contains(x)) return false;
    // union is a segment: no gap between them
    const Segment& lo = x.a < y.a ? x : y;
    const Segment& hi = x.a < y.a ? y : x;
    return hi.a <= lo.b + 1;
}

// x precedes y: linked and x starts lower
inline bool precedes(const Segment& x, const Segment& y) { return is_linked(x, y) && x.a < y.a; }

inline Segment segment_union(const Segment& x, const Segment& y) {
    return {std::min(x.a, y.a), std::max(x.b, y.b)};
}
inline Segment segment_intersection(const Segment& x, const Segment& y) {
    Rational lo = std::max(x.a, y.a), hi = std::min(x.b, y.b);
    if (hi < lo) return {lo, lo - 1};
    return {lo, hi};
}

// a descending, then b descending
inline bool standard_before(const Segment& x, const Segment& y) {
    if (x.a != y.a) return x.a > y.a;
    return x.b > y.b;
}

class Multisegment {
public:
    Multisegment() = default;
    explicit Multisegment(std::vector<Segment> segs) {
        for (auto& s : segs)
            if (!s.empty()) segs_.push_back(std::move(s));
        std::sort(segs_.begin(), segs_.end(), standard_before);
    }

    const std::vector<Segment>& segments() const { return segs_; }
    std::size_t size() const { return segs_.size(); }
    bool empty() const { return segs_.empty(); }

    long total() const {
        long t = 0;
        for (auto& s : segs_) t += s.length();
        return t;
    }

    RationalVector content() const {
        RationalVector c;
        for (auto& s : segs_)
            for (auto& x : s.elements()) c.push_back(x);
        std::sort(c.begin(), c.end());
        return c;
    }

    // y-weight of the cyclic generator of the standard module
    RationalVector leading_weight() const {
        RationalVector w;
        for (auto& s : segs_)
            for (auto& x : s.elements()) w.push_back(x);
        return w;
    }

    std::string str() const {
        std::string out = "{";
        for (std::size_t i = 0; i < segs_.size(); ++i) out += (i ? "," : "") + segs_[i].str();
        return out + "}";
    }

    friend bool operator==(const Multisegment&, const Multisegment&) = default;
    friend bool operator<(const Multisegment& x, const Multisegment& y) {
        return std::lexicographical_compare(
            x.segs_.begin(), x.segs_.end(), y.segs_.begin(), y.segs_.end(),
            [](const Segment& p, const Segment& q) { return p.a != q.a ? p.a < q.a : p.b < q.b; });
    }

private:
    std::vector<Segment> segs_;
};

inline std::vector<Segment> normalize_order(const Multisegment& m) { return m.segments(); }

inline Multisegment from_params(const RationalVector& left, const RationalVector& right) {
    require(left.size() == right.size(), "from_params: length mismatch");
    std::vector<Segment> segs;
    for (std::size_t i = 0; i < left.size(); ++i) {
        Rational mu = left[i] - right[i];
        require(is_integer(mu), "from_params: non-integral difference");
        if (mu < 0) throw std::invalid_argument("negative-height coordinate");
        segs.emplace_back(right[i] + half(), left[i] - half());
    }
    return Multisegment(std::move(segs));
}

inline Multisegment left_shrink(const Multisegment& m) {
    std::vector<Segment> segs;
    for (auto& s : m.segments()) segs.emplace_back(s.a + 1, s.b);
    return Multisegment(std::move(segs));
}

inline bool is_ladder(const Multisegment& m) {
    const auto& s = m.segments();
    for (std::size_t i = 1; i < s.size(); ++i)
        if (!(s[i - 1].a > s[i].a && s[i - 1].b > s[i].b)) return false;
    return true;
}

// Symmetric multisegment {[-c_i, c_i]} with the given content, if any.
// The largest |x| left in the content must be the end of some [-c, c], so the search is greedy.
inline std::optional<Multisegment> symmetric_witness(RationalVector content) {
    std::multiset<Rational> rest(content.begin(), content.end());
    std::vector<Segment> out;
    while (!rest.empty()) {
        Rational lo = abs(*rest.begin()), hi = abs(*rest.rbegin());
        Rational c = std::max(lo, hi);
        if (!is_integer(2 * c)) return std::nullopt;
        Segment s(-c, c);
        for (auto& x : s.elements()) {
            auto it = rest.find(x);
            if (it == rest.end()) return std::nullopt;
            rest.erase(it);
        }
        out.push_back(s);
    }
    return Multisegment(std::move(out));
}

struct Classification {
    RationalVector content;
    bool is_ladder = false;
    bool is_twisted_elliptic = false;
    std::optional<Multisegment> temp_witness;
    long total = 0;
};

inline Classification classify(const Multisegment& m) {
    Classification c;
    c.content = m.content();
    c.is_ladder = is_ladder(m);
    c.temp_witness = symmetric_witness(c.content);
    c.is_twisted_elliptic = c.temp_witness.has_value();
    c.total = m.total();
    return c;
}

inline Multisegment speh(long n, long d) {
    require(n >= 1 && d >= 1, "speh: n, d >= 1");
    std::vector<Segment> segs;
    for (long j = 0; j < n; ++j)
        segs.emplace_back(make_rational(n - d, 2) - j, make_rational(n + d, 2) - 1 - j);
    return Multisegment(std::move(segs));
}

struct SpehFactor {
    long n;
    long d;
};

// Each list must be parity-uniform in n + d - 1, and the intervals
// [-n+d+1, n+d-1] must chain: top_i >= bottom_i > top_{i+1}.
inline bool dirac_series_test(std::vector<SpehFactor> evens, std::vector<SpehFactor> odds) {
    auto check = [](std::vector<SpehFactor> list) {
        for (auto& f : list) require(f.n >= 1 && f.d >= 1, "dirac_series_test: n, d >= 1");
        if (list.empty()) return true;
        const long parity = (list.front().n + list.front().d - 1) % 2;
        for (auto& f : list)
            if ((f.n + f.d - 1) % 2 != parity) return false;
        std::stable_sort(list.begin(), list.end(),
                         [](const SpehFactor& x, const SpehFactor& y) { return x.n + x.d > y.n + y.d; });
        for (std::size_t i = 0; i < list.size(); ++i) {
            const long top = list[i].n + list[i].d - 1, bottom = -list[i].n + list[i].d + 1;
            if (top < bottom) return false;
            if (i + 1 < list.size() && !(bottom > list[i + 1].n + list[i + 1].d - 1)) return false;
        }
        return true;
    };
    return check(std::move(evens)) && check(std::move(odds));
}

// Closure under replacing a linked pair by its union and intersection.
inline std::set<Multisegment> intersection_union_closure(const Multisegment& m) {
    std::set<Multisegment> seen{m};
    std::vector<Multisegment> frontier{m};
    while (!frontier.empty()) {
        Multisegment cur = frontier.back();
        frontier.pop_back();
        const auto& s = cur.segments();
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t j = i + 1; j < s.size(); ++j) {
                if (!is_linked(s[i], s[j])) continue;
                std::vector<Segment> next;
                for (std::size_t k = 0; k < s.size(); ++k)
                    if (k != i && k != j) next.push_back(s[k]);
                next.push_back(segment_union(s[i], s[j]));
                next.push_back(segment_intersection(s[i], s[j]));
                Multisegment nm(std::move(next));
                if (seen.insert(nm).second) frontier.push_back(std::move(nm));
            }
    }
    return seen;
}

// Every multisegment whose content is the given multiset.
inline std::vector<Multisegment> multisegments_with_content(const RationalVector& content) {
    std::map<Rational, int> count;
    for (auto& x : content) ++count[x];
    std::vector<Multisegment> out;
    std::vector<Segment> cur;
    // the smallest remaining value starts a segment; segments with equal start have nonincreasing end
    std::function<void()> rec = [&]() {
        auto it = std::find_if(count.begin(), count.end(), [](auto& kv) { return kv.second > 0; });
        if (it == count.end()) {
            out.emplace_back(cur);
            return;
        }
        const Rational a = it->first;
        std::optional<Rational> cap;
        if (!cur.empty() && cur.back().a == a) cap = cur.back().b;
        std::vector<Rational> taken;
        for (Rational b = a;; b += 1) {
            auto c = count.find(b);
            if (c == count.end() || c->second == 0) break;
            if (cap && b > *cap) break;
            --c->second;
            taken.push_back(b);
            cur.emplace_back(a, b);
            rec();
            cur.pop_back();
        }
        for (auto& b : taken) ++count[b];
    };
    rec();
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace lefschetz
