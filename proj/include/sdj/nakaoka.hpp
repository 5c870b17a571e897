#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace sdj {

/// Admissible sequence J = (j_1, ..., j_l) for a prime p:
///   each j_k = 0 or -1 (mod 2(p-1)),  j_k <= p * j_{k+1},
///   j_1 > (p-1)(j_2 + ... + j_l),  entries positive.
/// dimension D = sum of entries, rank R = p^l.
struct AdmissibleSequence {
    std::vector<int> entries;
    int p = 2;

    int dimension() const {
        int d = 0;
        for (int e : entries) d += e;
        return d;
    }
    long long rank() const {
        long long r = 1;
        for (size_t i = 0; i < entries.size(); ++i) r *= p;
        return r;
    }
    bool operator==(const AdmissibleSequence& o) const {
        return p == o.p && entries == o.entries;
    }
    bool operator<(const AdmissibleSequence& o) const {
        int d = dimension(), od = o.dimension();
        if (d != od) return d < od;
        if (entries.size() != o.entries.size()) return entries.size() < o.entries.size();
        return entries < o.entries;
    }
    std::string to_string() const {
        std::string s = "(";
        for (size_t i = 0; i < entries.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(entries[i]);
        }
        return s + ")";
    }

    bool admissible() const {
        if (entries.empty()) return false;
        const int step = 2 * (p - 1);
        for (int e : entries) {
            if (e <= 0) return false;
            int r = e % step;
            if (r != 0 && r != step - 1) return false;
        }
        for (size_t k = 0; k + 1 < entries.size(); ++k)
            if (entries[k] > static_cast<long long>(p) * entries[k + 1]) return false;
        int rest = 0;
        for (size_t k = 1; k < entries.size(); ++k) rest += entries[k];
        return entries[0] > (p - 1) * rest;
    }
};

/// All admissible sequences with dimension <= d_max, sorted by (D, lex).
/// Memoized per (p, d_max); safe for concurrent callers.
inline const std::vector<AdmissibleSequence>& enumerate_qp(int p, int d_max) {
    if (p < 2) throw std::invalid_argument("enumerate_qp: p must be a prime >= 2");
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<AdmissibleSequence>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, d_max);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::vector<AdmissibleSequence> out;
    const int step = 2 * (p - 1);
    std::vector<int> valid;  // residue-valid values up to d_max
    for (int v = 1; v <= d_max; ++v) {
        int r = v % step;
        if (r == 0 || r == step - 1) valid.push_back(v);
    }
    // grow sequences from the tail: suffix (j_{k+1},...) bounds j_k <= p*j_{k+1}
    std::vector<int> rev;  // reversed suffix, rev.back() = current head
    std::function<void(int)> grow = [&](int sum) {
        int head = rev.back();
        int rest = sum - head;
        if (head > (p - 1) * rest) {
            AdmissibleSequence j;
            j.p = p;
            j.entries.assign(rev.rbegin(), rev.rend());
            out.push_back(std::move(j));
        }
        for (int v : valid) {
            if (v > static_cast<long long>(p) * head) break;
            if (sum + v > d_max) continue;
            rev.push_back(v);
            grow(sum + v);
            rev.pop_back();
        }
    };
    for (int v : valid) {
        rev.assign(1, v);
        grow(v);
    }
    std::sort(out.begin(), out.end());
    return cache.emplace(key, std::move(out)).first->second;
}

namespace detail {

/// Monomial counting over the free graded-commutative generation: number of
/// multisets of admissible sequences with exact total rank r and exact total
/// dimension d (dimension measured by `dim_of` per generator), where a
/// generator may repeat only if `may_repeat` allows it.
template <class DimOf, class MayRepeat>
long long count_monomials(int p, long long r, long long d, DimOf&& dim_of,
                          MayRepeat&& may_repeat) {
    if (r < 1 || d < 0) return 0;
    // generators with rank <= r; dimension filter per dim_of below
    const auto& gens = enumerate_qp(p, static_cast<int>(d));  // D <= dim ceiling
    struct Item {
        long long rank, dim;
        bool repeatable;
    };
    std::vector<Item> items;
    for (const auto& g : gens) {
        long long gd = dim_of(g);
        if (g.rank() <= r && gd <= d && gd >= 1)
            items.push_back({g.rank(), gd, may_repeat(g)});
    }
    std::map<std::tuple<size_t, long long, long long>, long long> memo;
    std::function<long long(size_t, long long, long long)> rec =
        [&](size_t i, long long rr, long long dd) -> long long {
        if (rr == 0 && dd == 0) return 1;
        if (i == items.size() || rr <= 0 || dd < 0) return 0;
        auto key = std::make_tuple(i, rr, dd);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        long long total = rec(i + 1, rr, dd);  // multiplicity 0
        long long maxm = items[i].repeatable ? std::min(rr / items[i].rank, dd / items[i].dim) : 1;
        for (long long m = 1; m <= maxm; ++m) {
            long long nr = rr - m * items[i].rank;
            long long nd = dd - m * items[i].dim;
            if (nr < 0 || nd < 0) break;
            total += rec(i + 1, nr, nd);
        }
        memo.emplace(key, total);
        return total;
    };
    return rec(0, r, d);
}

}  // namespace detail

/// dim U_r^d(Q(p)): monomials of exact rank r and dimension d under the
/// nonvanishing condition (no repeated odd-dimension generator unless p = 2).
inline long long u_dim(int p, long long r, long long d) {
    return detail::count_monomials(
        p, r, d, [](const AdmissibleSequence& g) { return static_cast<long long>(g.dimension()); },
        [p](const AdmissibleSequence& g) { return p == 2 || g.dimension() % 2 == 0; });
}

/// dim of the shifted algebra: dimension function D~ = D + 1 per generator
/// (so a monomial's D~ adds the number of factors).  Graded commutativity is
/// taken in the D~ grading: a generator may repeat only when D~ is even,
/// i.e. D odd, at odd p; at p = 2 repeated generators vanish in the quotient
/// and monomials are squarefree.
inline long long u_tilde_dim(int p, long long r, long long d) {
    return detail::count_monomials(
        p, r, d,
        [](const AdmissibleSequence& g) { return static_cast<long long>(g.dimension()) + 1; },
        [p](const AdmissibleSequence& g) { return p != 2 && g.dimension() % 2 == 1; });
}

/// dim H_d(S_m; F_p) = sum_{r <= m} dim U_r^d, plus the unit class at d = 0.
inline long long sym_homology_dim(int p, int m, int d) {
    long long total = (d == 0) ? 1 : 0;
    for (int r = 1; r <= m; ++r) total += u_dim(p, r, d);
    return total;
}

/// Closed form for dim H_q of the symmetric deleted join quotient.
inline long long predicted_homology(int p, int k, int q) {
    if (q < 0) return 0;
    return u_tilde_dim(p, k, q + 1);
}

}  // namespace sdj
