#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace sdj {

/// Dense square bit matrix; rows are 64-bit word blocks.  Used for order
/// relations, where whole-row operations (union, intersection counts) are the
/// hot path.
class BitMatrix {
public:
    BitMatrix() : n_(0), words_(0) {}
    explicit BitMatrix(int n)
        : n_(n), words_((n + 63) / 64), data_(static_cast<size_t>(n) * words_, 0) {}

    int size() const { return n_; }

    bool get(int r, int c) const {
        return (data_[static_cast<size_t>(r) * words_ + c / 64] >> (c % 64)) & 1u;
    }
    void set(int r, int c) {
        data_[static_cast<size_t>(r) * words_ + c / 64] |= (uint64_t{1} << (c % 64));
    }

    /// row dst |= row src
    void or_row(int dst, int src) {
        uint64_t* d = &data_[static_cast<size_t>(dst) * words_];
        const uint64_t* s = &data_[static_cast<size_t>(src) * words_];
        for (int w = 0; w < words_; ++w) d[w] |= s[w];
    }

    /// popcount(this row r1 & other row r2); matrices must have equal size
    int and_popcount(const BitMatrix& other, int r1, int r2) const {
        const uint64_t* a = &data_[static_cast<size_t>(r1) * words_];
        const uint64_t* b = &other.data_[static_cast<size_t>(r2) * words_];
        int cnt = 0;
        for (int w = 0; w < words_; ++w) cnt += __builtin_popcountll(a[w] & b[w]);
        return cnt;
    }

    BitMatrix transposed() const {
        BitMatrix t(n_);
        for (int r = 0; r < n_; ++r)
            for (int c = 0; c < n_; ++c)
                if (get(r, c)) t.set(c, r);
        return t;
    }

private:
    int n_;
    int words_;
    std::vector<uint64_t> data_;
};

/// Finite poset.  Elements carry opaque string labels; the canonical element
/// order is ascending label order, which fixes simplex orientations downstream.
/// Covers are stored irredundantly (transitive reduction) and the full order
/// relation is cached as bitset rows.
class Poset {
public:
    Poset() = default;

    /// Build from labels and cover candidates (pairs of indices into `labels`,
    /// (lo, hi) meaning labels[lo] < labels[hi]).  Redundant covers are
    /// dropped; cycles and duplicate labels are errors.
    static Poset from_covers(std::vector<std::string> labels,
                             const std::vector<std::pair<int, int>>& covers) {
        const int n = static_cast<int>(labels.size());
        std::vector<int> perm = sort_permutation(labels);
        std::vector<std::vector<int>> adj(n);
        for (auto [a, b] : covers) {
            if (a < 0 || a >= n || b < 0 || b >= n)
                throw std::invalid_argument("cover references unknown element");
            adj[perm[a]].push_back(perm[b]);
        }
        // Kahn topological sort doubles as the cycle check.
        std::vector<int> indeg(n, 0), order;
        order.reserve(n);
        for (int v = 0; v < n; ++v)
            for (int w : adj[v]) {
                if (w == v) throw std::invalid_argument("cycle detected in cover relation");
                ++indeg[w];
            }
        std::vector<int> queue;
        for (int v = 0; v < n; ++v)
            if (indeg[v] == 0) queue.push_back(v);
        while (!queue.empty()) {
            int v = queue.back();
            queue.pop_back();
            order.push_back(v);
            for (int w : adj[v])
                if (--indeg[w] == 0) queue.push_back(w);
        }
        if (static_cast<int>(order.size()) != n)
            throw std::invalid_argument("cycle detected in cover relation");

        BitMatrix leq(n);
        for (int i = n - 1; i >= 0; --i) {
            int v = order[i];
            leq.set(v, v);
            for (int w : adj[v]) leq.or_row(v, w);
        }
        Poset p;
        p.init_sorted(std::move(labels), std::move(leq));
        return p;
    }

    /// Build from a full reflexive order relation (leq.get(a,b) means a <= b).
    /// Verifies reflexivity, antisymmetry and transitivity.
    static Poset from_relation(std::vector<std::string> labels, const BitMatrix& leq_in) {
        const int n = static_cast<int>(labels.size());
        std::vector<int> perm = sort_permutation(labels);
        BitMatrix leq(n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                if (leq_in.get(r, c)) leq.set(perm[r], perm[c]);
        for (int v = 0; v < n; ++v)
            if (!leq.get(v, v)) throw std::invalid_argument("relation not reflexive");
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (leq.get(a, b) && leq.get(b, a))
                    throw std::invalid_argument("relation not antisymmetric");
        Poset p;
        p.init_sorted(std::move(labels), std::move(leq));
        for (int a = 0; a < p.n_; ++a)
            for (int b : p.above_[a])
                for (int c : p.above_[b])
                    if (!p.leq_.get(a, c))
                        throw std::invalid_argument("relation not transitive");
        return p;
    }

    int size() const { return n_; }
    bool empty() const { return n_ == 0; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int v) const { return labels_[v]; }

    int index_of(const std::string& lbl) const {
        auto it = std::lower_bound(labels_.begin(), labels_.end(), lbl);
        if (it == labels_.end() || *it != lbl)
            throw std::invalid_argument("no element labelled '" + lbl + "'");
        return static_cast<int>(it - labels_.begin());
    }

    bool leq(int a, int b) const { return leq_.get(a, b); }
    bool less(int a, int b) const { return a != b && leq_.get(a, b); }
    bool comparable(int a, int b) const { return leq_.get(a, b) || leq_.get(b, a); }

    const std::vector<std::pair<int, int>>& covers() const { return covers_; }
    /// Elements strictly above v, ascending.
    const std::vector<int>& above(int v) const { return above_[v]; }
    /// Elements strictly below v, ascending.
    const std::vector<int>& below(int v) const { return below_[v]; }
    const std::vector<int>& upper_covers(int v) const { return up_covers_[v]; }
    const std::vector<int>& lower_covers(int v) const { return low_covers_[v]; }

    const BitMatrix& leq_matrix() const { return leq_; }

    /// Number of common lower bounds of a and b (elements z with z <= a, z <= b).
    int common_below_count(int a, int b) const { return geq_.and_popcount(geq_, a, b); }

    std::optional<int> bottom() const {
        std::optional<int> bot;
        for (int v = 0; v < n_; ++v)
            if (below_[v].empty()) {
                if (bot) return std::nullopt;
                bot = v;
            }
        return bot;
    }
    std::optional<int> top() const {
        std::optional<int> t;
        for (int v = 0; v < n_; ++v)
            if (above_[v].empty()) {
                if (t) return std::nullopt;
                t = v;
            }
        return t;
    }

    /// Induced subposet on `keep` (indices into this poset).  Labels carry over.
    Poset induced(const std::vector<int>& keep) const {
        const int m = static_cast<int>(keep.size());
        std::vector<std::string> lbl(m);
        for (int i = 0; i < m; ++i) lbl[i] = labels_[keep[i]];
        BitMatrix rel(m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                if (leq_.get(keep[i], keep[j])) rel.set(i, j);
        return from_relation(std::move(lbl), rel);
    }

    /// Closed interval {z : x <= z <= y}.  Throws unless x <= y.
    Poset interval(int x, int y) const {
        if (!leq(x, y)) throw std::invalid_argument("interval requires x <= y");
        std::vector<int> keep;
        for (int z = 0; z < n_; ++z)
            if (leq_.get(x, z) && leq_.get(z, y)) keep.push_back(z);
        return induced(keep);
    }

    /// Lower set {z : z <= x}.
    Poset lower_set(int x) const {
        std::vector<int> keep;
        for (int z = 0; z < n_; ++z)
            if (leq_.get(z, x)) keep.push_back(z);
        return induced(keep);
    }

    /// Strip a unique bottom if present.
    Poset without_bottom() const {
        auto bot = bottom();
        if (!bot) return *this;
        std::vector<int> keep;
        for (int v = 0; v < n_; ++v)
            if (v != *bot) keep.push_back(v);
        return induced(keep);
    }

    /// Strip a unique bottom and/or unique top if present.
    Poset proper_part() const {
        auto bot = bottom();
        auto tp = top();
        std::vector<int> keep;
        for (int v = 0; v < n_; ++v) {
            if (bot && v == *bot) continue;
            if (tp && v == *tp) continue;
            keep.push_back(v);
        }
        if (static_cast<int>(keep.size()) == n_) return *this;
        return induced(keep);
    }

private:
    static std::vector<int> sort_permutation(std::vector<std::string>& labels) {
        const int n = static_cast<int>(labels.size());
        std::vector<int> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(),
                  [&](int a, int b) { return labels[a] < labels[b]; });
        for (int i = 1; i < n; ++i)
            if (labels[idx[i]] == labels[idx[i - 1]])
                throw std::invalid_argument("duplicate label '" + labels[idx[i]] + "'");
        std::vector<int> perm(n);  // old index -> new index
        for (int i = 0; i < n; ++i) perm[idx[i]] = i;
        std::vector<std::string> sorted(n);
        for (int i = 0; i < n; ++i) sorted[perm[i]] = std::move(labels[i]);
        labels = std::move(sorted);
        return perm;
    }

    void init_sorted(std::vector<std::string> labels, BitMatrix leq) {
        labels_ = std::move(labels);
        leq_ = std::move(leq);
        n_ = static_cast<int>(labels_.size());
        geq_ = leq_.transposed();
        above_.assign(n_, {});
        below_.assign(n_, {});
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b)
                if (a != b && leq_.get(a, b)) {
                    above_[a].push_back(b);
                    below_[b].push_back(a);
                }
        covers_.clear();
        up_covers_.assign(n_, {});
        low_covers_.assign(n_, {});
        for (int a = 0; a < n_; ++a)
            for (int b : above_[a])
                // cover iff the closed interval [a,b] is exactly {a,b}:
                // popcount(up(a) & down(b)) == 2
                if (leq_.and_popcount(geq_, a, b) == 2) {
                    covers_.emplace_back(a, b);
                    up_covers_[a].push_back(b);
                    low_covers_[b].push_back(a);
                }
    }

    int n_ = 0;
    std::vector<std::string> labels_;
    BitMatrix leq_;   // leq_.get(a,b) : a <= b
    BitMatrix geq_;   // transpose
    std::vector<std::vector<int>> above_, below_;
    std::vector<std::pair<int, int>> covers_;
    std::vector<std::vector<int>> up_covers_, low_covers_;
};

/// Visit every nonempty chain of P (as a vector of element indices, increasing
/// in the poset order).  `max_len` < 0 means no length cap.  The callback may
/// return void; if it returns bool, `false` aborts the walk.
template <class F>
bool for_each_chain(const Poset& p, int max_len, F&& fn) {
    if (max_len == 0) return true;
    std::vector<int> chain;
    // DFS over extensions by strictly greater elements.
    std::function<bool(int)> extend = [&](int v) -> bool {
        chain.push_back(v);
        bool keep_going = true;
        if constexpr (std::is_void_v<decltype(fn(chain))>) {
            fn(chain);
        } else {
            keep_going = fn(chain);
        }
        if (keep_going && (max_len < 0 || static_cast<int>(chain.size()) < max_len)) {
            for (int w : p.above(v)) {
                if (!extend(w)) {
                    keep_going = false;
                    break;
                }
            }
        }
        chain.pop_back();
        return keep_going;
    };
    for (int v = 0; v < p.size(); ++v)
        if (!extend(v)) return false;
    return true;
}

/// Number of nonempty chains, with an optional abort threshold (returns -1 if
/// the count would exceed `abort_above` >= 0).
inline long long count_chains(const Poset& p, int max_len = -1, long long abort_above = -1) {
    long long cnt = 0;
    bool ok = for_each_chain(p, max_len, [&](const std::vector<int>&) {
        ++cnt;
        return abort_above < 0 || cnt <= abort_above;
    });
    return ok ? cnt : -1;
}

/// Barycentric subdivision: the poset of nonempty chains of P ordered by
/// subchain inclusion.  Labels are the chain labels joined by '<'.
inline Poset barycentric_subdivision(const Poset& p) {
    std::vector<std::vector<int>> chains;
    for_each_chain(p, -1, [&](const std::vector<int>& c) { chains.push_back(c); });
    const int m = static_cast<int>(chains.size());
    std::vector<std::string> labels(m);
    for (int i = 0; i < m; ++i) {
        std::string s;
        for (size_t j = 0; j < chains[i].size(); ++j) {
            if (j) s += '<';
            s += p.label(chains[i][j]);
        }
        labels[i] = std::move(s);
    }
    // subchain = subset; sort copies by index for the inclusion test, since
    // chains are listed in poset order
    std::vector<std::vector<int>> sorted(chains);
    for (auto& c : sorted) std::sort(c.begin(), c.end());
    BitMatrix rel(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (std::includes(sorted[j].begin(), sorted[j].end(),
                              sorted[i].begin(), sorted[i].end()))
                rel.set(i, j);
    return Poset::from_relation(std::move(labels), rel);
}

/// Chains of the barycentric subdivision as index vectors into `chains`.
inline std::vector<std::vector<int>> all_chains(const Poset& p, int max_len = -1) {
    std::vector<std::vector<int>> chains;
    for_each_chain(p, max_len, [&](const std::vector<int>& c) { chains.push_back(c); });
    return chains;
}

/// Reduced Euler characteristic of the order complex:
/// -1 + f_0 - f_1 + ... where f_q counts chains of q+1 elements.
inline long long reduced_euler(const Poset& p) {
    long long chi = -1;
    for_each_chain(p, -1, [&](const std::vector<int>& c) {
        chi += (c.size() % 2 == 1) ? 1 : -1;
    });
    return chi;
}

/// Checks that `map` (indices of P -> indices of Q) is a poset isomorphism.
inline bool is_poset_isomorphism(const Poset& p, const Poset& q, const std::vector<int>& map) {
    if (p.size() != q.size() || static_cast<int>(map.size()) != p.size()) return false;
    std::vector<char> hit(q.size(), 0);
    for (int v : map) {
        if (v < 0 || v >= q.size() || hit[v]) return false;
        hit[v] = 1;
    }
    for (int a = 0; a < p.size(); ++a)
        for (int b = 0; b < p.size(); ++b)
            if (p.leq(a, b) != q.leq(map[a], map[b])) return false;
    return true;
}

}  // namespace sdj
