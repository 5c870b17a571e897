#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "sdj/ring.hpp"

namespace sdj {

/// Sparse integer matrix, row-major: rows[i] is the sorted (col, value) list
/// of row i.  Values are small in every matrix the library constructs
/// (boundary maps have entries +-1); elimination promotes to bigint.
struct SparseMat {
    int nrows = 0;
    int ncols = 0;
    std::vector<std::vector<std::pair<int, long long>>> rows;

    SparseMat() = default;
    SparseMat(int r, int c) : nrows(r), ncols(c), rows(r) {}

    void add(int r, int c, long long v) {
        if (v != 0) rows[r].emplace_back(c, v);
    }
    /// Sort each row by column and combine duplicates.
    void normalize() {
        for (auto& row : rows) {
            std::sort(row.begin(), row.end());
            std::vector<std::pair<int, long long>> out;
            for (auto& [c, v] : row) {
                if (!out.empty() && out.back().first == c)
                    out.back().second += v;
                else
                    out.emplace_back(c, v);
            }
            out.erase(std::remove_if(out.begin(), out.end(),
                                     [](auto& e) { return e.second == 0; }),
                      out.end());
            row = std::move(out);
        }
    }

    long long nnz() const {
        long long n = 0;
        for (const auto& r : rows) n += static_cast<long long>(r.size());
        return n;
    }

    bool is_zero() const {
        for (const auto& r : rows)
            if (!r.empty()) return false;
        return true;
    }

    /// this * other, viewing rows as linear combinations of the next basis:
    /// (A*B).row(i) = sum_j A(i,j) * B.row(j).
    SparseMat multiply(const SparseMat& other) const {
        if (ncols != other.nrows)
            throw std::invalid_argument("matrix dimension mismatch in multiply");
        SparseMat out(nrows, other.ncols);
        std::vector<long long> acc(other.ncols, 0);
        std::vector<int> touched;
        for (int i = 0; i < nrows; ++i) {
            touched.clear();
            for (auto [j, a] : rows[i]) {
                for (auto [k, b] : other.rows[j]) {
                    if (acc[k] == 0) touched.push_back(k);
                    acc[k] += a * b;
                }
            }
            std::sort(touched.begin(), touched.end());
            for (int k : touched) {
                if (acc[k] != 0) out.rows[i].emplace_back(k, acc[k]);
                acc[k] = 0;
            }
        }
        return out;
    }
};

namespace detail {

/// Shared scaffolding for sparse elimination: rows under lazy column index.
template <class V>
struct ElimState {
    std::vector<std::vector<std::pair<int, V>>> rows;
    std::vector<std::vector<int>> col_rows;  // may contain stale row ids
    std::vector<int> col_count;              // live counts
    std::vector<char> row_alive;

    explicit ElimState(const SparseMat& m, int ncols) {
        rows.resize(m.nrows);
        col_rows.resize(ncols);
        col_count.assign(ncols, 0);
        row_alive.assign(m.nrows, 1);
        for (int r = 0; r < m.nrows; ++r) {
            rows[r].reserve(m.rows[r].size());
            for (auto [c, v] : m.rows[r]) rows[r].emplace_back(c, V(v));
        }
    }

    bool row_has_col(int r, int c) const {
        const auto& row = rows[r];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const auto& e, int cc) { return e.first < cc; });
        return it != row.end() && it->first == c;
    }

    V value_at(int r, int c) const {
        const auto& row = rows[r];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const auto& e, int cc) { return e.first < cc; });
        return (it != row.end() && it->first == c) ? it->second : V(0);
    }

    /// Live rows currently containing column c (compacts the lazy list).
    std::vector<int> live_rows_in_col(int c) {
        auto& lst = col_rows[c];
        std::vector<int> live;
        for (int r : lst)
            if (row_alive[r] && row_has_col(r, c)) live.push_back(r);
        std::sort(live.begin(), live.end());
        live.erase(std::unique(live.begin(), live.end()), live.end());
        lst = live;
        return live;
    }
};

}  // namespace detail

/// Rank of a sparse matrix over F_p, by elimination with min-fill pivoting.
inline long long rank_fp(const SparseMat& m, int p) {
    detail::ElimState<long long> st(m, m.ncols);
    // reduce mod p, drop zeros
    for (int r = 0; r < m.nrows; ++r) {
        auto& row = st.rows[r];
        std::vector<std::pair<int, long long>> out;
        for (auto [c, v] : row) {
            long long vv = mod_pos(v, p);
            if (vv) out.emplace_back(c, vv);
        }
        row = std::move(out);
        for (auto [c, v] : row) {
            st.col_rows[c].push_back(r);
            ++st.col_count[c];
        }
    }
    using Entry = std::pair<int, int>;  // (col_count, col)
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> pq;
    for (int c = 0; c < m.ncols; ++c)
        if (st.col_count[c] > 0) pq.emplace(st.col_count[c], c);

    long long rank = 0;
    std::vector<std::pair<int, long long>> merged;
    while (!pq.empty()) {
        auto [cnt, c] = pq.top();
        pq.pop();
        if (st.col_count[c] != cnt || cnt == 0) continue;
        std::vector<int> live = st.live_rows_in_col(c);
        if (live.empty()) continue;
        int piv = live[0];
        for (int r : live)
            if (st.rows[r].size() < st.rows[piv].size()) piv = r;
        long long pv = st.value_at(piv, c);
        long long pinv = mod_inverse(pv, p);
        for (int r : live) {
            if (r == piv) continue;
            long long f = mod_pos(st.value_at(r, c) * pinv % p, p);
            // row r -= f * pivot row  (mod p)
            merged.clear();
            const auto& a = st.rows[r];
            const auto& b = st.rows[piv];
            size_t i = 0, j = 0;
            while (i < a.size() || j < b.size()) {
                if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
                    merged.push_back(a[i++]);
                } else if (i == a.size() || b[j].first < a[i].first) {
                    long long nv = mod_pos(-f * b[j].second % p, p);
                    if (nv) {
                        merged.emplace_back(b[j].first, nv);
                        st.col_rows[b[j].first].push_back(r);
                        int ncnt = ++st.col_count[b[j].first];
                        pq.emplace(ncnt, b[j].first);
                    }
                    ++j;
                } else {
                    long long nv = mod_pos(a[i].second - f * b[j].second % p, p);
                    if (nv) {
                        merged.emplace_back(a[i].first, nv);
                    } else {
                        int ncnt = --st.col_count[a[i].first];
                        pq.emplace(ncnt, a[i].first);
                    }
                    ++i;
                    ++j;
                }
            }
            st.rows[r] = merged;
        }
        // retire the pivot row
        for (auto [cc, vv] : st.rows[piv]) {
            int ncnt = --st.col_count[cc];
            pq.emplace(ncnt, cc);
        }
        st.row_alive[piv] = 0;
        st.rows[piv].clear();
        ++rank;
    }
    return rank;
}

/// Result of a Smith normal form computation over Z.
struct SmithResult {
    long long rank = 0;
    std::vector<bigint> divisors;  // invariant factors, divisibility chain, positive

    std::vector<bigint> torsion() const {
        std::vector<bigint> t;
        for (const auto& d : divisors)
            if (d > 1) t.push_back(d);
        return t;
    }
};

namespace detail {

/// Dense Smith normal form used on the residue left after unit-pivot
/// elimination; the residue is tiny in practice.
inline std::vector<bigint> dense_smith(std::vector<std::vector<bigint>> m) {
    const int nr = static_cast<int>(m.size());
    const int nc = nr ? static_cast<int>(m[0].size()) : 0;
    std::vector<bigint> diag;
    int t = 0;
    while (true) {
        int pr = -1, pc = -1;
        bigint best = 0;
        for (int i = t; i < nr; ++i)
            for (int j = t; j < nc; ++j)
                if (m[i][j] != 0) {
                    bigint a = abs(m[i][j]);
                    if (pr < 0 || a < best) {
                        best = a;
                        pr = i;
                        pc = j;
                    }
                }
        if (pr < 0) break;
        std::swap(m[t], m[pr]);
        for (int i = 0; i < nr; ++i) std::swap(m[i][t], m[i][pc]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = t + 1; i < nr; ++i) {
                if (m[i][t] == 0) continue;
                bigint q = m[i][t] / m[t][t];
                if (q != 0)
                    for (int j = t; j < nc; ++j) m[i][j] -= q * m[t][j];
                if (m[i][t] != 0) {  // remainder smaller than pivot
                    std::swap(m[t], m[i]);
                    clean = false;
                }
            }
            for (int j = t + 1; j < nc; ++j) {
                if (m[t][j] == 0) continue;
                bigint q = m[t][j] / m[t][t];
                if (q != 0)
                    for (int i = t; i < nr; ++i) m[i][j] -= q * m[i][t];
                if (m[t][j] != 0) {
                    for (int i = t; i < nr; ++i) std::swap(m[i][t], m[i][j]);
                    clean = false;
                }
            }
        }
        diag.push_back(abs(m[t][t]));
        ++t;
        if (t >= nr || t >= nc) {
            for (int i = t; i < nr; ++i)
                for (int j = t; j < nc; ++j)
                    if (m[i][j] != 0) throw std::logic_error("smith: leftover entry");
            break;
        }
    }
    return diag;
}

}  // namespace detail

/// Smith normal form of a sparse integer matrix.  Unit pivots are eliminated
/// sparsely (Markowitz-flavoured selection); whatever remains goes through a
/// dense pass.  Returns the rank and the invariant factor chain.
inline SmithResult smith_normal_form(const SparseMat& m) {
    detail::ElimState<bigint> st(m, m.ncols);
    for (int r = 0; r < m.nrows; ++r)
        for (auto [c, v] : st.rows[r]) {
            (void)v;
            st.col_rows[c].push_back(r);
            ++st.col_count[c];
        }

    auto row_has_unit = [&](int r) {
        for (auto& [c, v] : st.rows[r])
            if (v == 1 || v == -1) return true;
        return false;
    };

    using Entry = std::pair<size_t, int>;  // (row nnz, row)
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> pq;
    for (int r = 0; r < m.nrows; ++r)
        if (!st.rows[r].empty() && row_has_unit(r)) pq.emplace(st.rows[r].size(), r);

    long long units = 0;
    std::vector<std::pair<int, bigint>> merged;
    while (!pq.empty()) {
        auto [sz, piv] = pq.top();
        pq.pop();
        if (!st.row_alive[piv] || st.rows[piv].size() != sz) continue;
        // best unit entry: min column count
        int pc = -1;
        for (auto& [c, v] : st.rows[piv])
            if ((v == 1 || v == -1) && (pc < 0 || st.col_count[c] < st.col_count[pc]))
                pc = c;
        if (pc < 0) continue;
        bigint pv = st.value_at(piv, pc);
        std::vector<int> live = st.live_rows_in_col(pc);
        for (int r : live) {
            if (r == piv) continue;
            bigint f = st.value_at(r, pc) * pv;  // pv = +-1 so f*pv division-free
            merged.clear();
            const auto& a = st.rows[r];
            const auto& b = st.rows[piv];
            size_t i = 0, j = 0;
            bool has_unit = false;
            while (i < a.size() || j < b.size()) {
                if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
                    if (a[i].second == 1 || a[i].second == -1) has_unit = true;
                    merged.push_back(a[i++]);
                } else if (i == a.size() || b[j].first < a[i].first) {
                    bigint nv = -f * b[j].second;
                    if (nv != 0) {
                        if (nv == 1 || nv == -1) has_unit = true;
                        merged.emplace_back(b[j].first, nv);
                        st.col_rows[b[j].first].push_back(r);
                        ++st.col_count[b[j].first];
                    }
                    ++j;
                } else {
                    bigint nv = a[i].second - f * b[j].second;
                    if (nv != 0) {
                        if (nv == 1 || nv == -1) has_unit = true;
                        merged.emplace_back(a[i].first, nv);
                    } else {
                        --st.col_count[a[i].first];
                    }
                    ++i;
                    ++j;
                }
            }
            st.rows[r] = merged;
            if (has_unit && !st.rows[r].empty()) pq.emplace(st.rows[r].size(), r);
        }
        // pivot row/column can now be removed by unimodular ops that touch
        // nothing else (the pivot column is empty apart from the pivot row)
        for (auto& [cc, vv] : st.rows[piv]) --st.col_count[cc];
        st.row_alive[piv] = 0;
        st.rows[piv].clear();
        ++units;
    }

    // densify the residue
    std::vector<int> live_rows, live_cols;
    std::vector<int> col_map(m.ncols, -1);
    for (int r = 0; r < m.nrows; ++r)
        if (st.row_alive[r] && !st.rows[r].empty()) live_rows.push_back(r);
    for (int c = 0; c < m.ncols; ++c)
        if (st.col_count[c] > 0) {
            col_map[c] = static_cast<int>(live_cols.size());
            live_cols.push_back(c);
        }
    SmithResult res;
    res.rank = units;
    res.divisors.assign(units, bigint(1));
    if (!live_rows.empty()) {
        std::vector<std::vector<bigint>> dense(
            live_rows.size(), std::vector<bigint>(live_cols.size(), bigint(0)));
        for (size_t i = 0; i < live_rows.size(); ++i)
            for (auto& [c, v] : st.rows[live_rows[i]]) dense[i][col_map[c]] = v;
        std::vector<bigint> diag = detail::dense_smith(std::move(dense));
        for (auto& d : diag) {
            if (d != 0) {
                res.divisors.push_back(d);
                ++res.rank;
            }
        }
    }
    // enforce the divisibility chain d1 | d2 | ...
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < res.divisors.size(); ++i)
            for (size_t j = i + 1; j < res.divisors.size(); ++j) {
                if (res.divisors[j] % res.divisors[i] != 0) {
                    bigint g = gcd(res.divisors[i], res.divisors[j]);
                    bigint l = res.divisors[i] / g * res.divisors[j];
                    res.divisors[i] = g;
                    res.divisors[j] = l;
                    changed = true;
                }
            }
    }
    std::sort(res.divisors.begin(), res.divisors.end());
    return res;
}

/// Rank over Z (equivalently over Q).
inline long long rank_z(const SparseMat& m) { return smith_normal_form(m).rank; }

}  // namespace sdj
