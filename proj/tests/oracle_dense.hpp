// Test-only oracles: naive dense homology (Smith form over Z, Gaussian
// elimination over F_p) built straight from the face lists.  Deliberately
// independent of the sparse elimination path in the library.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <vector>

#include "sdj/chain_complex.hpp"
#include "sdj/ring.hpp"
#include "sdj/simplicial.hpp"

namespace oracle {

using Int = boost::multiprecision::cpp_int;
using Dense = std::vector<std::vector<Int>>;

// rows = chains in degree q, cols = degree q-1
inline std::vector<Dense> dense_boundaries(const sdj::SimplicialComplex& k, bool reduced) {
    std::vector<std::vector<std::vector<int>>> levels;
    if (reduced) levels.push_back({{}});  // the empty simplex
    for (const auto& lv : k.faces) levels.push_back(lv);
    std::vector<Dense> out;
    for (size_t d = 1; d < levels.size(); ++d) {
        Dense m(levels[d].size(), std::vector<Int>(levels[d - 1].size(), 0));
        std::map<std::vector<int>, int> idx;
        for (size_t i = 0; i < levels[d - 1].size(); ++i) idx[levels[d - 1][i]] = (int)i;
        for (size_t i = 0; i < levels[d].size(); ++i) {
            const auto& f = levels[d][i];
            Int sign = 1;
            for (size_t drop = 0; drop < f.size(); ++drop) {
                std::vector<int> sub;
                for (size_t j = 0; j < f.size(); ++j)
                    if (j != drop) sub.push_back(f[j]);
                m[i][idx.at(sub)] += sign;
                sign = -sign;
            }
        }
        out.push_back(std::move(m));
    }
    return out;
}

inline long long dense_rank_fp(Dense m, long long p) {
    long long rank = 0;
    size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && m[piv][c] % p == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[r], m[piv]);
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] % p == 0) continue;
            // scale-free: row_i <- m[r][c]*row_i - m[i][c]*row_r
            Int fr = m[r][c] % p, fi = m[i][c] % p;
            for (size_t j = c; j < cols; ++j)
                m[i][j] = ((m[i][j] * fr - m[r][j] * fi) % p + p) % p;
        }
        ++r;
        ++rank;
    }
    return rank;
}

// full naive Smith normal form; returns diagonal divisors (positive, chained)
inline std::vector<Int> dense_smith(Dense m) {
    size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    std::vector<Int> diag;
    size_t t = 0;
    while (t < rows && t < cols) {
        size_t pr = rows, pc = cols;
        Int best = 0;
        for (size_t i = t; i < rows; ++i)
            for (size_t j = t; j < cols; ++j)
                if (m[i][j] != 0 && (pr == rows || abs(m[i][j]) < best)) {
                    best = abs(m[i][j]);
                    pr = i;
                    pc = j;
                }
        if (pr == rows) break;
        std::swap(m[t], m[pr]);
        for (size_t i = 0; i < rows; ++i) std::swap(m[i][t], m[i][pc]);
        bool again = true;
        while (again) {
            again = false;
            for (size_t i = t + 1; i < rows; ++i)
                if (m[i][t] != 0) {
                    Int q = m[i][t] / m[t][t];
                    for (size_t j = 0; j < cols; ++j) m[i][j] -= q * m[t][j];
                    if (m[i][t] != 0) {
                        std::swap(m[t], m[i]);
                        again = true;
                    }
                }
            for (size_t j = t + 1; j < cols; ++j)
                if (m[t][j] != 0) {
                    Int q = m[t][j] / m[t][t];
                    for (size_t i = 0; i < rows; ++i) m[i][j] -= q * m[i][t];
                    if (m[t][j] != 0) {
                        for (size_t i = 0; i < rows; ++i) std::swap(m[i][t], m[i][j]);
                        again = true;
                    }
                }
        }
        diag.push_back(abs(m[t][t]));
        ++t;
    }
    // divisibility chain
    for (bool changed = true; changed;) {
        changed = false;
        for (size_t i = 0; i + 1 < diag.size(); ++i)
            for (size_t j = i + 1; j < diag.size(); ++j)
                if (diag[j] % diag[i] != 0) {
                    Int g = gcd(diag[i], diag[j]);
                    Int l = diag[i] / g * diag[j];
                    diag[i] = g;
                    diag[j] = l;
                    changed = true;
                }
    }
    std::sort(diag.begin(), diag.end());
    return diag;
}

/// Naive homology of a simplicial complex, fully dense.
inline sdj::HomologyResult dense_homology(const sdj::SimplicialComplex& k, sdj::Ring ring,
                                          bool reduced) {
    std::vector<std::vector<std::vector<int>>> levels;
    if (reduced) levels.push_back({{}});
    for (const auto& lv : k.faces) levels.push_back(lv);
    auto bnd = dense_boundaries(k, reduced);
    sdj::HomologyResult res;
    res.ring = ring;
    res.lowest = reduced ? -1 : 0;
    int n = (int)levels.size();
    res.betti.assign(n, 0);
    res.torsion.assign(n, {});
    std::vector<long long> rank(n + 1, 0);
    std::vector<std::vector<Int>> tors(n + 1);
    for (int q = 1; q < n; ++q) {
        if (ring.is_field()) {
            rank[q] = dense_rank_fp(bnd[q - 1], ring.p);
        } else {
            auto d = dense_smith(bnd[q - 1]);
            rank[q] = (long long)d.size();
            for (auto& v : d)
                if (v > 1) tors[q].push_back(v);
        }
    }
    for (int q = 0; q < n; ++q) {
        long long dim = (long long)levels[q].size();
        res.betti[q] = dim - rank[q] - (q + 1 < n ? rank[q + 1] : 0);
        if (!ring.is_field() && q + 1 < n)
            for (auto& v : tors[q + 1]) res.torsion[q].push_back(v);
    }
    return res;
}

}  // namespace oracle
