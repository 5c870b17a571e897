#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "sdj/poset.hpp"
#include "sdj/ring.hpp"
#include "sdj/simplicial.hpp"
#include "sdj/sparse_matrix.hpp"

namespace sdj {

/// Chain complex with one sparse boundary matrix per degree.  Degrees run
/// lowest, lowest+1, ...; the offset is metadata, bases are never re-indexed.
/// boundary[k] maps level k to level k-1 (row i = boundary of basis element i);
/// boundary[0] maps to the zero space.
struct GradedChainComplex {
    Ring ring = Ring::integers();
    int lowest = 0;
    std::vector<size_t> dims;
    std::vector<std::vector<std::string>> basis;  // labels; may be empty per level
    std::vector<SparseMat> boundary;

    int levels() const { return static_cast<int>(dims.size()); }
    int degree(int k) const { return lowest + k; }
    long long total_dim() const {
        long long t = 0;
        for (size_t d : dims) t += static_cast<long long>(d);
        return t;
    }
};

/// Degrees where the composite boundary fails to vanish (empty = pass).
/// A reported degree q means d_{q-1} . d_q != 0.
inline std::vector<int> verify_d_squared(const GradedChainComplex& c) {
    std::vector<int> bad;
    for (int k = 1; k < c.levels(); ++k) {
        if (c.boundary[k].is_zero() || c.boundary[k - 1].is_zero()) continue;
        if (!c.boundary[k].multiply(c.boundary[k - 1]).is_zero())
            bad.push_back(c.degree(k));
    }
    return bad;
}

/// Homology of a chain complex: Betti numbers per degree, and over Z the
/// torsion coefficients (invariant factors > 1).
struct HomologyResult {
    Ring ring = Ring::integers();
    int lowest = 0;
    std::vector<long long> betti;
    std::vector<std::vector<bigint>> torsion;  // aligned with betti; empty over fields

    int levels() const { return static_cast<int>(betti.size()); }
    int degree(int k) const { return lowest + k; }

    long long betti_at(int q) const {
        int k = q - lowest;
        return (k >= 0 && k < levels()) ? betti[k] : 0;
    }
    std::vector<bigint> torsion_at(int q) const {
        int k = q - lowest;
        return (k >= 0 && k < levels()) ? torsion[k] : std::vector<bigint>{};
    }

    bool is_zero() const {
        for (auto b : betti)
            if (b != 0) return false;
        for (const auto& t : torsion)
            if (!t.empty()) return false;
        return true;
    }

    /// Drop all degrees above qmax.
    void truncate(int qmax) {
        while (!betti.empty() && lowest + static_cast<int>(betti.size()) - 1 > qmax) {
            betti.pop_back();
            torsion.pop_back();
        }
    }

    std::string to_string() const {
        std::string s = ring.name() + " homology:";
        for (int k = 0; k < levels(); ++k) {
            s += " H_" + std::to_string(degree(k)) + "=" + std::to_string(betti[k]);
            if (!torsion[k].empty()) {
                s += "+tors(";
                for (size_t i = 0; i < torsion[k].size(); ++i) {
                    if (i) s += ",";
                    s += torsion[k][i].str();
                }
                s += ")";
            }
        }
        return s;
    }
};

/// Same groups in every degree (missing degrees count as zero).
inline bool same_homology(const HomologyResult& a, const HomologyResult& b) {
    int lo = std::min(a.lowest, b.lowest);
    int hi = std::max(a.lowest + a.levels(), b.lowest + b.levels());
    for (int q = lo; q < hi; ++q) {
        if (a.betti_at(q) != b.betti_at(q)) return false;
        if (a.torsion_at(q) != b.torsion_at(q)) return false;
    }
    return true;
}

/// Exact homology.  Throws if the boundary condition d.d = 0 fails, naming the
/// offending degree.
inline HomologyResult homology(const GradedChainComplex& c) {
    auto bad = verify_d_squared(c);
    if (!bad.empty())
        throw std::invalid_argument("boundary squared nonzero at degree " +
                                    std::to_string(bad.front()));
    const int n = c.levels();
    HomologyResult res;
    res.ring = c.ring;
    res.lowest = c.lowest;
    res.betti.assign(n, 0);
    res.torsion.assign(n, {});
    std::vector<long long> rank(n + 1, 0);
    std::vector<std::vector<bigint>> tors(n + 1);
    for (int k = 0; k < n; ++k) {
        if (c.boundary[k].ncols == 0 || c.boundary[k].nrows == 0) {
            rank[k] = 0;
            continue;
        }
        if (c.ring.is_field()) {
            rank[k] = rank_fp(c.boundary[k], c.ring.p);
        } else {
            SmithResult s = smith_normal_form(c.boundary[k]);
            rank[k] = s.rank;
            tors[k] = s.torsion();
        }
    }
    for (int k = 0; k < n; ++k) {
        long long out = (k + 1 < n) ? rank[k + 1] : 0;
        res.betti[k] = static_cast<long long>(c.dims[k]) - rank[k] - out;
        if (!c.ring.is_field() && k + 1 < n) res.torsion[k] = tors[k + 1];
    }
    return res;
}

namespace detail {
struct VecHash {
    size_t operator()(const std::vector<int>& v) const {
        size_t h = 1469598103934665603ull;
        for (int x : v) {
            h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};
}  // namespace detail

/// Simplicial chain complex of K with the standard alternating-sign boundary,
/// vertices of each simplex taken in ascending index order.  If `reduced`,
/// degree -1 gets a single basis element and every vertex maps to it.
inline GradedChainComplex from_simplicial(const SimplicialComplex& k, Ring ring,
                                          bool reduced, bool with_labels = true) {
    GradedChainComplex c;
    c.ring = ring;
    const int top = k.dimension();
    const int off = reduced ? 1 : 0;
    c.lowest = reduced ? -1 : 0;
    int nlevels = top + 1 + off;
    if (nlevels <= 0) nlevels = off;  // empty complex, reduced: just degree -1
    c.dims.assign(nlevels, 0);
    c.basis.assign(nlevels, {});
    c.boundary.assign(nlevels, SparseMat());
    if (reduced) {
        c.dims[0] = 1;
        if (with_labels) c.basis[0] = {"()"};
        c.boundary[0] = SparseMat(1, 0);
    }
    std::unordered_map<std::vector<int>, int, detail::VecHash> below;
    for (int d = 0; d <= top; ++d) {
        const auto& level = k.faces[d];
        const int lev = d + off;
        c.dims[lev] = level.size();
        if (with_labels) {
            c.basis[lev].reserve(level.size());
            for (const auto& f : level) {
                std::string s;
                for (size_t i = 0; i < f.size(); ++i) {
                    if (i) s += '.';
                    s += std::to_string(f[i]);
                }
                c.basis[lev].push_back(std::move(s));
            }
        }
        int below_dim = (lev == 0) ? 0 : static_cast<int>(c.dims[lev - 1]);
        SparseMat b(static_cast<int>(level.size()), lev == 0 ? 0 : below_dim);
        if (d == 0) {
            if (reduced)
                for (size_t i = 0; i < level.size(); ++i) b.add(static_cast<int>(i), 0, 1);
        } else {
            std::vector<int> sub;
            for (size_t i = 0; i < level.size(); ++i) {
                const auto& f = level[i];
                long long sign = 1;
                for (size_t drop = 0; drop < f.size(); ++drop) {
                    sub.clear();
                    for (size_t j = 0; j < f.size(); ++j)
                        if (j != drop) sub.push_back(f[j]);
                    auto it = below.find(sub);
                    if (it == below.end())
                        throw std::invalid_argument("complex not closed under subsets");
                    b.add(static_cast<int>(i), it->second, sign);
                    sign = -sign;
                }
            }
        }
        b.normalize();
        c.boundary[lev] = std::move(b);
        below.clear();
        for (size_t i = 0; i < level.size(); ++i) below.emplace(level[i], static_cast<int>(i));
    }
    if (c.boundary.empty()) {
        c.dims.clear();
    }
    return c;
}

/// Reduced homology of the order complex of a poset.  `qmax` >= 0 truncates
/// the computation; reported degrees are then exact through qmax only.
inline HomologyResult homology_of_poset(const Poset& p, Ring ring, int qmax = -1) {
    SimplicialComplex k = order_complex(p, qmax < 0 ? -1 : qmax + 1);
    GradedChainComplex c = from_simplicial(k, ring, /*reduced=*/true,
                                           /*with_labels=*/k.face_count() < 100000);
    HomologyResult h = homology(c);
    if (qmax >= 0) h.truncate(qmax);
    return h;
}

/// Universal coefficients consistency between a Z result and an F_p result:
/// betti_p(q) = betti_Z(q) + #{p-divisible torsion at q} + #{at q-1}.
inline bool universal_coefficients_consistent(const HomologyResult& hz,
                                              const HomologyResult& hp) {
    if (hz.ring.is_field() || !hp.ring.is_field()) return false;
    const int p = hp.ring.p;
    int lo = std::min(hz.lowest, hp.lowest);
    int hi = std::max(hz.lowest + hz.levels(), hp.lowest + hp.levels());
    for (int q = lo; q < hi; ++q) {
        long long expect = hz.betti_at(q);
        for (const auto& t : hz.torsion_at(q))
            if (t % p == 0) ++expect;
        for (const auto& t : hz.torsion_at(q - 1))
            if (t % p == 0) ++expect;
        if (hp.betti_at(q) != expect) return false;
    }
    return true;
}

}  // namespace sdj
