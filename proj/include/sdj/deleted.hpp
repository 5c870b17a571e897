#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "sdj/diagram.hpp"
#include "sdj/group_action.hpp"
#include "sdj/poset.hpp"

namespace sdj {

inline std::string set_label(uint32_t mask) {
    std::string s = "{";
    bool first = true;
    for (int i = 0; (mask >> i) != 0; ++i)
        if (mask & (1u << i)) {
            if (!first) s += ',';
            s += std::to_string(i + 1);
            first = false;
        }
    return s + "}";
}

/// Boolean lattice B_n with the subset masks kept alongside the poset.
struct BooleanPoset {
    Poset poset;
    std::vector<uint32_t> masks;  // aligned with poset indices
};

inline BooleanPoset boolean_poset_struct(int n) {
    if (n < 0 || n > 20) throw std::invalid_argument("boolean_poset: n out of range");
    const uint32_t total = 1u << n;
    std::vector<std::string> labels(total);
    for (uint32_t m = 0; m < total; ++m) labels[m] = set_label(m);
    BitMatrix rel(total);
    for (uint32_t a = 0; a < total; ++a)
        for (uint32_t b = 0; b < total; ++b)
            if ((a & ~b) == 0) rel.set(a, b);
    BooleanPoset out;
    out.poset = Poset::from_relation(labels, rel);
    out.masks.resize(total);
    for (uint32_t m = 0; m < total; ++m) out.masks[out.poset.index_of(set_label(m))] = m;
    return out;
}

/// All subsets of [n] ordered by inclusion.
inline Poset boolean_poset(int n) { return boolean_poset_struct(n).poset; }

/// A deleted join/product with its tuple bookkeeping.  Coordinates are named
/// by `coords` (ascending); tuples[i] lists, per coordinate, the element of
/// the ground poset.
struct TuplePoset {
    Poset poset;
    std::vector<int> coords;
    std::vector<std::vector<int>> tuples;  // aligned with poset indices
    std::unordered_map<std::vector<int>, int, detail::VecHash> index;

    std::string tuple_label(const Poset& ground, const std::vector<int>& t) const {
        std::string s = "(";
        for (size_t i = 0; i < t.size(); ++i) {
            if (i) s += '|';
            s += ground.label(t[i]);
        }
        return s + ")";
    }
};

/// Tuples of pairwise disjoint elements of P (disjoint: the only common lower
/// bound is the minimum), ordered componentwise.  With `require_nonzero`,
/// every coordinate must differ from the minimum (deleted product).
inline TuplePoset deleted_join_on(const Poset& p, std::vector<int> coords,
                                  bool require_nonzero) {
    auto bot = p.bottom();
    if (!bot) throw std::invalid_argument("deleted join needs a unique minimum");
    const int n = p.size();
    const int t = static_cast<int>(coords.size());
    BitMatrix disj(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (p.common_below_count(a, b) == 1) disj.set(a, b);

    TuplePoset out;
    out.coords = coords;
    std::vector<std::vector<int>> tuples;
    std::vector<int> cur(t);
    std::function<void(int)> gen = [&](int pos) {
        if (pos == t) {
            tuples.push_back(cur);
            return;
        }
        for (int e = 0; e < n; ++e) {
            if (require_nonzero && e == *bot) continue;
            bool ok = true;
            for (int j = 0; j < pos && ok; ++j)
                if (!disj.get(cur[j], e)) ok = false;
            if (!ok) continue;
            cur[pos] = e;
            gen(pos + 1);
        }
    };
    if (t == 0)
        tuples.push_back({});
    else
        gen(0);

    const int m = static_cast<int>(tuples.size());
    std::vector<std::string> labels(m);
    for (int i = 0; i < m; ++i) labels[i] = out.tuple_label(p, tuples[i]);
    BitMatrix rel(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            bool le = true;
            for (int c = 0; c < t && le; ++c)
                if (!p.leq(tuples[i][c], tuples[j][c])) le = false;
            if (le) rel.set(i, j);
        }
    out.poset = Poset::from_relation(labels, rel);
    out.tuples.resize(m);
    for (int i = 0; i < m; ++i) {
        int ni = out.poset.index_of(out.tuple_label(p, tuples[i]));
        out.tuples[ni] = tuples[i];
    }
    for (int i = 0; i < m; ++i) out.index.emplace(out.tuples[i], i);
    return out;
}

inline TuplePoset deleted_join(const Poset& p, int n) {
    std::vector<int> coords(n);
    for (int i = 0; i < n; ++i) coords[i] = i + 1;
    return deleted_join_on(p, coords, false);
}

inline TuplePoset deleted_product(const Poset& p, int n) {
    std::vector<int> coords(n);
    for (int i = 0; i < n; ++i) coords[i] = i + 1;
    return deleted_join_on(p, coords, true);
}

/// An element of B_{n,k,t}: t ordered blocks and k-t unordered blocks,
/// pairwise disjoint subsets of [n] as bitmasks.  Nonempty unordered blocks
/// are kept sorted by least element; empty unordered slots are implicit.
struct BlockFamily {
    std::vector<uint32_t> ordered;
    std::vector<uint32_t> unordered;  // nonempty only

    std::string label() const {
        std::string s;
        if (!ordered.empty()) {
            s += "(";
            for (size_t i = 0; i < ordered.size(); ++i) {
                if (i) s += ',';
                s += set_label(ordered[i]);
            }
            s += ")";
        }
        s += "{";
        for (size_t i = 0; i < unordered.size(); ++i) {
            if (i) s += ',';
            s += set_label(unordered[i]);
        }
        s += "}";
        return s;
    }
};

namespace detail {

/// Can the nonempty blocks xs be matched injectively into distinct blocks of
/// ys, each containing its source?  (Empty blocks pair off freely.)
inline bool blocks_embed(const std::vector<uint32_t>& xs, const std::vector<uint32_t>& ys) {
    const int a = static_cast<int>(xs.size());
    const int b = static_cast<int>(ys.size());
    if (a > b) return false;
    std::vector<int> match(b, -1);
    std::function<bool(int, std::vector<char>&)> try_match = [&](int i,
                                                                 std::vector<char>& used) {
        for (int j = 0; j < b; ++j) {
            if (used[j] || (xs[i] & ~ys[j]) != 0) continue;
            used[j] = 1;
            if (match[j] < 0 || try_match(match[j], used)) {
                match[j] = i;
                return true;
            }
        }
        return false;
    };
    for (int i = 0; i < a; ++i) {
        std::vector<char> used(b, 0);
        if (!try_match(i, used)) return false;
    }
    return true;
}

inline bool family_leq(const BlockFamily& x, const BlockFamily& y) {
    for (size_t i = 0; i < x.ordered.size(); ++i)
        if ((x.ordered[i] & ~y.ordered[i]) != 0) return false;
    return blocks_embed(x.unordered, y.unordered);
}

}  // namespace detail

/// B_{n,k,t} with its block-family bookkeeping.
struct BnktPoset {
    Poset poset;
    std::vector<BlockFamily> families;  // aligned with poset indices
    int n = 0, k = 0, t = 0;
};

/// The partially ordered refinement of the k-fold Boolean algebra: a t-tuple
/// of ordered blocks plus k-t unordered blocks, all disjoint subsets of [n];
/// ordered slots compare by inclusion, unordered by permuted inclusion.
inline BnktPoset bnkt_struct(int n, int k, int t) {
    if (n < 0 || k < 1 || t < 0 || t > k) throw std::invalid_argument("bnkt: bad parameters");
    if (n > 20) throw std::invalid_argument("bnkt: n out of range");
    std::vector<BlockFamily> fams;
    std::vector<int> assign(n, 0);
    // value 0 = unused, 1..t ordered slot, t+1.. unordered block in
    // first-occurrence order (restricted growth keeps multisets canonical)
    std::function<void(int, int)> gen = [&](int e, int used_unordered) {
        if (e == n) {
            BlockFamily f;
            f.ordered.assign(t, 0);
            f.unordered.assign(used_unordered, 0);
            for (int i = 0; i < n; ++i) {
                int v = assign[i];
                if (v == 0) continue;
                if (v <= t)
                    f.ordered[v - 1] |= 1u << i;
                else
                    f.unordered[v - t - 1] |= 1u << i;
            }
            fams.push_back(std::move(f));
            return;
        }
        int maxval = t + std::min(used_unordered + 1, k - t);
        for (int v = 0; v <= maxval; ++v) {
            assign[e] = v;
            gen(e + 1, std::max(used_unordered, v - t));
        }
        assign[e] = 0;
    };
    gen(0, 0);

    const int m = static_cast<int>(fams.size());
    std::vector<std::string> labels(m);
    for (int i = 0; i < m; ++i) labels[i] = fams[i].label();
    BitMatrix rel(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (detail::family_leq(fams[i], fams[j])) rel.set(i, j);
    BnktPoset out;
    out.n = n;
    out.k = k;
    out.t = t;
    out.poset = Poset::from_relation(labels, rel);
    out.families.resize(m);
    for (int i = 0; i < m; ++i) out.families[out.poset.index_of(fams[i].label())] = fams[i];
    return out;
}

inline Poset bnkt(int n, int k, int t) { return bnkt_struct(n, k, t).poset; }

/// k-fold Boolean algebra: unordered families of k disjoint, possibly empty
/// subsets of [n].
inline Poset bnk(int n, int k) { return bnkt(n, k, 0); }

/// Same with every block nonempty (induced subposet of bnk).
inline BnktPoset bnk_hat_struct(int n, int k) {
    BnktPoset full = bnkt_struct(n, k, 0);
    std::vector<int> keep;
    for (int i = 0; i < full.poset.size(); ++i)
        if (static_cast<int>(full.families[i].unordered.size()) == k) keep.push_back(i);
    BnktPoset out;
    out.n = n;
    out.k = k;
    out.t = 0;
    out.poset = full.poset.induced(keep);
    out.families.resize(keep.size());
    for (size_t i = 0; i < keep.size(); ++i) {
        const BlockFamily& f = full.families[keep[i]];
        out.families[out.poset.index_of(f.label())] = f;
    }
    return out;
}

inline Poset bnk_hat(int n, int k) { return bnk_hat_struct(n, k).poset; }

/// The diagram D_n over the nonempty subsets of [n]: the fiber at A is the
/// deleted product indexed by A, arrows forget coordinates.
struct DnDiagram {
    PosetDiagram diagram;
    std::vector<uint32_t> base_masks;      // aligned with diagram.base
    std::vector<TuplePoset> fiber_tuples;  // aligned; .poset equals diagram fiber
    std::unordered_map<uint32_t, int> mask_to_base;
};

inline DnDiagram diagram_dn(const Poset& p, int n) {
    if (n < 1) throw std::invalid_argument("diagram_dn: n >= 1 required");
    const uint32_t total = 1u << n;
    std::vector<std::string> labels;
    std::vector<uint32_t> masks;
    for (uint32_t m = 1; m < total; ++m) {
        masks.push_back(m);
        labels.push_back(set_label(m));
    }
    const int nb = static_cast<int>(masks.size());
    BitMatrix rel(nb);
    for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nb; ++j)
            if ((masks[i] & ~masks[j]) == 0) rel.set(i, j);
    DnDiagram out;
    out.diagram.base = Poset::from_relation(labels, rel);
    out.base_masks.resize(nb);
    for (int i = 0; i < nb; ++i) {
        uint32_t m = masks[i];
        int idx = out.diagram.base.index_of(set_label(m));
        out.base_masks[idx] = m;
        out.mask_to_base[m] = idx;
    }
    out.fiber_tuples.resize(nb);
    out.diagram.fibers.resize(nb);
    for (int i = 0; i < nb; ++i) {
        std::vector<int> coords;
        for (int b = 0; b < n; ++b)
            if (out.base_masks[i] & (1u << b)) coords.push_back(b + 1);
        out.fiber_tuples[i] = deleted_join_on(p, coords, true);
        out.diagram.fibers[i] = out.fiber_tuples[i].poset;
    }
    for (int i = 0; i < nb; ++i)
        for (int j : out.diagram.base.below(i)) {
            const TuplePoset& fi = out.fiber_tuples[i];
            const TuplePoset& fj = out.fiber_tuples[j];
            std::vector<int> arrow(fi.poset.size());
            for (int e = 0; e < fi.poset.size(); ++e) {
                std::vector<int> sub;
                for (size_t c = 0; c < fi.coords.size(); ++c) {
                    uint32_t bit = 1u << (fi.coords[c] - 1);
                    if (out.base_masks[j] & bit) sub.push_back(fi.tuples[e][c]);
                }
                arrow[e] = fj.index.at(sub);
            }
            out.diagram.set_arrow(i, j, std::move(arrow));
        }
    validate_diagram(out.diagram);
    return out;
}

/// Checks that the poset limit of D_n is isomorphic to the deleted join with
/// the all-minimum tuple removed, via filling forgotten coordinates with the
/// minimum.
struct DlimReport {
    bool ok = false;
    long long limit_size = 0;
    long long join_size = 0;
};

inline DlimReport verify_dlim_dn(const Poset& p, int n) {
    DnDiagram dn = diagram_dn(p, n);
    LimitPoset lim = poset_limit(dn.diagram);
    TuplePoset join = deleted_join(p, n);
    auto bot = join.poset.bottom();
    if (!bot) throw std::logic_error("deleted join lost its minimum");
    std::vector<int> keep;
    for (int v = 0; v < join.poset.size(); ++v)
        if (v != *bot) keep.push_back(v);
    Poset target = join.poset.induced(keep);

    DlimReport rep;
    rep.limit_size = lim.poset.size();
    rep.join_size = target.size();
    if (rep.limit_size != rep.join_size) return rep;
    int pbot = *p.bottom();
    std::vector<int> map(lim.poset.size());
    for (int i = 0; i < lim.poset.size(); ++i) {
        auto [b, e] = lim.elems[i];
        const TuplePoset& fib = dn.fiber_tuples[b];
        std::vector<int> full(n, pbot);
        for (size_t c = 0; c < fib.coords.size(); ++c)
            full[fib.coords[c] - 1] = fib.tuples[e][c];
        int ji = join.index.at(full);
        map[i] = target.index_of(join.poset.label(ji));
    }
    rep.ok = is_poset_isomorphism(lim.poset, target, map);
    return rep;
}

/// The symmetric group action on the subdivided diagram: a permutation of [n]
/// permutes each chain of subsets and the tuple coordinates in the fibers.
struct SymmetricDnAction {
    BdDiagram bd;
    DiagramAction action;
};

inline SymmetricDnAction symmetric_action_on_dn(const DnDiagram& dn, int n) {
    SymmetricDnAction out;
    out.bd = diagram_barycentric(dn.diagram);
    const Poset& bd_base = out.bd.diagram.base;
    std::unordered_map<std::vector<int>, int, detail::VecHash> chain_index;
    for (int i = 0; i < bd_base.size(); ++i) chain_index.emplace(out.bd.base_chains[i], i);

    std::vector<std::vector<int>> base_gens;
    std::vector<std::vector<std::vector<int>>> fiber_gens;
    for (int s = 0; s + 1 < n; ++s) {
        // adjacent transposition (s+1, s+2) in 1-based ground-set labels
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        std::swap(perm[s], perm[s + 1]);
        auto apply_mask = [&](uint32_t m) {
            uint32_t r = 0;
            for (int b = 0; b < n; ++b)
                if (m & (1u << b)) r |= 1u << perm[b];
            return r;
        };
        std::vector<int> bmap(bd_base.size());
        std::vector<std::vector<int>> fmaps(bd_base.size());
        for (int i = 0; i < bd_base.size(); ++i) {
            std::vector<int> img;
            for (int v : out.bd.base_chains[i])
                img.push_back(dn.mask_to_base.at(apply_mask(dn.base_masks[v])));
            bmap[i] = chain_index.at(img);
            const TuplePoset& src = dn.fiber_tuples[out.bd.base_chains[i].back()];
            const TuplePoset& dst = dn.fiber_tuples[img.back()];
            fmaps[i].resize(src.poset.size());
            for (int e = 0; e < src.poset.size(); ++e) {
                std::vector<int> tup(dst.coords.size());
                for (size_t c = 0; c < src.coords.size(); ++c) {
                    int target_coord = perm[src.coords[c] - 1] + 1;
                    auto it = std::lower_bound(dst.coords.begin(), dst.coords.end(),
                                               target_coord);
                    tup[it - dst.coords.begin()] = src.tuples[e][c];
                }
                fmaps[i][e] = dst.index.at(tup);
            }
        }
        base_gens.push_back(std::move(bmap));
        fiber_gens.push_back(std::move(fmaps));
    }
    out.action = diagram_action_from_generators(out.bd.diagram, base_gens, fiber_gens);
    return out;
}

/// Per-orbit check that the quotient diagram's fibers match the Young-subgroup
/// quotients of deleted products, via an explicit relabelling isomorphism.
struct QuotientFibersReport {
    bool base_matches = false;
    bool fibers_match = true;
    int orbits = 0;
    std::string detail;

    bool ok() const { return base_matches && fibers_match; }
};

inline QuotientFibersReport verify_quotient_fibers(const Poset& p, int n) {
    DnDiagram dn = diagram_dn(p, n);
    SymmetricDnAction sym = symmetric_action_on_dn(dn, n);
    QuotientDiagram qd = quotient_diagram(sym.bd.diagram, sym.action);

    QuotientFibersReport rep;
    rep.orbits = qd.diagram.base.size();

    // base of the quotient should be the nonempty subsets of [n], via the
    // size-type of each chain orbit
    {
        const uint32_t total = 1u << n;
        std::vector<std::string> labels;
        std::vector<uint32_t> masks;
        for (uint32_t m = 1; m < total; ++m) {
            masks.push_back(m);
            labels.push_back(set_label(m));
        }
        BitMatrix rel(static_cast<int>(masks.size()));
        for (size_t i = 0; i < masks.size(); ++i)
            for (size_t j = 0; j < masks.size(); ++j)
                if ((masks[i] & ~masks[j]) == 0)
                    rel.set(static_cast<int>(i), static_cast<int>(j));
        Poset bhat = Poset::from_relation(labels, rel);
        std::vector<int> map(qd.diagram.base.size());
        for (int o = 0; o < qd.diagram.base.size(); ++o) {
            const auto& chain = sym.bd.base_chains[qd.base_q.rep[o]];
            uint32_t type = 0;
            for (int v : chain)
                type |= 1u << (__builtin_popcount(dn.base_masks[v]) - 1);
            map[o] = bhat.index_of(set_label(type));
        }
        rep.base_matches = is_poset_isomorphism(qd.diagram.base, bhat, map);
    }

    for (int o = 0; o < qd.diagram.base.size(); ++o) {
        const auto& chain = sym.bd.base_chains[qd.base_q.rep[o]];
        std::vector<uint32_t> cmasks;
        for (int v : chain) cmasks.push_back(dn.base_masks[v]);
        uint32_t top = cmasks.back();
        int at = __builtin_popcount(top);
        // relabelling of the top set: blocks S_1, S_2\S_1, ... to consecutive
        // coordinates
        std::vector<int> rho(n + 1, -1);
        int next = 1;
        uint32_t prev = 0;
        for (uint32_t m : cmasks) {
            uint32_t blk = m & ~prev;
            for (int b = 0; b < n; ++b)
                if (blk & (1u << b)) rho[b + 1] = next++;
            prev = m;
        }
        // expected: deleted product on [a_t] modulo the Young subgroup of the
        // block sizes
        TuplePoset prod = deleted_product(p, at);
        std::vector<std::vector<int>> young_gens;
        prev = 0;
        int offset = 0;
        for (uint32_t m : cmasks) {
            int bs = __builtin_popcount(m & ~prev);
            for (int c = offset + 1; c < offset + bs; ++c) {
                // transposition of coordinates c, c+1 (1-based)
                std::vector<int> g(prod.poset.size());
                for (int e = 0; e < prod.poset.size(); ++e) {
                    std::vector<int> tup = prod.tuples[e];
                    std::swap(tup[c - 1], tup[c]);
                    g[e] = prod.index.at(tup);
                }
                young_gens.push_back(std::move(g));
            }
            offset += bs;
            prev = m;
        }
        PosetGroupAction young = PosetGroupAction::from_generators(prod.poset, young_gens);
        QuotientPoset expected = quotient_poset(prod.poset, young, /*strict=*/false);

        // witness map: actual fiber class -> expected class via rho
        const TuplePoset& fib = dn.fiber_tuples[chain.back()];
        const QuotientPoset& actual = qd.fiber_qs[o];
        std::vector<int> cls_map(actual.poset.size(), -1);
        bool good = true;
        for (int e = 0; e < fib.poset.size() && good; ++e) {
            std::vector<int> tup(at);
            for (size_t c = 0; c < fib.coords.size(); ++c)
                tup[rho[fib.coords[c]] - 1] = fib.tuples[e][c];
            int ec = expected.orbit_of[prod.index.at(tup)];
            int ac = actual.orbit_of[e];
            if (cls_map[ac] < 0)
                cls_map[ac] = ec;
            else if (cls_map[ac] != ec)
                good = false;
        }
        if (good) good = is_poset_isomorphism(actual.poset, expected.poset, cls_map);
        if (!good) {
            rep.fibers_match = false;
            rep.detail += "orbit " + qd.diagram.base.label(o) + " fiber mismatch; ";
        }
    }
    return rep;
}

}  // namespace sdj
