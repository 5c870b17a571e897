#pragma once

#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "sdj/chain_complex.hpp"
#include "sdj/group_action.hpp"
#include "sdj/poset.hpp"

namespace sdj {

/// Diagram of posets over a base poset: a fiber poset D(x) per base element
/// and an order-preserving arrow f_xy : D(x) -> D(y) for every base pair
/// x >= y, functorial (f_yz . f_xy = f_xz).  Arrows run downward, matching
/// poset morphisms.
struct PosetDiagram {
    Poset base;
    std::vector<Poset> fibers;
    /// arrows[key(x,y)] for x > y; identity arrows are implicit.
    std::unordered_map<long long, std::vector<int>> arrows;

    long long key(int x, int y) const {
        return static_cast<long long>(x) * base.size() + y;
    }
    void set_arrow(int x, int y, std::vector<int> f) { arrows[key(x, y)] = std::move(f); }

    /// The arrow x -> y (x >= y).  For x == y the identity.
    std::vector<int> arrow(int x, int y) const {
        if (x == y) {
            std::vector<int> id(fibers[x].size());
            for (size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
            return id;
        }
        auto it = arrows.find(static_cast<long long>(x) * base.size() + y);
        if (it == arrows.end()) throw std::invalid_argument("missing diagram arrow");
        return it->second;
    }
    int apply_arrow(int x, int y, int e) const {
        if (x == y) return e;
        auto it = arrows.find(static_cast<long long>(x) * base.size() + y);
        if (it == arrows.end()) throw std::invalid_argument("missing diagram arrow");
        return it->second[e];
    }
};

/// Functoriality and monotonicity of every arrow, checked exhaustively.
inline void validate_diagram(const PosetDiagram& d) {
    const int n = d.base.size();
    if (static_cast<int>(d.fibers.size()) != n)
        throw std::invalid_argument("diagram: one fiber per base element required");
    for (int x = 0; x < n; ++x)
        for (int y : d.base.below(x)) {
            const auto f = d.arrow(x, y);
            const Poset& fx = d.fibers[x];
            const Poset& fy = d.fibers[y];
            if (static_cast<int>(f.size()) != fx.size())
                throw std::invalid_argument("diagram arrow has wrong domain size");
            for (int e = 0; e < fx.size(); ++e)
                if (f[e] < 0 || f[e] >= fy.size())
                    throw std::invalid_argument("diagram arrow image out of range");
            for (int a = 0; a < fx.size(); ++a)
                for (int b = 0; b < fx.size(); ++b)
                    if (fx.leq(a, b) && !fy.leq(f[a], f[b]))
                        throw std::invalid_argument("diagram arrow not order-preserving");
        }
    for (int x = 0; x < n; ++x)
        for (int y : d.base.below(x))
            for (int z : d.base.below(y)) {
                const auto fxy = d.arrow(x, y);
                const auto fyz = d.arrow(y, z);
                const auto fxz = d.arrow(x, z);
                for (int e = 0; e < d.fibers[x].size(); ++e)
                    if (fyz[fxy[e]] != fxz[e])
                        throw std::invalid_argument("diagram arrows not functorial");
            }
}

/// Poset limit of a diagram: pairs (p, e), e in D(p), with
/// (p, e) >= (p', e') iff p >= p' and f_pp'(e) >= e'.
struct LimitPoset {
    Poset poset;
    std::vector<std::pair<int, int>> elems;  // aligned with poset indices: (base, fiber elem)
};

inline LimitPoset poset_limit(const PosetDiagram& d) {
    std::vector<std::pair<int, int>> elems;
    std::vector<std::string> labels;
    for (int x = 0; x < d.base.size(); ++x)
        for (int e = 0; e < d.fibers[x].size(); ++e) {
            elems.emplace_back(x, e);
            labels.push_back("(" + d.base.label(x) + ";" + d.fibers[x].label(e) + ")");
        }
    const int n = static_cast<int>(elems.size());
    BitMatrix rel(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto [p, e] = elems[i];
            auto [p2, e2] = elems[j];
            // (p2,e2) <= (p,e) iff p2 <= p and e2 <= f_{p p2}(e)
            if (d.base.leq(p2, p) && d.fibers[p2].leq(e2, d.apply_arrow(p, p2, e)))
                rel.set(j, i);
        }
    Poset q = Poset::from_relation(labels, rel);
    LimitPoset out;
    std::vector<std::pair<int, int>> aligned(n);
    for (int i = 0; i < n; ++i) {
        int ni = q.index_of("(" + d.base.label(elems[i].first) + ";" +
                            d.fibers[elems[i].first].label(elems[i].second) + ")");
        aligned[ni] = elems[i];
    }
    out.poset = std::move(q);
    out.elems = std::move(aligned);
    return out;
}

/// Barycentric subdivision of a diagram: base becomes the poset of chains,
/// the fiber over a chain is the fiber over its top element, and arrows
/// forget down to the top of the subchain.
struct BdDiagram {
    PosetDiagram diagram;
    std::vector<std::vector<int>> base_chains;  // aligned with diagram.base indices
};

inline BdDiagram diagram_barycentric(const PosetDiagram& d) {
    Poset bd = barycentric_subdivision(d.base);
    std::vector<std::vector<int>> chains(bd.size());
    for_each_chain(d.base, -1, [&](const std::vector<int>& c) {
        std::string l;
        for (size_t j = 0; j < c.size(); ++j) {
            if (j) l += '<';
            l += d.base.label(c[j]);
        }
        chains[bd.index_of(l)] = c;
    });
    BdDiagram out;
    out.diagram.base = bd;
    out.base_chains = chains;
    out.diagram.fibers.resize(bd.size());
    for (int i = 0; i < bd.size(); ++i) out.diagram.fibers[i] = d.fibers[chains[i].back()];
    for (int i = 0; i < bd.size(); ++i)
        for (int j : bd.below(i)) {
            int ti = chains[i].back(), tj = chains[j].back();
            out.diagram.set_arrow(i, j, d.arrow(ti, tj));
        }
    return out;
}

/// A group acting on a diagram: per group element, an automorphism of the
/// base and a compatible family of fiber isomorphisms tau_{g,x}: D(x) -> D(gx).
struct DiagramAction {
    std::vector<std::vector<int>> base_maps;                // [g][x]
    std::vector<std::vector<std::vector<int>>> fiber_maps;  // [g][x][e]

    int order() const { return static_cast<int>(base_maps.size()); }
};

/// Closure of diagram-action generators, with full compatibility checks:
/// each tau_{g,x} must be an isomorphism commuting with the arrows.
inline DiagramAction diagram_action_from_generators(
    const PosetDiagram& d, const std::vector<std::vector<int>>& base_gens,
    const std::vector<std::vector<std::vector<int>>>& fiber_gens) {
    const int n = d.base.size();
    auto validate = [&](const std::vector<int>& bm, const std::vector<std::vector<int>>& fm) {
        PosetGroupAction::validate_automorphism(d.base, bm);
        for (int x = 0; x < n; ++x) {
            const Poset& src = d.fibers[x];
            const Poset& dst = d.fibers[bm[x]];
            if (static_cast<int>(fm[x].size()) != src.size() || src.size() != dst.size())
                throw std::invalid_argument("fiber map size mismatch");
            std::vector<char> hit(dst.size(), 0);
            for (int e = 0; e < src.size(); ++e) {
                int v = fm[x][e];
                if (v < 0 || v >= dst.size() || hit[v])
                    throw std::invalid_argument("fiber map not a bijection");
                hit[v] = 1;
            }
            for (int a = 0; a < src.size(); ++a)
                for (int b = 0; b < src.size(); ++b)
                    if (src.leq(a, b) != dst.leq(fm[x][a], fm[x][b]))
                        throw std::invalid_argument("fiber map not an order isomorphism");
        }
        // compatibility with arrows: tau_{g,y} . f_xy = f_{gx,gy} . tau_{g,x}
        for (int x = 0; x < n; ++x)
            for (int y : d.base.below(x))
                for (int e = 0; e < d.fibers[x].size(); ++e)
                    if (fm[y][d.apply_arrow(x, y, e)] !=
                        d.apply_arrow(bm[x], bm[y], fm[x][e]))
                        throw std::invalid_argument("fiber maps incompatible with arrows");
    };
    for (size_t g = 0; g < base_gens.size(); ++g) validate(base_gens[g], fiber_gens[g]);

    DiagramAction act;
    std::vector<int> id(n);
    for (int i = 0; i < n; ++i) id[i] = i;
    std::vector<std::vector<int>> idf(n);
    for (int x = 0; x < n; ++x) {
        idf[x].resize(d.fibers[x].size());
        for (int e = 0; e < d.fibers[x].size(); ++e) idf[x][e] = e;
    }
    std::map<std::vector<int>, int> seen;
    act.base_maps.push_back(id);
    act.fiber_maps.push_back(idf);
    seen[id] = 0;
    for (size_t head = 0; head < act.base_maps.size(); ++head) {
        auto curb = act.base_maps[head];
        auto curf = act.fiber_maps[head];
        for (size_t g = 0; g < base_gens.size(); ++g) {
            std::vector<int> nb(n);
            for (int x = 0; x < n; ++x) nb[x] = base_gens[g][curb[x]];
            if (seen.count(nb)) continue;
            std::vector<std::vector<int>> nf(n);
            for (int x = 0; x < n; ++x) {
                nf[x].resize(curf[x].size());
                for (size_t e = 0; e < curf[x].size(); ++e)
                    nf[x][e] = fiber_gens[g][curb[x]][curf[x][e]];
            }
            seen[nb] = static_cast<int>(act.base_maps.size());
            act.base_maps.push_back(std::move(nb));
            act.fiber_maps.push_back(std::move(nf));
        }
    }
    return act;
}

/// Quotient of a diagram by a diagram action.  The base is quotiented
/// strictly (condition A required); each fiber is quotiented by its
/// stabilizer, acting through the tau maps (recomputed here, not trusted);
/// the induced arrows are re-verified to be well defined and functorial.
struct QuotientDiagram {
    PosetDiagram diagram;
    QuotientPoset base_q;
    std::vector<QuotientPoset> fiber_qs;  // aligned with diagram.base indices
};

inline QuotientDiagram quotient_diagram(const PosetDiagram& d, const DiagramAction& act) {
    PosetGroupAction base_act = PosetGroupAction::from_generators(d.base, act.base_maps);
    if (!check_condition_a(d.base, base_act))
        throw std::invalid_argument("quotient_diagram: base action fails condition A");
    QuotientPoset bq = quotient_poset(d.base, base_act, /*strict=*/true);
    const int m = bq.poset.size();

    QuotientDiagram out;
    out.base_q = bq;
    out.diagram.base = bq.poset;
    out.diagram.fibers.resize(m);
    out.fiber_qs.resize(m);
    for (int o = 0; o < m; ++o) {
        int x0 = bq.rep[o];
        std::vector<std::vector<int>> stab_gens;
        for (int g = 0; g < act.order(); ++g)
            if (act.base_maps[g][x0] == x0) stab_gens.push_back(act.fiber_maps[g][x0]);
        PosetGroupAction stab = PosetGroupAction::from_generators(d.fibers[x0], stab_gens);
        out.fiber_qs[o] = quotient_poset(d.fibers[x0], stab, /*strict=*/false);
        out.diagram.fibers[o] = out.fiber_qs[o].poset;
    }
    for (int o1 = 0; o1 < m; ++o1) {
        int x0 = bq.rep[o1];
        for (int o2 : bq.poset.below(o1)) {
            // least member of orbit o2 lying below x0
            int yprime = -1;
            for (int y : bq.members[o2])
                if (d.base.less(y, x0)) {
                    yprime = y;
                    break;
                }
            if (yprime < 0)
                throw std::logic_error("quotient order without a representative below the rep");
            int y0 = bq.rep[o2];
            int h = -1;
            for (int g = 0; g < act.order(); ++g)
                if (act.base_maps[g][yprime] == y0) {
                    h = g;
                    break;
                }
            if (h < 0) throw std::logic_error("no group element moves y' to the orbit rep");
            const auto fxy = d.arrow(x0, yprime);
            const auto& tau = act.fiber_maps[h][yprime];
            std::vector<int> qarrow(out.diagram.fibers[o1].size(), -1);
            for (int e = 0; e < d.fibers[x0].size(); ++e) {
                int src_class = out.fiber_qs[o1].orbit_of[e];
                int dst_class = out.fiber_qs[o2].orbit_of[tau[fxy[e]]];
                if (qarrow[src_class] < 0)
                    qarrow[src_class] = dst_class;
                else if (qarrow[src_class] != dst_class)
                    throw std::logic_error("induced quotient arrow is not well defined");
            }
            for (int v : qarrow)
                if (v < 0) throw std::logic_error("induced quotient arrow left a class unmapped");
            out.diagram.set_arrow(o1, o2, std::move(qarrow));
        }
    }
    validate_diagram(out.diagram);
    return out;
}

/// Deterministic pseudo-random small diagram (base <= 4 elements, fibers <= 5)
/// for subdivision-invariance sweeps.  Cover arrows are drawn at random and
/// the draw is retried until all composites agree; a chain base (always
/// functorial) is the fallback.
inline PosetDiagram random_small_diagram(uint32_t seed) {
    std::mt19937 rng(seed * 2654435761u + 12345u);
    auto rand_int = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    auto random_poset = [&](int maxn, bool force_chain) {
        int n = rand_int(1, maxn);
        std::vector<std::string> labels;
        for (int i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i));
        std::vector<std::pair<int, int>> covers;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (force_chain ? (j == i + 1) : (rand_int(0, 9) < 4))
                    covers.emplace_back(i, j);
        return Poset::from_covers(labels, covers);
    };
    auto random_monotone_map = [&](const Poset& src, const Poset& dst) {
        std::vector<std::vector<int>> all;
        std::vector<int> cur(src.size());
        std::function<void(int)> rec = [&](int v) {
            if (v == src.size()) {
                all.push_back(cur);
                return;
            }
            for (int w = 0; w < dst.size(); ++w) {
                bool ok = true;
                for (int u = 0; u < v && ok; ++u)
                    if (src.leq(u, v) && !dst.leq(cur[u], w)) ok = false;
                for (int u = 0; u < v && ok; ++u)
                    if (src.leq(v, u) && !dst.leq(w, cur[u])) ok = false;
                if (!ok) continue;
                cur[v] = w;
                rec(v + 1);
            }
        };
        rec(0);
        return all[rand_int(0, static_cast<int>(all.size()) - 1)];
    };

    for (int attempt = 0; attempt < 500; ++attempt) {
        PosetDiagram d;
        d.base = random_poset(4, attempt >= 400);
        d.fibers.clear();
        for (int x = 0; x < d.base.size(); ++x) d.fibers.push_back(random_poset(5, false));
        // draw cover arrows, then propagate to all pairs, verifying agreement
        std::map<std::pair<int, int>, std::vector<int>> cover_arrow;
        for (auto [lo, hi] : d.base.covers())
            cover_arrow[{hi, lo}] = random_monotone_map(d.fibers[hi], d.fibers[lo]);
        bool consistent = true;
        for (int x = 0; x < d.base.size() && consistent; ++x)
            for (int y : d.base.below(x)) {
                // compose along every saturated chain from x down to y
                std::vector<std::vector<int>> results;
                std::function<void(int, std::vector<int>)> walk = [&](int v,
                                                                      std::vector<int> acc) {
                    if (v == y) {
                        results.push_back(acc);
                        return;
                    }
                    for (int w : d.base.lower_covers(v)) {
                        if (!d.base.leq(y, w)) continue;
                        const auto& cm = cover_arrow[{v, w}];
                        std::vector<int> nxt(acc.size());
                        for (size_t e = 0; e < acc.size(); ++e) nxt[e] = cm[acc[e]];
                        walk(w, nxt);
                    }
                };
                std::vector<int> id(d.fibers[x].size());
                for (size_t e = 0; e < id.size(); ++e) id[e] = static_cast<int>(e);
                walk(x, id);
                for (size_t i = 1; i < results.size(); ++i)
                    if (results[i] != results[0]) consistent = false;
                if (consistent && !results.empty()) d.set_arrow(x, y, results[0]);
            }
        if (!consistent) continue;
        validate_diagram(d);
        return d;
    }
    throw std::logic_error("random_small_diagram: no functorial draw found");
}

/// Homology of dlim D versus dlim of the subdivided diagram, per degree.
struct SubdivisionReport {
    HomologyResult original;
    HomologyResult subdivided;
    bool equal = false;
};

inline SubdivisionReport verify_subdivision_invariance(const PosetDiagram& d, Ring ring) {
    SubdivisionReport rep;
    rep.original = homology_of_poset(poset_limit(d).poset, ring);
    rep.subdivided = homology_of_poset(poset_limit(diagram_barycentric(d).diagram).poset, ring);
    rep.equal = same_homology(rep.original, rep.subdivided);
    return rep;
}

}  // namespace sdj
