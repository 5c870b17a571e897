#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "sdj/poset.hpp"

namespace sdj {

/// Finite group acting on a poset by order automorphisms.  Elements are
/// permutations of the element indices; the group is closed under composition
/// at construction, so arbitrary generating sets are accepted.
class PosetGroupAction {
public:
    /// Closure of `generators` (each a permutation of p's indices).  Every
    /// element is checked to be an order automorphism.
    static PosetGroupAction from_generators(const Poset& p,
                                            const std::vector<std::vector<int>>& generators) {
        const int n = p.size();
        for (const auto& g : generators) validate_automorphism(p, g);
        std::vector<int> id(n);
        for (int i = 0; i < n; ++i) id[i] = i;
        std::map<std::vector<int>, int> seen;
        PosetGroupAction act;
        act.elems_.push_back(id);
        seen[id] = 0;
        for (size_t head = 0; head < act.elems_.size(); ++head) {
            std::vector<int> cur = act.elems_[head];
            for (const auto& g : generators) {
                std::vector<int> comp(n);
                for (int i = 0; i < n; ++i) comp[i] = g[cur[i]];
                if (seen.emplace(comp, static_cast<int>(act.elems_.size())).second)
                    act.elems_.push_back(std::move(comp));
            }
        }
        return act;
    }

    static PosetGroupAction trivial(const Poset& p) {
        return from_generators(p, {});
    }

    int order() const { return static_cast<int>(elems_.size()); }
    const std::vector<std::vector<int>>& elements() const { return elems_; }
    int apply(int g, int v) const { return elems_[g][v]; }

    static void validate_automorphism(const Poset& p, const std::vector<int>& g) {
        const int n = p.size();
        if (static_cast<int>(g.size()) != n)
            throw std::invalid_argument("permutation size mismatch");
        std::vector<char> hit(n, 0);
        for (int v : g) {
            if (v < 0 || v >= n || hit[v])
                throw std::invalid_argument("not a permutation");
            hit[v] = 1;
        }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (p.leq(a, b) != p.leq(g[a], g[b]))
                    throw std::invalid_argument("permutation is not an order automorphism");
    }

private:
    std::vector<std::vector<int>> elems_;  // elems_[0] = identity
};

/// Separability condition at poset level: whenever g fixes the top of a
/// strict relation it must fix the bottom (morphisms in one orbit sharing a
/// source coincide; poset morphisms run downward from their source).
inline bool check_condition_a(const Poset& p, const PosetGroupAction& act) {
    for (const auto& g : act.elements()) {
        for (int x = 0; x < p.size(); ++x) {
            if (g[x] != x) continue;
            for (int y : p.below(x))
                if (g[y] != y) return false;
        }
    }
    return true;
}

/// The orbit poset P/G together with the projection data.
struct QuotientPoset {
    Poset poset;                            // orbit poset, canonically labelled
    std::vector<int> orbit_of;              // element of P -> orbit index in poset
    std::vector<std::vector<int>> members;  // per orbit, ascending element ids
    std::vector<int> rep;                   // canonical representative (min index)

    int project(int v) const { return orbit_of[v]; }
};

/// Quotient of a poset by a group action.  Orbits ordered by
/// [x] <= [y] iff some representatives satisfy x' <= y'.  In strict mode
/// condition A is required up front; in permissive mode the orbit relation is
/// built regardless and antisymmetry is re-checked (failures report witness
/// orbits).
inline QuotientPoset quotient_poset(const Poset& p, const PosetGroupAction& act,
                                    bool strict = false) {
    if (strict && !check_condition_a(p, act))
        throw std::invalid_argument("condition A fails for this action");
    const int n = p.size();
    // orbits
    std::vector<int> orb(n, -1);
    std::vector<std::vector<int>> members;
    for (int v = 0; v < n; ++v) {
        if (orb[v] >= 0) continue;
        int id = static_cast<int>(members.size());
        std::vector<int> mem;
        std::vector<int> stack{v};
        orb[v] = id;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            mem.push_back(u);
            for (const auto& g : act.elements()) {
                int w = g[u];
                if (orb[w] < 0) {
                    orb[w] = id;
                    stack.push_back(w);
                }
            }
        }
        std::sort(mem.begin(), mem.end());
        members.push_back(std::move(mem));
    }
    const int m = static_cast<int>(members.size());
    BitMatrix rel(m);
    for (int i = 0; i < m; ++i) rel.set(i, i);
    for (int a = 0; a < n; ++a)
        for (int b : p.above(a)) rel.set(orb[a], orb[b]);
    // orbit relation is transitive by translation; antisymmetry can fail
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (rel.get(i, j) && rel.get(j, i))
                throw std::domain_error(
                    "orbit relation not antisymmetric: witness orbits [" +
                    p.label(members[i][0]) + "] and [" + p.label(members[j][0]) + "]");
    std::vector<std::string> labels(m);
    for (int i = 0; i < m; ++i) labels[i] = "[" + p.label(members[i][0]) + "]";
    Poset q = Poset::from_relation(labels, rel);
    QuotientPoset out;
    // poset construction re-sorts by label; align bookkeeping with it
    std::vector<int> newidx(m);
    for (int i = 0; i < m; ++i) newidx[i] = q.index_of("[" + p.label(members[i][0]) + "]");
    out.poset = std::move(q);
    out.orbit_of.assign(n, -1);
    out.members.assign(m, {});
    out.rep.assign(m, -1);
    for (int i = 0; i < m; ++i) {
        out.members[newidx[i]] = members[i];
        out.rep[newidx[i]] = members[i][0];
    }
    for (int v = 0; v < n; ++v) out.orbit_of[v] = newidx[orb[v]];
    return out;
}

/// Lift a chain of the quotient poset to a chain of P mapping onto it, by the
/// inductive construction: extend the lifted prefix by translating a related
/// representative pair with a group element matching the previous lift.
inline std::vector<int> lift_chain(const Poset& p, const PosetGroupAction& act,
                                   const QuotientPoset& q, const std::vector<int>& qchain) {
    if (qchain.empty()) return {};
    for (size_t i = 0; i + 1 < qchain.size(); ++i)
        if (!q.poset.less(qchain[i], qchain[i + 1]))
            throw std::invalid_argument("input is not a chain of the quotient");
    std::vector<int> lift{q.rep[qchain[0]]};
    for (size_t i = 1; i < qchain.size(); ++i) {
        // some related pair (y < z) over (a_{i-1} < a_i)
        int y = -1, z = -1;
        for (int cy : q.members[qchain[i - 1]]) {
            for (int cz : q.members[qchain[i]])
                if (p.less(cy, cz)) {
                    y = cy;
                    z = cz;
                    break;
                }
            if (y >= 0) break;
        }
        if (y < 0) throw std::logic_error("quotient order without related representatives");
        int prev = lift.back();
        int gz = -1;
        for (const auto& g : act.elements())
            if (g[y] == prev) {
                gz = g[z];
                break;
            }
        if (gz < 0) throw std::logic_error("no group element matches the lifted prefix");
        lift.push_back(gz);
    }
    for (size_t i = 0; i + 1 < lift.size(); ++i)
        if (!p.less(lift[i], lift[i + 1])) throw std::logic_error("lift is not a chain");
    for (size_t i = 0; i < lift.size(); ++i)
        if (q.orbit_of[lift[i]] != qchain[i]) throw std::logic_error("lift projects incorrectly");
    return lift;
}

/// Action induced on the barycentric subdivision: permute chains elementwise.
/// `bd` must be barycentric_subdivision(p) and `chains` its chain list in the
/// same order as produced by all_chains(p).
inline std::vector<int> induced_bd_permutation(const Poset& p, const Poset& bd,
                                               const std::vector<int>& g) {
    std::vector<int> out(bd.size(), -1);
    for_each_chain(p, -1, [&](const std::vector<int>& c) {
        std::vector<int> img;
        img.reserve(c.size());
        for (int v : c) img.push_back(g[v]);
        std::sort(img.begin(), img.end(), [&](int a, int b) { return p.less(a, b); });
        std::string from, to;
        for (size_t j = 0; j < c.size(); ++j) {
            if (j) {
                from += '<';
                to += '<';
            }
            from += p.label(c[j]);
            to += p.label(img[j]);
        }
        out[bd.index_of(from)] = bd.index_of(to);
    });
    return out;
}

}  // namespace sdj
