#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sdj/deleted.hpp"
#include "sdj/poset.hpp"

namespace sdj {

/// An integer labeling of the Hasse edges of a bounded poset (unique bottom
/// and top required).
struct EdgeLabeling {
    Poset poset;
    std::map<std::pair<int, int>, int> labels;  // (lower, upper) cover -> label

    int label(int lo, int hi) const {
        auto it = labels.find({lo, hi});
        if (it == labels.end()) throw std::invalid_argument("unlabelled Hasse edge");
        return it->second;
    }
};

/// The labeling of B_{n,k,t} with a top adjoined: merging element a into the
/// first ordered block labels -a, edges into the top label 0, every other
/// merge labels +a.  Defined for t >= 1.
inline EdgeLabeling el_label_bnkt(int n, int k, int t) {
    if (t < 1) throw std::invalid_argument("el_label_bnkt: labeling needs t >= 1");
    BnktPoset bp = bnkt_struct(n, k, t);
    const int m = bp.poset.size();
    // adjoin a top above the maximal elements
    std::vector<std::string> labels = bp.poset.labels();
    labels.push_back("TOP");
    BitMatrix rel(m + 1);
    for (int a = 0; a < m; ++a) {
        rel.set(a, m);
        for (int b = 0; b < m; ++b)
            if (bp.poset.leq(a, b)) rel.set(a, b);
    }
    rel.set(m, m);
    Poset bounded = Poset::from_relation(labels, rel);
    std::vector<int> old_of(m + 1, -1);
    for (int i = 0; i < m; ++i) old_of[bounded.index_of(bp.poset.label(i))] = i;
    const int top = bounded.index_of("TOP");

    EdgeLabeling out;
    out.poset = bounded;
    for (auto [lo, hi] : bounded.covers()) {
        if (hi == top) {
            out.labels[{lo, hi}] = 0;
            continue;
        }
        const BlockFamily& x = bp.families[old_of[lo]];
        const BlockFamily& y = bp.families[old_of[hi]];
        // the unique added element and whether it joined the first ordered block
        uint32_t xall = 0, yall = 0;
        for (uint32_t b : x.ordered) xall |= b;
        for (uint32_t b : x.unordered) xall |= b;
        for (uint32_t b : y.ordered) yall |= b;
        for (uint32_t b : y.unordered) yall |= b;
        uint32_t diff = yall & ~xall;
        if (__builtin_popcount(diff) != 1)
            throw std::logic_error("cover does not add exactly one element");
        int a = __builtin_ctz(diff) + 1;
        bool first_block = (y.ordered[0] & diff) != 0;
        out.labels[{lo, hi}] = first_block ? -a : a;
    }
    return out;
}

/// EL-condition check: every closed interval has exactly one weakly
/// increasing maximal chain, and it is lexicographically least.
struct ElReport {
    bool ok = true;
    long long intervals_checked = 0;
    std::vector<std::string> violations;
};

inline ElReport verify_el(const EdgeLabeling& el) {
    const Poset& p = el.poset;
    ElReport rep;
    for (int x = 0; x < p.size(); ++x) {
        for (int y : p.above(x)) {
            ++rep.intervals_checked;
            // maximal chains of [x, y] with their label words
            std::vector<std::vector<int>> words;
            std::vector<int> cur;
            std::function<void(int)> walk = [&](int v) {
                if (v == y) {
                    words.push_back(cur);
                    return;
                }
                for (int w : p.upper_covers(v)) {
                    if (!p.leq(w, y)) continue;
                    cur.push_back(el.label(v, w));
                    walk(w);
                    cur.pop_back();
                }
            };
            walk(x);
            long long rising = 0;
            size_t rising_idx = 0;
            for (size_t i = 0; i < words.size(); ++i) {
                bool inc = true;
                for (size_t j = 0; j + 1 < words[i].size(); ++j)
                    if (words[i][j] > words[i][j + 1]) inc = false;
                if (inc) {
                    ++rising;
                    rising_idx = i;
                }
            }
            bool good = rising == 1;
            if (good) {
                for (size_t i = 0; i < words.size(); ++i)
                    if (i != rising_idx && words[i] < words[rising_idx]) good = false;
            }
            if (!good) {
                rep.ok = false;
                if (rep.violations.size() < 20)
                    rep.violations.push_back("[" + p.label(x) + ", " + p.label(y) +
                                             "]: " + std::to_string(rising) +
                                             " rising chains");
            }
        }
    }
    return rep;
}

/// Counts the maximal bottom-to-top chains with strictly decreasing labels,
/// grouped by chain length (number of edges).
inline std::map<int, long long> falling_chains(const EdgeLabeling& el) {
    const Poset& p = el.poset;
    auto bot = p.bottom();
    auto top = p.top();
    if (!bot || !top) throw std::invalid_argument("falling_chains needs a bounded poset");
    std::map<int, long long> out;
    std::vector<int> word;
    std::function<void(int)> walk = [&](int v) {
        if (v == *top) {
            ++out[static_cast<int>(word.size())];
            return;
        }
        for (int w : p.upper_covers(v)) {
            int l = el.label(v, w);
            if (!word.empty() && word.back() <= l) continue;
            word.push_back(l);
            walk(w);
            word.pop_back();
        }
    };
    walk(*bot);
    return out;
}

}  // namespace sdj
