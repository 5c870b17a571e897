#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "sdj/chain_complex.hpp"
#include "sdj/diagram.hpp"
#include "sdj/group_action.hpp"
#include "sdj/poset.hpp"

namespace sdj {

using nlohmann::json;

/// {"elements": [...], "covers": [[i, j], ...]} with [i, j] meaning
/// elements[i] < elements[j].  Emission is canonical (label order), so the
/// format round-trips byte-stably.
inline json poset_to_json(const Poset& p) {
    json j;
    j["elements"] = p.labels();
    json covers = json::array();
    for (auto [a, b] : p.covers()) covers.push_back({a, b});
    j["covers"] = std::move(covers);
    return j;
}

inline Poset poset_from_json(const json& j) {
    std::vector<std::string> labels = j.at("elements").get<std::vector<std::string>>();
    std::vector<std::pair<int, int>> covers;
    for (const auto& c : j.at("covers")) covers.emplace_back(c.at(0).get<int>(), c.at(1).get<int>());
    return Poset::from_covers(std::move(labels), covers);
}

/// {"ring": "Z"|"Fp", "p": int?, "betti": {"q": b}, "torsion": {"q": [ints]}}
inline json homology_to_json(const HomologyResult& h) {
    json j;
    j["ring"] = h.ring.is_field() ? "Fp" : "Z";
    if (h.ring.is_field()) j["p"] = h.ring.p;
    json betti = json::object();
    json torsion = json::object();
    for (int k = 0; k < h.levels(); ++k) {
        betti[std::to_string(h.degree(k))] = h.betti[k];
        if (!h.ring.is_field()) {
            json t = json::array();
            for (const auto& d : h.torsion[k]) t.push_back(d.str());
            torsion[std::to_string(h.degree(k))] = std::move(t);
        }
    }
    j["betti"] = std::move(betti);
    if (!h.ring.is_field()) j["torsion"] = std::move(torsion);
    return j;
}

/// {"base": <poset>, "fibers": {"i": <poset>}, "arrows": {"i>j": [map]}}
inline json diagram_to_json(const PosetDiagram& d) {
    json j;
    j["base"] = poset_to_json(d.base);
    json fibers = json::object();
    for (int x = 0; x < d.base.size(); ++x)
        fibers[std::to_string(x)] = poset_to_json(d.fibers[x]);
    j["fibers"] = std::move(fibers);
    json arrows = json::object();
    for (int x = 0; x < d.base.size(); ++x)
        for (int y : d.base.below(x))
            arrows[std::to_string(x) + ">" + std::to_string(y)] = d.arrow(x, y);
    j["arrows"] = std::move(arrows);
    return j;
}

inline PosetDiagram diagram_from_json(const json& j) {
    PosetDiagram d;
    d.base = poset_from_json(j.at("base"));
    d.fibers.resize(d.base.size());
    for (int x = 0; x < d.base.size(); ++x)
        d.fibers[x] = poset_from_json(j.at("fibers").at(std::to_string(x)));
    for (int x = 0; x < d.base.size(); ++x)
        for (int y : d.base.below(x)) {
            auto key = std::to_string(x) + ">" + std::to_string(y);
            d.set_arrow(x, y, j.at("arrows").at(key).get<std::vector<int>>());
        }
    validate_diagram(d);
    return d;
}

/// Group actions serialize as arrays of permutations.
inline json action_to_json(const PosetGroupAction& a) {
    json j;
    j["generators"] = a.elements();
    return j;
}

inline PosetGroupAction action_from_json(const Poset& p, const json& j) {
    std::vector<std::vector<int>> gens;
    for (const auto& g : j.at("generators")) gens.push_back(g.get<std::vector<int>>());
    return PosetGroupAction::from_generators(p, gens);
}

/// Basis labels and boundary matrices of a chain complex, for CLI dumps.
inline json chain_complex_to_json(const GradedChainComplex& c) {
    json j;
    j["ring"] = c.ring.is_field() ? "Fp" : "Z";
    if (c.ring.is_field()) j["p"] = c.ring.p;
    j["lowest_degree"] = c.lowest;
    json levels = json::array();
    for (int k = 0; k < c.levels(); ++k) {
        json lv;
        lv["degree"] = c.degree(k);
        lv["dim"] = c.dims[k];
        if (!c.basis[k].empty()) lv["basis"] = c.basis[k];
        json rows = json::array();
        for (const auto& row : c.boundary[k].rows) {
            json r = json::array();
            for (auto [col, v] : row) r.push_back({col, v});
            rows.push_back(std::move(r));
        }
        lv["boundary"] = std::move(rows);
        levels.push_back(std::move(lv));
    }
    j["levels"] = std::move(levels);
    return j;
}

}  // namespace sdj
