#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "sdj/poset.hpp"

namespace sdj {

/// Abstract simplicial complex on an indexed vertex set.  Faces are stored per
/// dimension as sorted vertex-index vectors; faces[d] lists the d-faces.
struct SimplicialComplex {
    std::vector<std::string> vertex_labels;
    std::vector<std::vector<std::vector<int>>> faces;

    int vertex_count() const { return static_cast<int>(vertex_labels.size()); }
    int dimension() const { return static_cast<int>(faces.size()) - 1; }

    long long face_count() const {
        long long n = 0;
        for (const auto& level : faces) n += static_cast<long long>(level.size());
        return n;
    }

    /// Every subface of every listed face must itself be listed.
    bool closed_under_subsets() const {
        for (size_t d = 1; d < faces.size(); ++d) {
            for (const auto& f : faces[d]) {
                std::vector<int> sub(f.size() - 1);
                for (size_t i = 0; i < f.size(); ++i) {
                    sub.clear();
                    for (size_t j = 0; j < f.size(); ++j)
                        if (j != i) sub.push_back(f[j]);
                    if (!std::binary_search(faces[d - 1].begin(), faces[d - 1].end(), sub))
                        return false;
                }
            }
        }
        return true;
    }
};

/// Order complex of a poset: faces are the chains, vertices the elements.
/// `max_dim` >= 0 truncates to faces of dimension <= max_dim (chains of at
/// most max_dim+1 elements); pass -1 for the full complex.
inline SimplicialComplex order_complex(const Poset& p, int max_dim = -1) {
    SimplicialComplex k;
    k.vertex_labels = p.labels();
    int cap = max_dim < 0 ? -1 : max_dim + 1;
    for_each_chain(p, cap, [&](const std::vector<int>& chain) {
        size_t d = chain.size() - 1;
        if (k.faces.size() <= d) k.faces.resize(d + 1);
        std::vector<int> face = chain;
        std::sort(face.begin(), face.end());
        k.faces[d].push_back(std::move(face));
    });
    for (auto& level : k.faces) std::sort(level.begin(), level.end());
    return k;
}

}  // namespace sdj
