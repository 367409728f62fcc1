#pragma once

#include <unordered_set>
#include <utility>
#include <vector>

#include "graphlim/partial_bijection.hpp"

namespace graphlim {

// Split of a bisection into its isotropic part (source = target pairs) and
// free parts A_1, A_2, ... with s(A_i) ∩ t(A_i) = ∅.
struct Decomposition {
    std::vector<std::pair<int, int>> isotropic;
    std::vector<std::vector<std::pair<int, int>>> free_parts;
};

// Greedy construction: repeatedly sweep the remaining free pairs in ascending
// source order, moving every pair that does not conflict with the part built
// so far. Each accepted pair can block at most two others (its successor and
// predecessor in the partial map), so every round captures at least 1/3 of
// the remaining free mass; the k-part prefix therefore covers at least
// (1 - (2/3)^k) of the free part.
inline Decomposition fix_free_decompose(const PartialBijection& f) {
    Decomposition out;
    std::vector<std::pair<int, int>> remaining;
    for (const auto& p : f.pairs()) {
        if (p.first == p.second)
            out.isotropic.push_back(p);
        else
            remaining.push_back(p);  // stays sorted by source
    }
    while (!remaining.empty()) {
        std::vector<std::pair<int, int>> part;
        std::unordered_set<int> part_sources, part_targets;
        std::vector<std::pair<int, int>> rest;
        for (const auto& [s, t] : remaining) {
            if (part_targets.count(s) == 0 && part_sources.count(t) == 0) {
                part.emplace_back(s, t);
                part_sources.insert(s);
                part_targets.insert(t);
            } else {
                rest.emplace_back(s, t);
            }
        }
        out.free_parts.push_back(std::move(part));
        remaining = std::move(rest);
    }
    return out;
}

}  // namespace graphlim
