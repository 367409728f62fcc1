#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "graphlim/dsu.hpp"
#include "graphlim/graphing.hpp"
#include "graphlim/rational.hpp"

namespace graphlim {

// Costs are exact rationals (mass per base point); no floating point.
using CostValue = Rat;

// Σ_i |pairs(φ_i)| / n.
inline CostValue graphing_cost(const Graphing& phi) {
    long pairs = 0;
    for (const auto& b : phi.bisections()) pairs += static_cast<long>(b.size());
    return rat(pairs, phi.base().n);
}

// Exact cost of the equivalence relation generated by the graphing:
// (n − #orbits)/n, attained by any spanning forest of the orbits.
inline CostValue principal_cost(const Graphing& phi) {
    return rat(phi.base().n - orbit_count(phi), phi.base().n);
}

// 1 + (subgroup_rank − 1)/index: cost of the coset action of a free group
// restricted to a finite-index subgroup of the given rank.
inline CostValue coset_action_cost(long index, long subgroup_rank) {
    if (index < 1) throw std::invalid_argument("coset_action_cost: index must be >= 1");
    if (subgroup_rank < 0) throw std::invalid_argument("coset_action_cost: rank must be >= 0");
    return Rat(1) + rat(subgroup_rank - 1, index);
}

namespace detail {

inline std::vector<int> partition_labels(const Graphing& phi) {
    Dsu dsu(phi.base().n);
    for (const auto& b : phi.bisections())
        for (const auto& [s, t] : b.pairs()) dsu.unite(s, t);
    std::vector<int> labels(static_cast<std::size_t>(phi.base().n));
    for (int x = 0; x < phi.base().n; ++x) labels[static_cast<std::size_t>(x)] = dsu.find(x);
    return labels;
}

}  // namespace detail

// Exhaustive oracle for the cost infimum on tiny instances: the exact
// minimum of graphing_cost over sub-collections of unit pairs of the
// generated relation that regenerate it. Searching unordered pairs loses
// nothing (a pair and its reverse generate the same relation, and a minimal
// sub-collection never needs both). If pair_budget >= 0 the search stops at
// that many pairs and refuses when no generating sub-collection fits.
inline CostValue min_generating_bruteforce(const Graphing& phi, int pair_budget = -1,
                                           int n_cap = 8) {
    const int n = phi.base().n;
    if (n > n_cap)
        throw std::invalid_argument("min_generating_bruteforce: base space too large (" +
                                    std::to_string(n) + " > cap " + std::to_string(n_cap) + ")");
    const std::vector<int> target = detail::partition_labels(phi);

    std::vector<std::pair<int, int>> candidates;  // unordered intra-orbit pairs u < v
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (target[static_cast<std::size_t>(u)] == target[static_cast<std::size_t>(v)])
                candidates.emplace_back(u, v);

    auto generates = [&](const std::vector<int>& chosen) {
        Dsu dsu(n);
        for (int idx : chosen) {
            const auto& [u, v] = candidates[static_cast<std::size_t>(idx)];
            dsu.unite(u, v);
        }
        for (int x = 0; x < n; ++x)
            if (dsu.find(x) != target[static_cast<std::size_t>(x)]) return false;
        return true;
    };

    const int m = static_cast<int>(candidates.size());
    const int max_size = pair_budget >= 0 ? std::min(pair_budget, m) : m;
    std::vector<int> chosen;
    // Ascending subset size: the first generating sub-collection is minimal.
    for (int k = 0; k <= max_size; ++k) {
        chosen.assign(static_cast<std::size_t>(k), 0);
        for (int i = 0; i < k; ++i) chosen[static_cast<std::size_t>(i)] = i;
        while (true) {
            if ((k == 0 || chosen.back() < m) && generates(chosen)) return rat(k, n);
            if (k == 0) break;
            int pos = k - 1;
            while (pos >= 0 && chosen[static_cast<std::size_t>(pos)] == m - k + pos) --pos;
            if (pos < 0) break;
            ++chosen[static_cast<std::size_t>(pos)];
            for (int i = pos + 1; i < k; ++i)
                chosen[static_cast<std::size_t>(i)] = chosen[static_cast<std::size_t>(i - 1)] + 1;
        }
    }
    throw std::runtime_error("min_generating_bruteforce: no generating sub-collection within budget");
}

}  // namespace graphlim
