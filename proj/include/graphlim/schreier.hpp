#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "graphlim/cost.hpp"
#include "graphlim/group.hpp"
#include "graphlim/parallel.hpp"
#include "graphlim/prng.hpp"
#include "graphlim/rational.hpp"
#include "graphlim/snf.hpp"
#include "graphlim/unlabeled_graph.hpp"

namespace graphlim {

// Labeled coset graph of an action: one directed edge (v, s, s·v) per vertex
// and generator, loops and multi-edges preserved — the accounting that makes
// the Euler-characteristic rank formula exact.
struct SchreierGraph {
    int n = 1;
    int generators = 0;
    int relator_count = 0;  // of the source presentation
    bool transitive = false;
    std::vector<std::vector<int>> images;  // images[g][v] = s_g · v

    long edge_count() const { return static_cast<long>(n) * generators; }

    // (v, generator, image) triples, sorted by (generator, v).
    std::vector<std::tuple<int, int, int>> edges() const {
        std::vector<std::tuple<int, int, int>> out;
        out.reserve(static_cast<std::size_t>(edge_count()));
        for (int g = 0; g < generators; ++g)
            for (int v = 0; v < n; ++v)
                out.emplace_back(v, g, images[static_cast<std::size_t>(g)][static_cast<std::size_t>(v)]);
        return out;
    }

    // Underlying simple graph: loops dropped, parallel edges merged.
    UnlabeledGraph simple_graph() const {
        std::vector<std::pair<int, int>> edges;
        for (int g = 0; g < generators; ++g)
            for (int v = 0; v < n; ++v) {
                const int w = images[static_cast<std::size_t>(g)][static_cast<std::size_t>(v)];
                if (w != v) edges.emplace_back(std::min(v, w), std::max(v, w));
            }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        return UnlabeledGraph(n, std::move(edges));
    }
};

// Throws with a diagnostic naming the failing relator and vertex when the
// permutations do not satisfy the presentation.
inline SchreierGraph schreier_graph(const PermutationAction& a) {
    if (auto violation = a.first_relator_violation()) {
        throw std::invalid_argument("relator " + std::to_string(violation->first) +
                                    " does not act trivially at vertex " +
                                    std::to_string(violation->second));
    }
    SchreierGraph g;
    g.n = a.degree;
    g.generators = a.presentation.rank();
    g.relator_count = static_cast<int>(a.presentation.relators.size());
    g.transitive = a.transitive();
    g.images = a.images;
    return g;
}

// Nielsen–Schreier rank of the point stabilizer of a transitive free-group
// action: |E| − |V| + 1 with loops and multi-edges counted.
inline long free_subgroup_rank(const SchreierGraph& g) {
    if (g.relator_count > 0)
        throw std::invalid_argument(
            "presentation has relators; use abelianized_rank_bounds instead");
    if (!g.transitive)
        throw std::invalid_argument("Schreier graph is disconnected: subgroup rank undefined");
    return g.edge_count() - g.n + 1;
}

struct RankBounds {
    long lower = 0;  // minimal generators of the abelianization
    long upper = 0;  // raw Schreier generator count
    bool exact() const { return lower == upper; }
};

// Reidemeister–Schreier bounds on the rank of the vertex-0 stabilizer of a
// transitive action of ⟨S | R⟩: the rewriting yields n(|S|−1)+1 Schreier
// generators (upper bound); the Smith normal form of the rewritten-relator
// abelianization gives the minimal generator count of H_1 (lower bound).
inline RankBounds abelianized_rank_bounds(const GroupPresentation& p,
                                          const PermutationAction& a) {
    if (static_cast<int>(a.images.size()) != p.rank())
        throw std::invalid_argument("presentation rank does not match the permutation count");
    PermutationAction action(p, a.degree, a.images);
    if (!action.transitive())
        throw std::invalid_argument("action is not transitive: subgroup rank undefined");
    if (auto violation = action.first_relator_violation())
        throw std::invalid_argument("relator " + std::to_string(violation->first) +
                                    " does not act trivially at vertex " +
                                    std::to_string(violation->second));
    if (p.is_free()) {
        const long rank = free_subgroup_rank(schreier_graph(action));
        return {rank, rank};
    }
    const int n = action.degree;
    const int r = p.rank();

    // Breadth-first spanning tree from vertex 0, generators in order,
    // forward direction before inverse.
    std::vector<int> parent_vertex(static_cast<std::size_t>(n), -1);
    std::vector<int> parent_gen(static_cast<std::size_t>(n), -1);
    std::vector<int> parent_dir(static_cast<std::size_t>(n), 0);
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    seen[0] = 1;
    std::deque<int> queue{0};
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (int g = 0; g < r; ++g)
            for (int dir : {+1, -1}) {
                const int w = dir > 0 ? action.images[static_cast<std::size_t>(g)][static_cast<std::size_t>(v)]
                                      : action.inverse_images[static_cast<std::size_t>(g)][static_cast<std::size_t>(v)];
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    parent_vertex[static_cast<std::size_t>(w)] = v;
                    parent_gen[static_cast<std::size_t>(w)] = g;
                    parent_dir[static_cast<std::size_t>(w)] = dir;
                    queue.push_back(w);
                }
            }
    }

    // A directed edge (v, g): v --s_g--> s_g·v is a tree edge iff it is the
    // parent link of either endpoint.
    auto is_tree_edge = [&](int v, int g) {
        const int w = action.images[static_cast<std::size_t>(g)][static_cast<std::size_t>(v)];
        if (parent_vertex[static_cast<std::size_t>(w)] == v &&
            parent_gen[static_cast<std::size_t>(w)] == g && parent_dir[static_cast<std::size_t>(w)] == +1)
            return true;
        if (parent_vertex[static_cast<std::size_t>(v)] == w &&
            parent_gen[static_cast<std::size_t>(v)] == g && parent_dir[static_cast<std::size_t>(v)] == -1)
            return true;
        return false;
    };

    // Columns: nontrivial Schreier generators, one per non-tree edge, in
    // (vertex, generator) order.
    std::vector<std::vector<int>> column_of(static_cast<std::size_t>(r),
                                            std::vector<int>(static_cast<std::size_t>(n), -1));
    int columns = 0;
    for (int v = 0; v < n; ++v)
        for (int g = 0; g < r; ++g)
            if (!is_tree_edge(v, g)) column_of[static_cast<std::size_t>(g)][static_cast<std::size_t>(v)] = columns++;

    // Rewritten relators, abelianized: for the relator w read right to left
    // starting at each vertex, each traversed non-tree edge contributes ±1
    // to its Schreier generator's exponent sum.
    IntMatrix relations;
    relations.reserve(static_cast<std::size_t>(n) * p.relators.size());
    for (const auto& w : p.relators)
        for (int v = 0; v < n; ++v) {
            std::vector<Int> row(static_cast<std::size_t>(columns), Int(0));
            int u = v;
            for (auto it = w.rbegin(); it != w.rend(); ++it) {
                const int letter = *it;
                const int g = std::abs(letter) - 1;
                if (letter > 0) {
                    const int col = column_of[static_cast<std::size_t>(g)][static_cast<std::size_t>(u)];
                    if (col >= 0) row[static_cast<std::size_t>(col)] += 1;
                    u = action.images[static_cast<std::size_t>(g)][static_cast<std::size_t>(u)];
                } else {
                    const int prev = action.inverse_images[static_cast<std::size_t>(g)][static_cast<std::size_t>(u)];
                    const int col = column_of[static_cast<std::size_t>(g)][static_cast<std::size_t>(prev)];
                    if (col >= 0) row[static_cast<std::size_t>(col)] -= 1;
                    u = prev;
                }
            }
            relations.push_back(std::move(row));
        }

    const AbelianQuotient h1 = abelian_quotient(relations, columns);
    return {static_cast<long>(h1.minimal_generators()), static_cast<long>(columns)};
}

struct RankGradientRow {
    long index = 0;
    long rank_lower = 0, rank_upper = 0;
    bool exact = false;
    Rat gradient_lower, gradient_upper;  // (rank − 1)/index
    Rat cost_lower, cost_upper;          // coset-action cost
};

struct RankGradientTable {
    std::vector<RankGradientRow> rows;
    // Final-row values double as the chain's estimate: no fitting, no
    // extrapolation beyond the last level.
    const RankGradientRow& summary() const {
        if (rows.empty()) throw std::logic_error("empty chain");
        return rows.back();
    }
};

inline RankGradientTable rank_gradient_table(const std::vector<PermutationAction>& chain,
                                             int jobs = 1) {
    RankGradientTable table;
    table.rows.resize(chain.size());
    parallel_for(chain.size(), jobs, [&](std::size_t i) {
        const auto& action = chain[i];
        if (!action.transitive())
            throw std::invalid_argument("chain level " + std::to_string(i) +
                                        " is not transitive");
        RankGradientRow row;
        row.index = action.degree;
        if (action.presentation.is_free()) {
            const long rank = free_subgroup_rank(schreier_graph(action));
            row.rank_lower = row.rank_upper = rank;
        } else {
            const RankBounds bounds = abelianized_rank_bounds(action.presentation, action);
            row.rank_lower = bounds.lower;
            row.rank_upper = bounds.upper;
        }
        row.exact = row.rank_lower == row.rank_upper;
        row.gradient_lower = rat(row.rank_lower - 1, row.index);
        row.gradient_upper = rat(row.rank_upper - 1, row.index);
        row.cost_lower = coset_action_cost(row.index, row.rank_lower);
        row.cost_upper = coset_action_cost(row.index, row.rank_upper);
        table.rows[i] = std::move(row);
    });
    return table;
}

// ---------------------------------------------------------------------------
// Instance generators: seeded random actions and voltage double covers.
// ---------------------------------------------------------------------------

// Free-group action by independently seeded uniform permutations.
inline PermutationAction random_schreier_action(int rank, int degree, std::uint64_t seed) {
    if (rank < 1 || degree < 1) throw std::invalid_argument("rank and degree must be >= 1");
    Rng rng(seed);
    std::vector<std::vector<int>> perms;
    perms.reserve(static_cast<std::size_t>(rank));
    for (int g = 0; g < rank; ++g) perms.push_back(rng.permutation(degree));
    return PermutationAction(GroupPresentation::free_group(rank), degree, perms);
}

// Standard voltage-graph double cover: point (v, b) maps to (s·v, b xor
// ε_s(v)) with seeded voltages; re-drawn until the lift is transitive (the
// base action must itself be transitive). Deterministic given the seed.
inline PermutationAction double_cover(const PermutationAction& base, std::uint64_t seed) {
    if (!base.transitive())
        throw std::invalid_argument("double cover requires a transitive base action");
    Rng rng(seed);
    const int n = base.degree;
    const int r = base.presentation.rank();
    for (int attempt = 0; attempt < 4096; ++attempt) {
        std::vector<std::vector<int>> voltages(static_cast<std::size_t>(r));
        for (int g = 0; g < r; ++g) {
            voltages[static_cast<std::size_t>(g)].resize(static_cast<std::size_t>(n));
            for (int v = 0; v < n; ++v)
                voltages[static_cast<std::size_t>(g)][static_cast<std::size_t>(v)] =
                    static_cast<int>(rng.below(2));
        }
        std::vector<std::vector<int>> perms(static_cast<std::size_t>(r),
                                            std::vector<int>(static_cast<std::size_t>(2 * n)));
        for (int g = 0; g < r; ++g)
            for (int v = 0; v < n; ++v)
                for (int b = 0; b < 2; ++b) {
                    const int image = base.images[static_cast<std::size_t>(g)][static_cast<std::size_t>(v)];
                    const int eps = voltages[static_cast<std::size_t>(g)][static_cast<std::size_t>(v)];
                    perms[static_cast<std::size_t>(g)][static_cast<std::size_t>(v + n * b)] =
                        image + n * (b ^ eps);
                }
        PermutationAction lift(base.presentation, 2 * n, perms);
        if (lift.transitive()) return lift;
    }
    throw std::runtime_error("double cover: no transitive lift found (degenerate base)");
}

// Iterated double covers: degrees n·2^1, ..., n·2^depth, prepended by the
// base. Level k uses seed + k so each lift is independently seeded.
inline std::vector<PermutationAction> double_cover_chain(const PermutationAction& base, int depth,
                                                         std::uint64_t seed) {
    std::vector<PermutationAction> chain{base};
    for (int k = 1; k <= depth; ++k)
        chain.push_back(double_cover(chain.back(), seed + static_cast<std::uint64_t>(k)));
    return chain;
}

}  // namespace graphlim
