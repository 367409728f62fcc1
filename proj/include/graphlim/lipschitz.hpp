#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graphlim/cost.hpp"
#include "graphlim/dsu.hpp"
#include "graphlim/graphing.hpp"
#include "graphlim/parallel.hpp"
#include "graphlim/prng.hpp"
#include "graphlim/rational.hpp"
#include "graphlim/unlabeled_graph.hpp"

namespace graphlim {

// ---------------------------------------------------------------------------
// L-Lipschitz containment for labeled graphings, with realizing words.
// ---------------------------------------------------------------------------

// Words are signed 1-based generator indices applied left to right: +g means
// bisection g-1, -g its inverse. Under the indexed convention a word is
// admissible at level L when max(length, largest index used) <= L — that
// maximum is the word's indexed length.
struct LipWitness {
    struct Entry {
        int bisection = -1;  // index into the inner graphing
        int source = -1, target = -1;  // -1 in whole-bisection (strict) mode
        std::vector<int> word;
    };
    std::vector<Entry> entries;
};

struct EmbedResult {
    bool ok = false;
    LipWitness witness;  // populated when ok
    // First violated pair (bisection order, then pair order) when !ok.
    int fail_bisection = -1, fail_source = -1, fail_target = -1;
};

// Apply a witness word to a point; -1 when some step leaves its domain.
inline int apply_word(const Graphing& phi, const std::vector<int>& word, int x) {
    const auto steps = detail::step_table(phi);
    for (int g : word) {
        if (g == 0 || std::abs(g) > phi.generator_count()) return -1;
        const int step = g > 0 ? 2 * (g - 1) : 2 * (-g - 1) + 1;
        if (x < 0) return -1;
        x = steps[static_cast<std::size_t>(step)][static_cast<std::size_t>(x)];
    }
    return x;
}

namespace detail {

struct WordBfs {
    std::vector<int> dist, prev, via;  // via = step index taken into the vertex
};

inline WordBfs word_bfs(const std::vector<std::vector<int>>& steps, int n, int x, int gen_limit,
                        int depth_limit) {
    WordBfs out{std::vector<int>(static_cast<std::size_t>(n), -1),
                std::vector<int>(static_cast<std::size_t>(n), -1),
                std::vector<int>(static_cast<std::size_t>(n), -1)};
    out.dist[static_cast<std::size_t>(x)] = 0;
    std::deque<int> queue{x};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        if (out.dist[static_cast<std::size_t>(v)] >= depth_limit) continue;
        for (int i = 0; i < 2 * gen_limit; ++i) {
            int w = steps[static_cast<std::size_t>(i)][static_cast<std::size_t>(v)];
            if (w >= 0 && out.dist[static_cast<std::size_t>(w)] < 0) {
                out.dist[static_cast<std::size_t>(w)] = out.dist[static_cast<std::size_t>(v)] + 1;
                out.prev[static_cast<std::size_t>(w)] = v;
                out.via[static_cast<std::size_t>(w)] = i;
                queue.push_back(w);
            }
        }
    }
    return out;
}

inline std::vector<int> backtrack_word(const WordBfs& bfs, int target) {
    std::vector<int> word;
    int v = target;
    while (bfs.prev[static_cast<std::size_t>(v)] >= 0) {
        const int step = bfs.via[static_cast<std::size_t>(v)];
        word.push_back(step % 2 == 0 ? step / 2 + 1 : -(step / 2 + 1));
        v = bfs.prev[static_cast<std::size_t>(v)];
    }
    std::reverse(word.begin(), word.end());
    return word;
}

}  // namespace detail

// True iff every pair of every bisection of `inner` is realized by some
// word of length <= L over the generators of `outer` (each pair may use its
// own word). L = 0 admits only the empty word, so inner must be a
// restriction of the identity.
inline EmbedResult embeds(const Graphing& inner, const Graphing& outer, int L,
                          LengthConvention convention = LengthConvention::any_generator) {
    if (!(inner.base() == outer.base()))
        throw std::invalid_argument("embeds: base space mismatch");
    if (L < 0) throw std::invalid_argument("embeds: L must be >= 0");
    const int n = outer.base().n;
    const int m = outer.generator_count();
    const int gen_limit = convention == LengthConvention::indexed ? std::min(L, m) : m;
    const auto steps = detail::step_table(outer);

    EmbedResult out;
    std::map<int, detail::WordBfs> cache;
    for (int bi = 0; bi < inner.generator_count(); ++bi) {
        for (const auto& [s, t] : inner.bisections()[static_cast<std::size_t>(bi)].pairs()) {
            auto it = cache.find(s);
            if (it == cache.end())
                it = cache.emplace(s, detail::word_bfs(steps, n, s, gen_limit, L)).first;
            const int d = it->second.dist[static_cast<std::size_t>(t)];
            if (d < 0 || d > L) {
                out.ok = false;
                out.fail_bisection = bi;
                out.fail_source = s;
                out.fail_target = t;
                out.witness.entries.clear();
                return out;
            }
            out.witness.entries.push_back({bi, s, t, detail::backtrack_word(it->second, t)});
        }
    }
    out.ok = true;
    return out;
}

// Strict variant: one word must realize an entire bisection at once (every
// pair of it). Stronger than per-pair realization. Enumerates words
// breadth-first in signed-index order; refuses when the word space exceeds
// the budget.
inline EmbedResult embeds_strict(const Graphing& inner, const Graphing& outer, int L,
                                 LengthConvention convention = LengthConvention::any_generator,
                                 std::uint64_t word_budget = 2'000'000) {
    if (!(inner.base() == outer.base()))
        throw std::invalid_argument("embeds: base space mismatch");
    if (L < 0) throw std::invalid_argument("embeds: L must be >= 0");
    const int m = outer.generator_count();
    const int gen_limit = convention == LengthConvention::indexed ? std::min(L, m) : m;
    std::uint64_t total = 1, layer = 1;
    for (int k = 0; k < L; ++k) {
        layer *= static_cast<std::uint64_t>(2 * gen_limit);
        total += layer;
        if (total > word_budget)
            throw std::invalid_argument("embeds_strict: word space exceeds budget");
    }
    const auto steps = detail::step_table(outer);

    EmbedResult out;
    for (int bi = 0; bi < inner.generator_count(); ++bi) {
        const auto& pairs = inner.bisections()[static_cast<std::size_t>(bi)].pairs();
        std::optional<std::vector<int>> found;
        std::vector<std::vector<int>> frontier{{}};  // words as step-index lists
        for (int len = 0; len <= L && !found; ++len) {
            for (const auto& word : frontier) {
                bool all = true;
                for (const auto& [s, t] : pairs) {
                    int x = s;
                    for (int step : word) {
                        x = steps[static_cast<std::size_t>(step)][static_cast<std::size_t>(x)];
                        if (x < 0) break;
                    }
                    if (x != t) {
                        all = false;
                        break;
                    }
                }
                if (all) {
                    std::vector<int> signed_word;
                    for (int step : word)
                        signed_word.push_back(step % 2 == 0 ? step / 2 + 1 : -(step / 2 + 1));
                    found = std::move(signed_word);
                    break;
                }
            }
            if (found || len == L) break;
            std::vector<std::vector<int>> next;
            next.reserve(frontier.size() * static_cast<std::size_t>(2 * gen_limit));
            for (const auto& word : frontier)
                for (int i = 0; i < 2 * gen_limit; ++i) {
                    auto w = word;
                    w.push_back(i);
                    next.push_back(std::move(w));
                }
            frontier = std::move(next);
        }
        if (!found) {
            out.ok = false;
            out.fail_bisection = bi;
            out.witness.entries.clear();
            return out;
        }
        out.witness.entries.push_back({bi, -1, -1, *found});
    }
    out.ok = true;
    return out;
}

// ---------------------------------------------------------------------------
// Unlabeled-graph specialization: inner embeds in outer at scale L iff every
// inner edge joins vertices at outer-distance <= L.
// ---------------------------------------------------------------------------

struct GraphEmbedResult {
    bool ok = false;
    std::pair<int, int> failing_edge{-1, -1};
    int failing_distance = -1;  // -1 when disconnected
};

namespace detail {

// BFS truncated at depth `limit`; -1 beyond. `dist` is scratch of size n
// primed to -1; touched entries are reset before returning a copy-free
// visited list. Returns the list of visited vertices.
inline std::vector<int> truncated_bfs(const std::vector<std::vector<int>>& adj, int src, int limit,
                                      std::vector<int>& dist) {
    std::vector<int> visited{src};
    dist[static_cast<std::size_t>(src)] = 0;
    std::size_t head = 0;
    while (head < visited.size()) {
        int v = visited[head++];
        if (dist[static_cast<std::size_t>(v)] >= limit) continue;
        for (int w : adj[static_cast<std::size_t>(v)]) {
            if (dist[static_cast<std::size_t>(w)] < 0) {
                dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
                visited.push_back(w);
            }
        }
    }
    return visited;
}

inline void reset_scratch(std::vector<int>& dist, const std::vector<int>& visited) {
    for (int v : visited) dist[static_cast<std::size_t>(v)] = -1;
}

}  // namespace detail

inline GraphEmbedResult embeds(const UnlabeledGraph& inner, const UnlabeledGraph& outer, int L) {
    if (inner.vertex_count() != outer.vertex_count())
        throw std::invalid_argument("embeds: vertex count mismatch");
    if (L < 0) throw std::invalid_argument("embeds: L must be >= 0");
    GraphEmbedResult out;
    const auto adj = outer.adjacency();
    std::vector<int> dist(static_cast<std::size_t>(outer.vertex_count()), -1);
    int last_src = -1;
    std::vector<int> visited;
    for (const auto& [u, v] : inner.edges()) {
        if (u != last_src) {
            if (last_src >= 0) detail::reset_scratch(dist, visited);
            visited = detail::truncated_bfs(adj, u, L, dist);
            last_src = u;
        }
        const int d = dist[static_cast<std::size_t>(v)];
        if (d < 0 || d > L) {
            detail::reset_scratch(dist, visited);
            out.ok = false;
            out.failing_edge = {u, v};
            out.failing_distance = d;
            return out;
        }
    }
    if (last_src >= 0) detail::reset_scratch(dist, visited);
    out.ok = true;
    return out;
}

// ---------------------------------------------------------------------------
// cost_L minimization: smallest |E'|/|V| with mutual L-embedding between
// (V, E') and G. Candidate edges are exactly the pairs at G-distance in
// [1, L]; the other direction is the constraint that every G-edge joins
// vertices at E'-distance <= L.
// ---------------------------------------------------------------------------

struct CandidateEdge {
    int u, v, dist;
    bool operator==(const CandidateEdge&) const = default;
};

// Sorted by (G-distance, endpoints) — also the branch order of the exact
// solver.
inline std::vector<CandidateEdge> lipschitz_candidates(const UnlabeledGraph& g, int L) {
    std::vector<CandidateEdge> out;
    const auto adj = g.adjacency();
    std::vector<int> dist(static_cast<std::size_t>(g.vertex_count()), -1);
    for (int u = 0; u < g.vertex_count(); ++u) {
        auto visited = detail::truncated_bfs(adj, u, L, dist);
        for (int v : visited)
            if (v > u && dist[static_cast<std::size_t>(v)] >= 1)
                out.push_back({u, v, dist[static_cast<std::size_t>(v)]});
        detail::reset_scratch(dist, visited);
    }
    std::sort(out.begin(), out.end(),
              [](const CandidateEdge& a, const CandidateEdge& b) {
                  return std::tie(a.dist, a.u, a.v) < std::tie(b.dist, b.u, b.v);
              });
    return out;
}

namespace detail {

// Feasibility of an edge set against G at scale L: every G-edge within
// distance L in the edge set. Adjacency-list version for large instances.
inline bool edge_set_feasible(const std::vector<std::vector<int>>& adj,
                              const std::vector<std::pair<int, int>>& g_edges, int L,
                              std::vector<int>& dist) {
    int last_src = -1;
    std::vector<int> visited;
    bool ok = true;
    for (const auto& [u, v] : g_edges) {
        if (u != last_src) {
            if (last_src >= 0) reset_scratch(dist, visited);
            visited = truncated_bfs(adj, u, L, dist);
            last_src = u;
        }
        const int d = dist[static_cast<std::size_t>(v)];
        if (d < 0 || d > L) {
            ok = false;
            break;
        }
    }
    if (last_src >= 0) reset_scratch(dist, visited);
    return ok;
}

// Bitmask feasibility for n <= 32 (used by the exact solver and the subset
// oracle): adjacency as one mask per vertex.
inline bool mask_feasible(const std::vector<std::uint32_t>& adj,
                          const std::vector<std::pair<int, int>>& g_edges, int L) {
    int last_src = -1;
    std::uint32_t reach = 0;
    for (const auto& [u, v] : g_edges) {
        if (u != last_src) {
            reach = 1u << u;
            for (int step = 0; step < L; ++step) {
                std::uint32_t next = reach;
                std::uint32_t frontier = reach;
                while (frontier) {
                    const int x = std::countr_zero(frontier);
                    frontier &= frontier - 1;
                    next |= adj[static_cast<std::size_t>(x)];
                }
                if (next == reach) break;
                reach = next;
            }
            last_src = u;
        }
        if (!(reach & (1u << v))) return false;
    }
    return true;
}

}  // namespace detail

struct LipCostResult {
    Rat cost;
    std::vector<std::pair<int, int>> edges;  // sorted u < v
    bool exact = false;
};

// ---------------------------------------------------------------------------
// Heuristic: greedy deletion from the candidate graph (or a warm-start set),
// then bounded improvement moves (add one edge, try to delete two). Always
// returns a certified-feasible edge set; never claims optimality.
// ---------------------------------------------------------------------------

namespace detail {

struct EdgeSetState {
    int n;
    std::set<std::pair<int, int>> edges;
    std::vector<std::vector<int>> adj;
    std::vector<int> scratch;

    EdgeSetState(int n_, const std::vector<std::pair<int, int>>& start)
        : n(n_), adj(static_cast<std::size_t>(n_)), scratch(static_cast<std::size_t>(n_), -1) {
        for (auto e : start) add(e);
    }
    void add(std::pair<int, int> e) {
        if (!edges.insert(e).second) return;
        adj[static_cast<std::size_t>(e.first)].push_back(e.second);
        adj[static_cast<std::size_t>(e.second)].push_back(e.first);
    }
    void remove(std::pair<int, int> e) {
        if (edges.erase(e) == 0) return;
        std::erase(adj[static_cast<std::size_t>(e.first)], e.second);
        std::erase(adj[static_cast<std::size_t>(e.second)], e.first);
    }
    std::vector<int> ball(int src, int radius) {
        auto visited = truncated_bfs(adj, src, radius, scratch);
        reset_scratch(scratch, visited);
        return visited;
    }
};

// G-edges with an endpoint near the touched edge are the only constraints a
// deletion can break (any broken shortest path passed through the edge).
inline bool local_constraints_ok(EdgeSetState& state,
                                 const std::vector<std::vector<int>>& g_adj,
                                 const std::vector<int>& affected, int L) {
    std::vector<char> in_affected(static_cast<std::size_t>(state.n), 0);
    for (int v : affected) in_affected[static_cast<std::size_t>(v)] = 1;
    for (int u : affected) {
        auto visited = truncated_bfs(state.adj, u, L, state.scratch);
        bool ok = true;
        for (int w : g_adj[static_cast<std::size_t>(u)]) {
            const int d = state.scratch[static_cast<std::size_t>(w)];
            if (d < 0 || d > L) {
                ok = false;
                break;
            }
        }
        reset_scratch(state.scratch, visited);
        if (!ok) return false;
    }
    return true;
}

// Attempt to delete one edge, checking only the constraints its removal can
// affect. Returns true when the deletion was kept.
inline bool try_delete(EdgeSetState& state, const std::vector<std::vector<int>>& g_adj,
                       std::pair<int, int> e, int L) {
    auto ball_u = state.ball(e.first, L);
    auto ball_v = state.ball(e.second, L);
    std::vector<int> affected = std::move(ball_u);
    affected.insert(affected.end(), ball_v.begin(), ball_v.end());
    std::sort(affected.begin(), affected.end());
    affected.erase(std::unique(affected.begin(), affected.end()), affected.end());
    state.remove(e);
    if (local_constraints_ok(state, g_adj, affected, L)) return true;
    state.add(e);
    return false;
}

inline std::vector<std::pair<int, int>> greedy_reduce(const UnlabeledGraph& g, int L,
                                                      std::vector<std::pair<int, int>> start,
                                                      Rng& rng) {
    EdgeSetState state(g.vertex_count(), start);
    const auto g_adj = g.adjacency();
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::pair<int, int>> order(state.edges.begin(), state.edges.end());
        auto perm = rng.permutation(static_cast<int>(order.size()));
        for (int idx : perm) {
            if (try_delete(state, g_adj, order[static_cast<std::size_t>(idx)], L)) changed = true;
        }
    }
    return {state.edges.begin(), state.edges.end()};
}

}  // namespace detail

inline LipCostResult lip_cost_heuristic(const UnlabeledGraph& g, int L, std::uint64_t seed = 0,
                                        const std::vector<std::pair<int, int>>* warm_start = nullptr,
                                        int improve_rounds = 2) {
    const int n = g.vertex_count();
    if (L < 0) throw std::invalid_argument("lip_cost_heuristic: L must be >= 0");
    if (L == 0) {
        if (g.edge_count() > 0)
            throw std::invalid_argument("no feasible edge set at L = 0 for a graph with edges");
        return {Rat(0), {}, true};
    }
    auto cands = lipschitz_candidates(g, L);
    std::vector<std::pair<int, int>> cand_edges;
    cand_edges.reserve(cands.size());
    for (const auto& c : cands) cand_edges.emplace_back(c.u, c.v);

    Rng rng(seed);
    auto best = detail::greedy_reduce(g, L, cand_edges, rng);
    if (warm_start) {
        auto from_warm = detail::greedy_reduce(g, L, *warm_start, rng);
        if (from_warm.size() < best.size()) best = std::move(from_warm);
    }

    // Improvement moves: add one candidate edge, then look for two deletions
    // near it; keep only strict improvements.
    const auto g_adj = g.adjacency();
    for (int round = 0; round < improve_rounds; ++round) {
        detail::EdgeSetState state(n, best);
        std::vector<std::pair<int, int>> outside;
        for (const auto& e : cand_edges)
            if (!state.edges.count(e)) outside.push_back(e);
        if (outside.empty()) break;
        auto perm = rng.permutation(static_cast<int>(outside.size()));
        bool improved = false;
        int attempts = 0;
        for (int idx : perm) {
            if (attempts >= 64) break;
            ++attempts;
            const auto e = outside[static_cast<std::size_t>(idx)];
            if (state.edges.count(e)) continue;  // added by an earlier kept move
            state.add(e);
            auto zone_u = state.ball(e.first, L);
            auto zone_v = state.ball(e.second, L);
            std::vector<std::pair<int, int>> nearby;
            std::vector<char> in_zone(static_cast<std::size_t>(n), 0);
            for (int v : zone_u) in_zone[static_cast<std::size_t>(v)] = 1;
            for (int v : zone_v) in_zone[static_cast<std::size_t>(v)] = 1;
            for (const auto& f : state.edges)
                if (f != e &&
                    (in_zone[static_cast<std::size_t>(f.first)] ||
                     in_zone[static_cast<std::size_t>(f.second)]))
                    nearby.push_back(f);
            auto inner_perm = rng.permutation(static_cast<int>(nearby.size()));
            std::vector<std::pair<int, int>> deleted;
            for (int j : inner_perm) {
                if (deleted.size() >= 2) break;
                const auto f = nearby[static_cast<std::size_t>(j)];
                if (!state.edges.count(f)) continue;
                if (detail::try_delete(state, g_adj, f, L)) deleted.push_back(f);
            }
            if (deleted.size() >= 2) {
                improved = true;
            } else {
                for (const auto& f : deleted) state.add(f);
                state.remove(e);
            }
        }
        if (improved)
            best.assign(state.edges.begin(), state.edges.end());
        else
            break;
    }

    // Certify feasibility of the returned set (internal invariant).
    {
        detail::EdgeSetState state(n, best);
        std::vector<int> dist(static_cast<std::size_t>(n), -1);
        if (!detail::edge_set_feasible(state.adj, g.edges(), L, dist))
            throw std::logic_error("lip_cost_heuristic produced an infeasible edge set");
    }
    std::sort(best.begin(), best.end());
    return {rat(static_cast<long>(best.size()), n), std::move(best), false};
}

// ---------------------------------------------------------------------------
// Exact solver: branch-and-bound over the candidate edges (decided in sorted
// order, exclude branch first). Admissible pruning only: a spanning-forest /
// connectivity lower bound, and monotone infeasibility of chosen ∪ remaining.
// ---------------------------------------------------------------------------

inline LipCostResult lip_cost_exact(const UnlabeledGraph& g, int L, int vertex_cap = 10,
                                    int candidate_cap = 24) {
    const int n = g.vertex_count();
    if (L < 0) throw std::invalid_argument("lip_cost_exact: L must be >= 0");
    if (L == 0) {
        if (g.edge_count() > 0)
            throw std::invalid_argument("no feasible edge set at L = 0 for a graph with edges");
        return {Rat(0), {}, true};
    }
    auto cands = lipschitz_candidates(g, L);
    const int m = static_cast<int>(cands.size());
    if (n > vertex_cap && m > candidate_cap)
        throw std::invalid_argument(
            "lip_cost_exact: instance exceeds the exact caps (" + std::to_string(n) +
            " vertices, " + std::to_string(m) +
            " candidate edges); use lip_cost_heuristic");
    if (n > 32)
        throw std::invalid_argument("lip_cost_exact: more than 32 vertices; use lip_cost_heuristic");

    const int g_components = g.component_count();

    // Incumbent from the deterministic heuristic.
    auto warm = lip_cost_heuristic(g, L, 0);
    std::vector<std::pair<int, int>> best_set = warm.edges;
    int best_size = static_cast<int>(best_set.size());

    std::vector<char> chosen(static_cast<std::size_t>(m), 0);
    std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);  // chosen ∪ remaining
    for (const auto& c : cands) {
        adj[static_cast<std::size_t>(c.u)] |= 1u << c.v;
        adj[static_cast<std::size_t>(c.v)] |= 1u << c.u;
    }
    int chosen_count = 0;

    auto connectivity_bound = [&]() {
        Dsu dsu(n);
        for (int i = 0; i < m; ++i)
            if (chosen[static_cast<std::size_t>(i)])
                dsu.unite(cands[static_cast<std::size_t>(i)].u, cands[static_cast<std::size_t>(i)].v);
        return chosen_count + (dsu.component_count() - g_components);
    };

    auto dfs = [&](auto&& self, int idx) -> void {
        if (connectivity_bound() >= best_size) return;
        if (!detail::mask_feasible(adj, g.edges(), L)) return;
        if (idx == m) {
            // chosen ∪ remaining == chosen here, so chosen is feasible.
            best_size = chosen_count;
            best_set.clear();
            for (int i = 0; i < m; ++i)
                if (chosen[static_cast<std::size_t>(i)])
                    best_set.emplace_back(cands[static_cast<std::size_t>(i)].u,
                                          cands[static_cast<std::size_t>(i)].v);
            return;
        }
        const auto& c = cands[static_cast<std::size_t>(idx)];
        // Exclude branch: drop the candidate from the union.
        adj[static_cast<std::size_t>(c.u)] &= ~(1u << c.v);
        adj[static_cast<std::size_t>(c.v)] &= ~(1u << c.u);
        self(self, idx + 1);
        adj[static_cast<std::size_t>(c.u)] |= 1u << c.v;
        adj[static_cast<std::size_t>(c.v)] |= 1u << c.u;
        // Include branch.
        chosen[static_cast<std::size_t>(idx)] = 1;
        ++chosen_count;
        self(self, idx + 1);
        --chosen_count;
        chosen[static_cast<std::size_t>(idx)] = 0;
    };
    dfs(dfs, 0);

    std::sort(best_set.begin(), best_set.end());
    return {rat(best_size, n), std::move(best_set), true};
}

// ---------------------------------------------------------------------------
// Combinatorial-cost table over a sequence of graphs.
// ---------------------------------------------------------------------------

struct CcostCell {
    Rat cost;
    bool exact = false;
    long edges_kept = 0;
};

struct CcostRow {
    long position = 0;  // sequence position (instance size n by convention)
    int n = 0;
    int max_degree = 0;
    std::vector<CcostCell> cells;  // index L-1 for L = 1..L_max
};

struct CcostTable {
    std::vector<CcostRow> rows;
    int L_max = 0;
    long n_0 = 0;
    Rat ccost_estimate;      // min over L of (min over rows at position >= n_0)
    bool all_exact = false;
    bool degree_warning = false;  // some instance exceeds the degree bound
};

// Fills cost_L for L = 1..L_max on every instance. Cells within a row are
// warm-started left to right (an L-feasible set is (L+1)-feasible), which
// keeps heuristic rows honestly non-increasing; rows run in parallel.
inline CcostTable ccost_table(const std::vector<std::pair<long, UnlabeledGraph>>& seq, int L_max,
                              long n_0, int exact_vertex_cap = 10, int exact_candidate_cap = 24,
                              std::uint64_t seed = 0, int degree_bound = 64, int jobs = 1) {
    if (L_max < 1) throw std::invalid_argument("ccost_table: L_max must be >= 1");
    CcostTable table;
    table.L_max = L_max;
    table.n_0 = n_0;
    table.rows.resize(seq.size());

    parallel_for(seq.size(), jobs, [&](std::size_t r) {
        const auto& [position, g] = seq[r];
        CcostRow row;
        row.position = position;
        row.n = g.vertex_count();
        row.max_degree = g.max_degree();
        row.cells.reserve(static_cast<std::size_t>(L_max));
        std::vector<std::pair<int, int>> warm;
        bool have_warm = false;
        for (int L = 1; L <= L_max; ++L) {
            const bool small = g.vertex_count() <= 32;
            bool use_exact = small && g.vertex_count() <= exact_vertex_cap;
            if (small && !use_exact)
                use_exact = static_cast<int>(lipschitz_candidates(g, L).size()) <=
                            exact_candidate_cap;
            LipCostResult res =
                use_exact ? lip_cost_exact(g, L, std::max(exact_vertex_cap, g.vertex_count()),
                                           exact_candidate_cap)
                          : lip_cost_heuristic(g, L, seed + static_cast<std::uint64_t>(r),
                                               have_warm ? &warm : nullptr);
            row.cells.push_back(
                {res.cost, res.exact, static_cast<long>(res.edges.size())});
            warm = std::move(res.edges);
            have_warm = true;
        }
        table.rows[r] = std::move(row);
    });

    table.all_exact = true;
    table.degree_warning = false;
    for (const auto& row : table.rows) {
        for (const auto& cell : row.cells) table.all_exact = table.all_exact && cell.exact;
        if (row.max_degree > degree_bound) table.degree_warning = true;
    }

    // Tail-min per column, then min over columns. An empty tail falls back to
    // the last row so the estimate is always defined.
    std::vector<const CcostRow*> tail;
    for (const auto& row : table.rows)
        if (row.position >= n_0) tail.push_back(&row);
    if (tail.empty() && !table.rows.empty()) tail.push_back(&table.rows.back());
    bool first = true;
    for (int L = 1; L <= L_max; ++L)
        for (const CcostRow* row : tail) {
            const Rat& v = row->cells[static_cast<std::size_t>(L - 1)].cost;
            if (first || v < table.ccost_estimate) {
                table.ccost_estimate = v;
                first = false;
            }
        }
    return table;
}

}  // namespace graphlim
