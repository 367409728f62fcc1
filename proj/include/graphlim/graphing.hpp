#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <stdexcept>
#include <vector>

#include "graphlim/dsu.hpp"
#include "graphlim/partial_bijection.hpp"

namespace graphlim {

// An ordered finite list of bisections over one base space. Order is
// significant: the indexed word-length convention below depends on it.
class Graphing {
  public:
    explicit Graphing(BaseSpace base) : base_(base) {}

    Graphing(BaseSpace base, std::vector<PartialBijection> bisections)
        : base_(base), bisections_(std::move(bisections)) {
        for (const auto& b : bisections_)
            if (!(b.base() == base_)) throw std::invalid_argument("bisection base mismatch");
    }

    const BaseSpace& base() const { return base_; }
    const std::vector<PartialBijection>& bisections() const { return bisections_; }
    int generator_count() const { return static_cast<int>(bisections_.size()); }

    void push_back(PartialBijection b) {
        if (!(b.base() == base_)) throw std::invalid_argument("bisection base mismatch");
        bisections_.push_back(std::move(b));
    }

    // Appends the inverse of each bisection (used by symmetry property tests;
    // word lengths already treat generators as invertible).
    Graphing symmetrized() const {
        Graphing out(base_, bisections_);
        for (const auto& b : bisections_) out.push_back(invert(b));
        return out;
    }

  private:
    BaseSpace base_;
    std::vector<PartialBijection> bisections_;
};

// Connected components of the undirected graph with an edge {x, f(x)} for
// every pair of every bisection. Components are listed by smallest member,
// members ascending.
inline std::vector<std::vector<int>> orbit_partition(const Graphing& g) {
    Dsu dsu(g.base().n);
    for (const auto& b : g.bisections())
        for (const auto& [s, t] : b.pairs()) dsu.unite(s, t);
    std::vector<std::vector<int>> orbits(static_cast<std::size_t>(g.base().n));
    for (int x = 0; x < g.base().n; ++x) orbits[static_cast<std::size_t>(dsu.find(x))].push_back(x);
    std::erase_if(orbits, [](const auto& v) { return v.empty(); });
    return orbits;
}

inline int orbit_count(const Graphing& g) {
    Dsu dsu(g.base().n);
    for (const auto& b : g.bisections())
        for (const auto& [s, t] : b.pairs()) dsu.unite(s, t);
    return dsu.component_count();
}

namespace detail {

// step_table[i][v] = image of v under generator i (or -1), followed by the
// inverse images; one flat lookup per BFS edge.
inline std::vector<std::vector<int>> step_table(const Graphing& g) {
    const auto n = static_cast<std::size_t>(g.base().n);
    std::vector<std::vector<int>> steps;
    steps.reserve(2 * g.bisections().size());
    for (const auto& b : g.bisections()) {
        std::vector<int> fwd(n, -1), bwd(n, -1);
        for (const auto& [s, t] : b.pairs()) {
            fwd[static_cast<std::size_t>(s)] = t;
            bwd[static_cast<std::size_t>(t)] = s;
        }
        steps.push_back(std::move(fwd));
        steps.push_back(std::move(bwd));
    }
    return steps;
}

// Distances from x using generators with index < gen_limit and their
// inverses; entries of -1 mean unreachable. `steps` comes from step_table.
inline std::vector<int> bfs_steps(const std::vector<std::vector<int>>& steps, int n, int x,
                                  int gen_limit) {
    std::vector<int> dist(static_cast<std::size_t>(n), -1);
    dist[static_cast<std::size_t>(x)] = 0;
    std::deque<int> queue{x};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int i = 0; i < 2 * gen_limit; ++i) {
            int w = steps[static_cast<std::size_t>(i)][static_cast<std::size_t>(v)];
            if (w >= 0 && dist[static_cast<std::size_t>(w)] < 0) {
                dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

}  // namespace detail

enum class LengthConvention {
    indexed,        // a word counted with length k may use only the first k generators
    any_generator,  // plain word length over all generators and inverses
};

// Word-length from x to y; nullopt means y is not in the orbit of x.
// Under the indexed convention the value is min over k of k such that some
// word of length <= k over generators 1..k (and inverses) maps x to y.
inline std::optional<int> word_length(const Graphing& g, int x, int y,
                                      LengthConvention convention = LengthConvention::indexed) {
    if (x < 0 || x >= g.base().n || y < 0 || y >= g.base().n)
        throw std::invalid_argument("point out of base range");
    if (x == y) return 0;  // the empty word; units have length 0
    const int m = g.generator_count();
    const auto steps = detail::step_table(g);
    if (convention == LengthConvention::any_generator) {
        auto dist = detail::bfs_steps(steps, g.base().n, x, m);
        int d = dist[static_cast<std::size_t>(y)];
        if (d < 0) return std::nullopt;
        return d;
    }
    for (int k = 1; k <= m; ++k) {
        auto dist = detail::bfs_steps(steps, g.base().n, x, k);
        int d = dist[static_cast<std::size_t>(y)];
        if (d >= 0 && d <= k) return k;
        if (k == m && d >= 0) return d;  // d > m: words longer than the list are fine
    }
    return std::nullopt;
}

}  // namespace graphlim
