#pragma once

#include <algorithm>
#include <deque>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "graphlim/dsu.hpp"
#include "graphlim/graphing.hpp"

namespace graphlim {

// Simple undirected graph on vertices 0..n-1: the unlabeled form of a
// symmetric graphing in which every edge is a one-pair bisection.
class UnlabeledGraph {
  public:
    explicit UnlabeledGraph(int n = 1) : n_(n) {
        if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
    }

    UnlabeledGraph(int n, std::vector<std::pair<int, int>> edges) : UnlabeledGraph(n) {
        for (auto& [u, v] : edges) {
            if (u > v) std::swap(u, v);
            if (u < 0 || v >= n || u == v) throw std::invalid_argument("bad edge");
        }
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
            throw std::invalid_argument("duplicate edge");
        edges_ = std::move(edges);
    }

    static UnlabeledGraph cycle(int n) {
        std::vector<std::pair<int, int>> edges;
        if (n >= 3)
            for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
        else if (n == 2)
            edges.emplace_back(0, 1);
        return UnlabeledGraph(n, std::move(edges));
    }

    static UnlabeledGraph path(int n) {
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
        return UnlabeledGraph(n, std::move(edges));
    }

    int vertex_count() const { return n_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    bool has_edge(int u, int v) const {
        if (u > v) std::swap(u, v);
        return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(u, v));
    }

    std::vector<std::vector<int>> adjacency() const {
        std::vector<std::vector<int>> adj(static_cast<std::size_t>(n_));
        for (const auto& [u, v] : edges_) {
            adj[static_cast<std::size_t>(u)].push_back(v);
            adj[static_cast<std::size_t>(v)].push_back(u);
        }
        return adj;
    }

    int max_degree() const {
        std::vector<int> deg(static_cast<std::size_t>(n_), 0);
        for (const auto& [u, v] : edges_) {
            ++deg[static_cast<std::size_t>(u)];
            ++deg[static_cast<std::size_t>(v)];
        }
        return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
    }

    int component_count() const {
        Dsu dsu(n_);
        for (const auto& [u, v] : edges_) dsu.unite(u, v);
        return dsu.component_count();
    }

    std::vector<int> component_labels() const {
        Dsu dsu(n_);
        for (const auto& [u, v] : edges_) dsu.unite(u, v);
        std::vector<int> label(static_cast<std::size_t>(n_));
        for (int v = 0; v < n_; ++v) label[static_cast<std::size_t>(v)] = dsu.find(v);
        return label;
    }

    // BFS distances from src; -1 where unreachable.
    std::vector<int> distances_from(int src) const { return distances_from(src, adjacency()); }

    std::vector<int> distances_from(int src, const std::vector<std::vector<int>>& adj) const {
        std::vector<int> dist(static_cast<std::size_t>(n_), -1);
        dist[static_cast<std::size_t>(src)] = 0;
        std::deque<int> queue{src};
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int w : adj[static_cast<std::size_t>(v)]) {
                if (dist[static_cast<std::size_t>(w)] < 0) {
                    dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
                    queue.push_back(w);
                }
            }
        }
        return dist;
    }

    // Largest finite distance over all vertex pairs (per component), i.e. the
    // maximum component diameter.
    int max_component_diameter() const {
        auto adj = adjacency();
        int best = 0;
        for (int v = 0; v < n_; ++v) {
            auto dist = distances_from(v, adj);
            for (int d : dist) best = std::max(best, d);
        }
        return best;
    }

    // Symmetric graphing with one single-pair bisection per edge, in sorted
    // edge order.
    Graphing to_graphing() const {
        Graphing g{BaseSpace(n_)};
        for (const auto& [u, v] : edges_)
            g.push_back(PartialBijection(BaseSpace(n_), {{u, v}}));
        return g;
    }

    bool operator==(const UnlabeledGraph&) const = default;

  private:
    int n_ = 1;
    std::vector<std::pair<int, int>> edges_;
};

// Text format: first line "n m", then m lines "u v", edges sorted.
inline void write_graph(std::ostream& os, const UnlabeledGraph& g) {
    os << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const auto& [u, v] : g.edges()) os << u << ' ' << v << '\n';
}

inline UnlabeledGraph read_graph(std::istream& is) {
    int n = 0, m = 0;
    if (!(is >> n >> m)) throw std::invalid_argument("graph file: missing 'n m' header");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        int u = 0, v = 0;
        if (!(is >> u >> v))
            throw std::invalid_argument("graph file: edge line " + std::to_string(i + 1) +
                                        " unreadable");
        edges.emplace_back(u, v);
    }
    return UnlabeledGraph(n, std::move(edges));
}

inline std::string graph_to_string(const UnlabeledGraph& g) {
    std::ostringstream os;
    write_graph(os, g);
    return os.str();
}

inline UnlabeledGraph graph_from_string(const std::string& text) {
    std::istringstream is(text);
    return read_graph(is);
}

}  // namespace graphlim
