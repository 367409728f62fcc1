#pragma once

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graphlim/base_space.hpp"
#include "graphlim/exact_linalg.hpp"
#include "graphlim/unlabeled_graph.hpp"

namespace graphlim {

using Cell = std::vector<int>;  // sorted distinct vertex ids (canonical orientation)

// A finite simplicial complex: per dimension i, the sorted list of i-cells.
// Every face of every cell is present; cells are distinct.
class FiniteComplex {
  public:
    FiniteComplex() : cells_(1) {}  // the empty complex (no vertices)

    explicit FiniteComplex(std::vector<std::vector<Cell>> cells_by_dim)
        : cells_(std::move(cells_by_dim)) {
        if (cells_.empty()) cells_.emplace_back();
        for (std::size_t i = 0; i < cells_.size(); ++i) {
            auto& level = cells_[i];
            for (auto& cell : level) {
                if (cell.size() != i + 1)
                    throw std::invalid_argument("cell arity does not match its dimension");
                if (!std::is_sorted(cell.begin(), cell.end()) ||
                    std::adjacent_find(cell.begin(), cell.end()) != cell.end())
                    throw std::invalid_argument("cell vertices must be sorted and distinct");
                for (int v : cell)
                    if (v < 0) throw std::invalid_argument("vertex ids must be nonnegative");
            }
            std::sort(level.begin(), level.end());
            if (std::adjacent_find(level.begin(), level.end()) != level.end())
                throw std::invalid_argument("duplicate cell");
        }
        // Face closure.
        for (std::size_t i = 1; i < cells_.size(); ++i) {
            for (const auto& cell : cells_[i]) {
                Cell face;
                face.reserve(cell.size() - 1);
                for (std::size_t skip = 0; skip < cell.size(); ++skip) {
                    face.clear();
                    for (std::size_t j = 0; j < cell.size(); ++j)
                        if (j != skip) face.push_back(cell[j]);
                    if (!std::binary_search(cells_[i - 1].begin(), cells_[i - 1].end(), face))
                        throw std::invalid_argument("complex is not closed under faces");
                }
            }
        }
        while (cells_.size() > 1 && cells_.back().empty()) cells_.pop_back();
    }

    // Downward closure of an arbitrary list of cells.
    static FiniteComplex closure(const std::vector<Cell>& generators) {
        std::size_t max_arity = 1;
        for (const auto& c : generators) max_arity = std::max(max_arity, c.size());
        std::vector<std::set<Cell>> levels(max_arity);
        auto add = [&](auto&& self, Cell cell) -> void {
            std::sort(cell.begin(), cell.end());
            if (std::adjacent_find(cell.begin(), cell.end()) != cell.end())
                throw std::invalid_argument("cell vertices must be distinct");
            if (cell.empty()) return;
            auto& level = levels[cell.size() - 1];
            if (!level.insert(cell).second) return;
            if (cell.size() == 1) return;
            for (std::size_t skip = 0; skip < cell.size(); ++skip) {
                Cell face;
                for (std::size_t j = 0; j < cell.size(); ++j)
                    if (j != skip) face.push_back(cell[j]);
                self(self, std::move(face));
            }
        };
        for (const auto& c : generators) add(add, c);
        std::vector<std::vector<Cell>> cells;
        for (auto& level : levels) cells.emplace_back(level.begin(), level.end());
        return FiniteComplex(std::move(cells));
    }

    static FiniteComplex point() { return closure({{0}}); }

    // Full simplex on vertices 0..k.
    static FiniteComplex simplex(int k) {
        Cell top;
        for (int v = 0; v <= k; ++v) top.push_back(v);
        return closure({top});
    }

    // The hollow triangle 0-1-2 (a circle).
    static FiniteComplex triangle_boundary() { return closure({{0, 1}, {1, 2}, {0, 2}}); }

    static FiniteComplex filled_triangle() { return closure({{0, 1, 2}}); }

    // A graph as a 1-complex.
    static FiniteComplex from_graph(const UnlabeledGraph& g) {
        std::vector<std::vector<Cell>> cells(2);
        for (int v = 0; v < g.vertex_count(); ++v) cells[0].push_back({v});
        for (const auto& [u, v] : g.edges()) cells[1].push_back({u, v});
        if (cells[1].empty()) cells.pop_back();
        return FiniteComplex(std::move(cells));
    }

    int dimension() const { return static_cast<int>(cells_.size()) - 1; }

    long cell_count(int i) const {
        if (i < 0 || i > dimension()) return 0;
        return static_cast<long>(cells_[static_cast<std::size_t>(i)].size());
    }

    long total_cells() const {
        long total = 0;
        for (int i = 0; i <= dimension(); ++i) total += cell_count(i);
        return total;
    }

    const std::vector<Cell>& cells(int i) const {
        static const std::vector<Cell> empty;
        if (i < 0 || i > dimension()) return empty;
        return cells_[static_cast<std::size_t>(i)];
    }

    long cell_index(int i, const Cell& cell) const {
        const auto& level = cells(i);
        auto it = std::lower_bound(level.begin(), level.end(), cell);
        if (it == level.end() || *it != cell) return -1;
        return it - level.begin();
    }

    long euler_characteristic() const {
        long chi = 0;
        for (int i = 0; i <= dimension(); ++i)
            chi += (i % 2 == 0 ? 1 : -1) * cell_count(i);
        return chi;
    }

    // Every cell of `this` is a cell of `other`.
    bool subcomplex_of(const FiniteComplex& other) const {
        for (int i = 0; i <= dimension(); ++i)
            for (const auto& cell : cells(i))
                if (other.cell_index(i, cell) < 0) return false;
        return true;
    }

    bool operator==(const FiniteComplex& other) const { return cells_ == other.cells_; }

  private:
    std::vector<std::vector<Cell>> cells_;
};

// Alternating-sign incidence matrix of ∂_i in the canonical (sorted-vertex)
// orientation: rows = (i-1)-cells, columns = i-cells, stored sparsely.
inline SparseIntColumns boundary_matrix(const FiniteComplex& k, int i) {
    if (i < 1) throw std::invalid_argument("boundary_matrix: dimension must be >= 1");
    SparseIntColumns out;
    out.rows = static_cast<int>(k.cell_count(i - 1));
    if (i > k.dimension()) return out;
    out.cols.reserve(static_cast<std::size_t>(k.cell_count(i)));
    Cell face;
    for (const auto& cell : k.cells(i)) {
        std::vector<std::pair<int, Int>> column;
        column.reserve(cell.size());
        for (std::size_t skip = 0; skip < cell.size(); ++skip) {
            face.clear();
            for (std::size_t j = 0; j < cell.size(); ++j)
                if (j != skip) face.push_back(cell[j]);
            const long row = k.cell_index(i - 1, face);
            if (row < 0) throw std::logic_error("missing face in a validated complex");
            column.emplace_back(static_cast<int>(row), Int(skip % 2 == 0 ? 1 : -1));
        }
        std::sort(column.begin(), column.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        out.cols.push_back(std::move(column));
    }
    return out;
}

inline IntMatrix sparse_to_dense(const SparseIntColumns& m) {
    IntMatrix dense(static_cast<std::size_t>(m.rows),
                    std::vector<Int>(m.cols.size(), Int(0)));
    for (std::size_t c = 0; c < m.cols.size(); ++c)
        for (const auto& [row, value] : m.cols[c])
            dense[static_cast<std::size_t>(row)][c] = value;
    return dense;
}

// ---------------------------------------------------------------------------
// Rips complexes: i-cells are the (i+1)-subsets of vertices of pairwise
// G-distance <= q (equivalently G-diameter <= q), for i <= dmax.
// ---------------------------------------------------------------------------

inline FiniteComplex rips_complex(const UnlabeledGraph& g, int q, int dmax) {
    if (q < 0 || dmax < 0) throw std::invalid_argument("rips_complex: q and dmax must be >= 0");
    const int n = g.vertex_count();
    // Distance-<=q neighborhood graph.
    std::vector<std::vector<int>> close(static_cast<std::size_t>(n));
    if (q >= 1) {
        const auto adj = g.adjacency();
        std::vector<int> dist(static_cast<std::size_t>(n), -1);
        for (int u = 0; u < n; ++u) {
            std::vector<int> visited{u};
            dist[static_cast<std::size_t>(u)] = 0;
            std::size_t head = 0;
            while (head < visited.size()) {
                int v = visited[head++];
                if (dist[static_cast<std::size_t>(v)] >= q) continue;
                for (int w : adj[static_cast<std::size_t>(v)])
                    if (dist[static_cast<std::size_t>(w)] < 0) {
                        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
                        visited.push_back(w);
                    }
            }
            for (int v : visited)
                if (v != u) close[static_cast<std::size_t>(u)].push_back(v);
            for (int v : visited) dist[static_cast<std::size_t>(v)] = -1;
        }
        for (auto& list : close) std::sort(list.begin(), list.end());
    }

    std::vector<std::vector<Cell>> cells(1);
    cells[0].reserve(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) cells[0].push_back({v});
    for (int dim = 1; dim <= dmax; ++dim) {
        const auto& below = cells[static_cast<std::size_t>(dim - 1)];
        std::vector<Cell> level;
        for (const auto& cell : below) {
            // Extensions: vertices past the last member adjacent to all members.
            std::vector<int> candidates;
            const auto& first_adj = close[static_cast<std::size_t>(cell[0])];
            for (int v : first_adj)
                if (v > cell.back()) candidates.push_back(v);
            for (std::size_t j = 1; j < cell.size() && !candidates.empty(); ++j) {
                const auto& a = close[static_cast<std::size_t>(cell[j])];
                std::vector<int> kept;
                std::set_intersection(candidates.begin(), candidates.end(), a.begin(), a.end(),
                                      std::back_inserter(kept));
                candidates = std::move(kept);
            }
            for (int v : candidates) {
                Cell next = cell;
                next.push_back(v);
                level.push_back(std::move(next));
            }
        }
        if (level.empty()) break;
        cells.push_back(std::move(level));
    }
    return FiniteComplex(std::move(cells));
}

// ---------------------------------------------------------------------------
// Fields of complexes over a finite base space.
// ---------------------------------------------------------------------------

struct FiberedComplex {
    BaseSpace base;
    std::vector<FiniteComplex> fibers;  // one per base point

    FiberedComplex(BaseSpace b, std::vector<FiniteComplex> f)
        : base(b), fibers(std::move(f)) {
        if (static_cast<int>(fibers.size()) != base.n)
            throw std::invalid_argument("need exactly one fiber per base point");
    }

    // Constant field.
    FiberedComplex(BaseSpace b, const FiniteComplex& fiber)
        : base(b), fibers(static_cast<std::size_t>(b.n), fiber) {}

    bool subcomplex_of(const FiberedComplex& other) const {
        if (!(base == other.base)) return false;
        for (int x = 0; x < base.n; ++x)
            if (!fibers[static_cast<std::size_t>(x)].subcomplex_of(
                    other.fibers[static_cast<std::size_t>(x)]))
                return false;
        return true;
    }
};

// ---------------------------------------------------------------------------
// Text format: "complex <maxdim>", then per dimension "cells <i> <count>"
// followed by one sorted vertex tuple per line. Byte-deterministic.
// ---------------------------------------------------------------------------

inline void write_complex(std::ostream& os, const FiniteComplex& k) {
    os << "complex " << k.dimension() << '\n';
    for (int i = 0; i <= k.dimension(); ++i) {
        os << "cells " << i << ' ' << k.cell_count(i) << '\n';
        for (const auto& cell : k.cells(i)) {
            for (std::size_t j = 0; j < cell.size(); ++j)
                os << (j ? " " : "") << cell[j];
            os << '\n';
        }
    }
}

inline FiniteComplex read_complex(std::istream& is) {
    std::string tag;
    int maxdim = -1;
    if (!(is >> tag >> maxdim) || tag != "complex")
        throw std::invalid_argument("complex file: expected 'complex <maxdim>'");
    std::vector<std::vector<Cell>> cells;
    for (int i = 0; i <= maxdim; ++i) {
        int dim = -1;
        long count = -1;
        if (!(is >> tag >> dim >> count) || tag != "cells" || dim != i || count < 0)
            throw std::invalid_argument("complex file: expected 'cells " + std::to_string(i) +
                                        " <count>'");
        std::vector<Cell> level;
        level.reserve(static_cast<std::size_t>(count));
        for (long c = 0; c < count; ++c) {
            Cell cell(static_cast<std::size_t>(i) + 1);
            for (auto& v : cell)
                if (!(is >> v)) throw std::invalid_argument("complex file: truncated cell list");
            level.push_back(std::move(cell));
        }
        cells.push_back(std::move(level));
    }
    return FiniteComplex(std::move(cells));
}

inline std::string complex_to_string(const FiniteComplex& k) {
    std::ostringstream os;
    write_complex(os, k);
    return os.str();
}

inline FiniteComplex complex_from_string(const std::string& text) {
    std::istringstream is(text);
    return read_complex(is);
}

}  // namespace graphlim
