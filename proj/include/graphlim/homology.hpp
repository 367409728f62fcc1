#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graphlim/complex.hpp"
#include "graphlim/exact_linalg.hpp"
#include "graphlim/parallel.hpp"
#include "graphlim/rational.hpp"
#include "graphlim/unlabeled_graph.hpp"

namespace graphlim {

// Coefficient field for exact ranks: the rationals, or a prime field.
struct Field {
    bool rational = true;
    unsigned long p = 0;

    static Field Q() { return Field{true, 0}; }
    static Field Fp(unsigned long prime) {
        if (!is_prime_u64(prime)) throw std::invalid_argument("field characteristic must be prime");
        return Field{false, prime};
    }
    std::string name() const { return rational ? "q" : "fp:" + std::to_string(p); }
};

inline long matrix_rank(const SparseIntColumns& m, const Field& field) {
    return field.rational ? rank_sparse_q(m) : rank_sparse_fp(m, field.p);
}

// dim ker d_i - rank d_{i+1} over the requested field (d_0 is the zero map).
inline long betti(const FiniteComplex& k, int i, const Field& field = Field::Q()) {
    if (i < 0) return 0;
    const long chains = k.cell_count(i);
    const long rank_i = i >= 1 ? matrix_rank(boundary_matrix(k, i), field) : 0;
    const long rank_above = matrix_rank(boundary_matrix(k, i + 1), field);
    return chains - rank_i - rank_above;
}

// dim ker of the combinatorial Laplacian d_i^T d_i + d_{i+1} d_{i+1}^T over Q.
inline long laplacian_kernel_dim(const FiniteComplex& k, int i) {
    if (i < 0) return 0;
    const std::size_t n = static_cast<std::size_t>(k.cell_count(i));
    if (n == 0) return 0;
    IntMatrix lap(n, std::vector<Int>(n, Int(0)));
    if (i >= 1) {
        const auto d = boundary_matrix(k, i);  // rows: (i-1)-cells, cols: i-cells
        for (std::size_t a = 0; a < d.cols.size(); ++a)
            for (std::size_t b = 0; b < d.cols.size(); ++b) {
                Int dot(0);  // sparse column dot product
                auto ia = d.cols[a].begin();
                auto ib = d.cols[b].begin();
                while (ia != d.cols[a].end() && ib != d.cols[b].end()) {
                    if (ia->first < ib->first)
                        ++ia;
                    else if (ib->first < ia->first)
                        ++ib;
                    else {
                        dot += ia->second * ib->second;
                        ++ia, ++ib;
                    }
                }
                lap[a][b] += dot;
            }
    }
    const auto d_up = boundary_matrix(k, i + 1);  // rows: i-cells
    for (const auto& col : d_up.cols)
        for (const auto& [r1, v1] : col)
            for (const auto& [r2, v2] : col)
                lap[static_cast<std::size_t>(r1)][static_cast<std::size_t>(r2)] += v1 * v2;
    return static_cast<long>(n) - rank_q(lap);
}

inline Rat average_betti(const FiberedComplex& f, int i) {
    Rat total(0);
    for (const auto& fiber : f.fibers) total += Rat(betti(fiber, i, Field::Q()));
    return total / Rat(f.base.n);
}

// dim Im(H_i(sub) -> H_i(super)) over the field, for sub a subcomplex of super.
// Computed as dim ker d_i(sub) - rank d_{i+1}(super) + rank of d_{i+1}(super)
// restricted to the rows of i-cells of super that are NOT cells of sub: boundaries
// supported inside the sub chain group are automatically cycles, so the correction
// counts exactly the cycles of sub that die in super.
inline long homology_image_dim(const FiniteComplex& sub, const FiniteComplex& super, int i,
                               const Field& field = Field::Q()) {
    if (i < 0) return 0;
    const long ker_sub =
        sub.cell_count(i) - (i >= 1 ? matrix_rank(boundary_matrix(sub, i), field) : 0);
    const auto d_up = boundary_matrix(super, i + 1);
    const long rank_up = matrix_rank(d_up, field);

    // Row-restriction of d_up to i-cells of super outside sub.
    std::vector<int> new_row(static_cast<std::size_t>(super.cell_count(i)), -1);
    int outside = 0;
    {
        const auto& level = super.cells(i);
        for (std::size_t r = 0; r < level.size(); ++r)
            if (sub.cell_index(i, level[r]) < 0) new_row[r] = outside++;
    }
    SparseIntColumns restricted;
    restricted.rows = outside;
    restricted.cols.reserve(d_up.cols.size());
    for (const auto& col : d_up.cols) {
        std::vector<std::pair<int, Int>> kept;
        for (const auto& [row, value] : col)
            if (new_row[static_cast<std::size_t>(row)] >= 0)
                kept.emplace_back(new_row[static_cast<std::size_t>(row)], value);
        restricted.cols.push_back(std::move(kept));
    }
    return ker_sub - rank_up + matrix_rank(restricted, field);
}

// Fiber-averaged image dimension of H_i under inclusion of nested fields of complexes.
inline Rat nabla(const FiberedComplex& sub, const FiberedComplex& super, int i) {
    if (!(sub.base == super.base))
        throw std::invalid_argument("nabla: the two fields live over different base spaces");
    if (!sub.subcomplex_of(super))
        throw std::invalid_argument("nabla: first field is not a fiberwise subcomplex of the second");
    Rat total(0);
    for (int x = 0; x < sub.base.n; ++x)
        total += Rat(homology_image_dim(sub.fibers[static_cast<std::size_t>(x)],
                                        super.fibers[static_cast<std::size_t>(x)], i));
    return total / Rat(sub.base.n);
}

// ---------------------------------------------------------------------------
// Bounded-length simple cycles and the cycle-span subspace V_q.
// ---------------------------------------------------------------------------

// Incremental row-rank accumulator over Q or F_p, with primitive-row reduction.
class IncrementalRank {
  public:
    IncrementalRank(int width, Field field) : width_(width), field_(field) {}

    int rank() const { return static_cast<int>(rows_.size()); }

    // Adds the integer row to the span; returns true if the rank grew.
    bool add(const std::vector<Int>& row) {
        if (static_cast<int>(row.size()) != width_)
            throw std::invalid_argument("IncrementalRank: row width mismatch");
        std::vector<Int> work = row;
        if (!field_.rational)
            for (auto& v : work) v = mod_of(v, field_.p);
        for (std::size_t b = 0; b < rows_.size(); ++b) {
            const int piv = pivots_[b];
            if (work[static_cast<std::size_t>(piv)] == 0) continue;
            eliminate(work, rows_[b], piv);
        }
        int piv = -1;
        for (int j = 0; j < width_; ++j)
            if (work[static_cast<std::size_t>(j)] != 0) {
                piv = j;
                break;
            }
        if (piv < 0) return false;
        normalize(work);
        rows_.push_back(std::move(work));
        pivots_.push_back(piv);
        return true;
    }

  private:
    static void make_row_primitive(std::vector<Int>& row) {
        Int g(0);
        for (const auto& v : row) {
            if (v != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
            if (g == 1) return;
        }
        if (g <= 1) return;
        for (auto& v : row) v /= g;
    }

    void eliminate(std::vector<Int>& work, const std::vector<Int>& basis, int piv) const {
        const Int a = work[static_cast<std::size_t>(piv)];
        const Int b = basis[static_cast<std::size_t>(piv)];  // pivot entry of the basis row
        if (field_.rational) {
            for (int j = 0; j < width_; ++j)
                work[static_cast<std::size_t>(j)] =
                    work[static_cast<std::size_t>(j)] * b - basis[static_cast<std::size_t>(j)] * a;
            make_row_primitive(work);
        } else {
            const Int factor =
                Int(mod_of(a * Int(inv_mod(mpz_get_ui(b.get_mpz_t()), field_.p)), field_.p));
            for (int j = 0; j < width_; ++j)
                work[static_cast<std::size_t>(j)] = Int(mod_of(
                    work[static_cast<std::size_t>(j)] - factor * basis[static_cast<std::size_t>(j)],
                    field_.p));
        }
    }

    void normalize(std::vector<Int>& row) const {
        if (field_.rational)
            make_row_primitive(row);
        // F_p rows are already reduced mod p; unit-scaling is unnecessary for rank.
    }

    int width_;
    Field field_;
    std::vector<std::vector<Int>> rows_;
    std::vector<int> pivots_;
};

struct CycleSpanResult {
    long dim = 0;               // rank of the span of found cycles (lower bound if budget hit)
    bool budget_exceeded = false;
    long cycles_found = 0;
};

// Dimension of the span, over `field`, of the edge-indicator chains (with the
// u<v orientation) of simple cycles of length <= max_len. Enumeration: DFS from
// each start vertex s using only vertices > s, closing back to s; direction
// deduplicated by requiring first neighbor < last neighbor. `step_budget` caps
// DFS node expansions; on exhaustion the result is marked as a lower bound.
// Enumeration stops early once the full cycle space (|E| - |V| + c) is spanned.
inline CycleSpanResult cycle_span_dim(const UnlabeledGraph& g, int max_len, const Field& field,
                                      long step_budget = 50'000'000) {
    CycleSpanResult out;
    const int n = g.vertex_count();
    const long m = g.edge_count();
    const long full = m - n + g.component_count();
    if (max_len < 3 || full == 0) return out;

    std::vector<std::vector<std::pair<int, long>>> adj(static_cast<std::size_t>(n));
    {
        const auto& edges = g.edges();
        for (std::size_t e = 0; e < edges.size(); ++e) {
            adj[static_cast<std::size_t>(edges[e].first)].emplace_back(edges[e].second,
                                                                       static_cast<long>(e));
            adj[static_cast<std::size_t>(edges[e].second)].emplace_back(edges[e].first,
                                                                        static_cast<long>(e));
        }
        for (auto& list : adj) std::sort(list.begin(), list.end());
    }

    IncrementalRank rank(static_cast<int>(m), field);
    std::vector<Int> chain(static_cast<std::size_t>(m));
    std::vector<char> on_path(static_cast<std::size_t>(n), 0);
    std::vector<int> path;
    std::vector<long> path_edges;
    long steps = 0;

    // Iterative DFS frame: vertex and next-neighbor index to try.
    struct Frame {
        int vertex;
        std::size_t next;
    };
    std::vector<Frame> stack;

    auto record_cycle = [&](long closing_edge) {
        ++out.cycles_found;
        std::fill(chain.begin(), chain.end(), Int(0));
        for (std::size_t j = 0; j + 1 < path.size(); ++j) {
            const int u = path[j], v = path[j + 1];
            chain[static_cast<std::size_t>(path_edges[j])] = Int(u < v ? 1 : -1);
        }
        const int u = path.back(), v = path.front();
        chain[static_cast<std::size_t>(closing_edge)] = Int(u < v ? 1 : -1);
        if (rank.add(chain)) out.dim = rank.rank();
    };

    for (int s = 0; s < n && out.dim < full; ++s) {
        path.assign(1, s);
        path_edges.clear();
        on_path.assign(on_path.size(), 0);
        on_path[static_cast<std::size_t>(s)] = 1;
        stack.assign(1, {s, 0});
        while (!stack.empty() && out.dim < full) {
            if (++steps > step_budget) {
                out.budget_exceeded = true;
                return out;
            }
            auto& frame = stack.back();
            const auto& nbrs = adj[static_cast<std::size_t>(frame.vertex)];
            if (frame.next >= nbrs.size()) {
                stack.pop_back();
                on_path[static_cast<std::size_t>(frame.vertex)] = 0;
                path.pop_back();
                if (!path_edges.empty()) path_edges.pop_back();
                continue;
            }
            const auto [w, edge] = nbrs[frame.next++];
            if (w == s) {
                // Close a cycle: needs length >= 3 and canonical direction.
                if (path.size() >= 3 && path[1] < path.back()) record_cycle(edge);
                continue;
            }
            if (w < s || on_path[static_cast<std::size_t>(w)]) continue;
            if (static_cast<int>(path.size()) >= max_len) continue;  // no room to return to s
            on_path[static_cast<std::size_t>(w)] = 1;
            path.push_back(w);
            path_edges.push_back(edge);
            stack.push_back({w, 0});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// beta_d tables: normalized homology-image dimensions across Rips scales.
// ---------------------------------------------------------------------------

struct BetaDCell {
    Rat value = Rat(0);
    bool conclusive = true;
    std::string method;  // "component-count" | "diameter" | "cycle-span" | "exact" | "cell-budget"
};

struct BetaDRow {
    long position = 0;
    int n = 0;
    std::vector<std::vector<BetaDCell>> cells;  // [q index][p index]
};

struct BetaDTable {
    std::vector<int> q_grid;
    std::vector<int> p_grid;
    std::vector<BetaDRow> rows;
    int d = 0;
    long n_0 = 0;
    Rat corner = Rat(0);        // largest q, largest p, largest position
    bool corner_conclusive = false;
};

// dim Im(H_d(R^q(G)) -> H_d(R^{q+p}(G))) / |V| per instance and grid point, over Q.
// Cheap conclusive certificates are tried before the exact rank computation:
//   d = 0:       the image dimension is the component count (n when q+p = 0).
//   diameter:    max component diameter <= q makes R^q a simplex per component
//                (through dimension d+1), so H_d vanishes at the source (d >= 1).
//   cycle-span:  for d = 1, if simple cycles of length <= 2(q+p) span the full
//                cycle space, every 1-cycle of R^q dies in R^{q+p}: an R^q-edge is
//                homologous to a geodesic path (the swap loop sits inside a clique
//                of R^{q+p}), and a graph cycle of length <= 2(q+p)+1 cones off.
// Instances whose R^{q+p} would exceed `cell_budget` total cells are marked
// inconclusive rather than computed.
inline BetaDTable beta_d_table(const std::vector<std::pair<long, UnlabeledGraph>>& seq, int d,
                               std::vector<int> q_grid, std::vector<int> p_grid, long n_0 = 0,
                               long cell_budget = 4'000'000, long cycle_step_budget = 20'000'000,
                               int jobs = 1) {
    if (d < 0) throw std::invalid_argument("beta_d_table: d must be >= 0");
    if (q_grid.empty() || p_grid.empty())
        throw std::invalid_argument("beta_d_table: q and p grids must be nonempty");
    std::sort(q_grid.begin(), q_grid.end());
    std::sort(p_grid.begin(), p_grid.end());
    for (int q : q_grid)
        if (q < 0) throw std::invalid_argument("beta_d_table: q values must be >= 0");
    for (int p : p_grid)
        if (p < 0) throw std::invalid_argument("beta_d_table: p values must be >= 0");

    BetaDTable table;
    table.q_grid = q_grid;
    table.p_grid = p_grid;
    table.d = d;
    table.n_0 = n_0;
    table.rows.resize(seq.size());

    parallel_for(seq.size(), jobs, [&](std::size_t idx) {
        const auto& [position, g] = seq[idx];
        BetaDRow row;
        row.position = position;
        row.n = g.vertex_count();
        const Rat unit(1, std::max(1, row.n));
        const int diameter = g.max_component_diameter();
        const long components = g.component_count();
        const long cycle_space = g.edge_count() - row.n + components;

        // Cycle-span certificates, memoized per cycle-length bound. Enumeration
        // stops early once the full cycle space is spanned, so repeated lengths
        // are cheap when short cycles already span.
        std::vector<std::pair<int, bool>> span_memo;  // (length, spans fully)
        auto spans_fully_at = [&](int len) {
            for (const auto& [l, spans] : span_memo)
                if (l == len) return spans;
            const auto span = cycle_span_dim(g, len, Field::Q(), cycle_step_budget);
            const bool spans = !span.budget_exceeded && span.dim == cycle_space;
            span_memo.emplace_back(len, spans);
            return spans;
        };

        row.cells.resize(q_grid.size());
        // Rips complexes are shared across cells of the row via a scale cache.
        std::vector<std::optional<FiniteComplex>> rips_cache(
            static_cast<std::size_t>(q_grid.back() + p_grid.back()) + 1);
        auto rips_at = [&](int scale) -> const FiniteComplex& {
            auto& slot = rips_cache[static_cast<std::size_t>(scale)];
            if (!slot) slot = rips_complex(g, scale, d + 1);
            return *slot;
        };
        // Cell-count guard without building the complex: vertices + edges of the
        // scale graph bound the budget check cheaply; the full count is checked
        // after construction as well.
        for (std::size_t qi = 0; qi < q_grid.size(); ++qi) {
            row.cells[qi].resize(p_grid.size());
            for (std::size_t pi = 0; pi < p_grid.size(); ++pi) {
                BetaDCell cell;
                const int q = q_grid[qi], p = p_grid[pi];
                if (d == 0) {
                    cell.value = q + p >= 1 ? Rat(components) * unit : Rat(1);
                    cell.method = "component-count";
                } else if (diameter <= q) {
                    cell.value = Rat(0);
                    cell.method = "diameter";
                } else if (d == 1 && (cycle_space == 0 || spans_fully_at(2 * (q + p)))) {
                    cell.value = Rat(0);
                    cell.method = "cycle-span";
                } else {
                    const FiniteComplex& super = rips_at(q + p);
                    if (super.total_cells() > cell_budget) {
                        cell.conclusive = false;
                        cell.method = "cell-budget";
                    } else {
                        const FiniteComplex& sub = rips_at(q);
                        cell.value = Rat(homology_image_dim(sub, super, d)) * unit;
                        cell.method = "exact";
                    }
                }
                row.cells[qi][pi] = std::move(cell);
            }
        }
        table.rows[idx] = std::move(row);
    });

    if (!table.rows.empty()) {
        const auto& corner_row = *std::max_element(
            table.rows.begin(), table.rows.end(),
            [](const BetaDRow& a, const BetaDRow& b) { return a.position < b.position; });
        const auto& cell = corner_row.cells.back().back();
        table.corner = cell.value;
        table.corner_conclusive = cell.conclusive;
    }
    return table;
}

// ---------------------------------------------------------------------------
// Elek-style first-Betti tables from short-cycle spans.
// ---------------------------------------------------------------------------

struct ElekCell {
    long dim_vq = 0;
    bool budget_exceeded = false;  // dim_vq is then a lower bound; the forms upper bounds
    Rat first_form = Rat(0);       // (|E| - dim V_q)/|V| - 1
    Rat second_form = Rat(0);      // b_1(G^q)/|V| = (|E| - |V| + c - dim V_q)/|V|
    Rat discrepancy = Rat(0);      // second - first = c/|V|
};

struct ElekRow {
    long position = 0;
    int n = 0;
    long edges = 0;
    long components = 0;
    std::vector<ElekCell> cells;  // one per q
};

struct ElekTable {
    std::vector<int> q_grid;
    std::vector<ElekRow> rows;
    long n_0 = 0;
    Rat corner_first = Rat(0);   // largest q, largest position
    Rat corner_second = Rat(0);
    bool corner_conclusive = false;
};

inline ElekTable elek_beta(const std::vector<std::pair<long, UnlabeledGraph>>& seq,
                           const Field& field, std::vector<int> q_grid,
                           long step_budget = 50'000'000, long n_0 = 0, int jobs = 1) {
    if (q_grid.empty()) throw std::invalid_argument("elek_beta: q grid must be nonempty");
    std::sort(q_grid.begin(), q_grid.end());
    for (int q : q_grid)
        if (q < 0) throw std::invalid_argument("elek_beta: q values must be >= 0");

    ElekTable table;
    table.q_grid = q_grid;
    table.n_0 = n_0;
    table.rows.resize(seq.size());

    parallel_for(seq.size(), jobs, [&](std::size_t idx) {
        const auto& [position, g] = seq[idx];
        ElekRow row;
        row.position = position;
        row.n = g.vertex_count();
        row.edges = g.edge_count();
        row.components = g.component_count();
        const Rat nv(std::max(1, row.n));
        for (int q : q_grid) {
            ElekCell cell;
            const auto span = cycle_span_dim(g, q, field, step_budget);
            cell.dim_vq = span.dim;
            cell.budget_exceeded = span.budget_exceeded;
            cell.first_form = (Rat(row.edges) - Rat(cell.dim_vq)) / nv - Rat(1);
            cell.second_form =
                (Rat(row.edges) - Rat(row.n) + Rat(row.components) - Rat(cell.dim_vq)) / nv;
            cell.discrepancy = cell.second_form - cell.first_form;
            row.cells.push_back(std::move(cell));
        }
        table.rows[idx] = std::move(row);
    });

    if (!table.rows.empty()) {
        const auto& corner_row = *std::max_element(
            table.rows.begin(), table.rows.end(),
            [](const ElekRow& a, const ElekRow& b) { return a.position < b.position; });
        const auto& cell = corner_row.cells.back();
        table.corner_first = cell.first_form;
        table.corner_second = cell.second_form;
        table.corner_conclusive = !cell.budget_exceeded;
    }
    return table;
}

// ---------------------------------------------------------------------------
// Short-cycle ball-bounding diagnostic (homological proxy for local
// connectivity): for each simple cycle of length <= N in G, test whether its
// chain bounds inside the Rips complex at scale q of the M-ball around the
// cycle. Homology only; labeled as a proxy, never a homotopy certificate.
// ---------------------------------------------------------------------------

struct BallBoundingReport {
    long cycles_checked = 0;
    long cycles_bounding = 0;
    bool budget_exceeded = false;
};

inline BallBoundingReport ball_bounding_report(const UnlabeledGraph& g, int q, int cycle_len_cap,
                                               int ball_radius, long step_budget = 1'000'000) {
    BallBoundingReport report;
    const int n = g.vertex_count();
    if (cycle_len_cap < 3 || n == 0) return report;

    // Enumerate simple cycles the same way cycle_span_dim does, but retain them.
    std::vector<std::vector<int>> cycles;
    {
        const auto adjacency = g.adjacency();
        std::vector<char> on_path(static_cast<std::size_t>(n), 0);
        std::vector<int> path;
        long steps = 0;
        auto dfs = [&](auto&& self, int s, int v) -> bool {
            if (++steps > step_budget) return false;
            for (int w : adjacency[static_cast<std::size_t>(v)]) {
                if (w == s && path.size() >= 3 && path[1] < path.back())
                    cycles.push_back(path);
                if (w <= s || on_path[static_cast<std::size_t>(w)]) continue;
                if (static_cast<int>(path.size()) >= cycle_len_cap) continue;
                on_path[static_cast<std::size_t>(w)] = 1;
                path.push_back(w);
                if (!self(self, s, w)) return false;
                path.pop_back();
                on_path[static_cast<std::size_t>(w)] = 0;
            }
            return true;
        };
        for (int s = 0; s < n; ++s) {
            path.assign(1, s);
            on_path.assign(on_path.size(), 0);
            on_path[static_cast<std::size_t>(s)] = 1;
            if (!dfs(dfs, s, s)) {
                report.budget_exceeded = true;
                break;
            }
        }
    }

    for (const auto& cycle : cycles) {
        ++report.cycles_checked;
        // Vertices within ball_radius of some cycle vertex.
        std::vector<char> in_ball(static_cast<std::size_t>(n), 0);
        for (int v : cycle) {
            const auto dist = g.distances_from(v);
            for (int w = 0; w < n; ++w)
                if (dist[static_cast<std::size_t>(w)] >= 0 &&
                    dist[static_cast<std::size_t>(w)] <= ball_radius)
                    in_ball[static_cast<std::size_t>(w)] = 1;
        }
        std::vector<int> relabel(static_cast<std::size_t>(n), -1);
        int kept = 0;
        for (int v = 0; v < n; ++v)
            if (in_ball[static_cast<std::size_t>(v)]) relabel[static_cast<std::size_t>(v)] = kept++;
        std::vector<std::pair<int, int>> edges;
        for (const auto& [u, v] : g.edges())
            if (relabel[static_cast<std::size_t>(u)] >= 0 && relabel[static_cast<std::size_t>(v)] >= 0)
                edges.emplace_back(relabel[static_cast<std::size_t>(u)],
                                   relabel[static_cast<std::size_t>(v)]);
        const UnlabeledGraph ball(kept, edges);
        const FiniteComplex rips = rips_complex(ball, q, 2);

        // Chain of the cycle inside the ball complex.
        const auto d2 = boundary_matrix(rips, 2);
        std::vector<Int> chain(static_cast<std::size_t>(rips.cell_count(1)), Int(0));
        bool representable = true;
        for (std::size_t j = 0; j < cycle.size() && representable; ++j) {
            const int a = relabel[static_cast<std::size_t>(cycle[j])];
            const int b = relabel[static_cast<std::size_t>(cycle[(j + 1) % cycle.size()])];
            const long e = rips.cell_index(1, {std::min(a, b), std::max(a, b)});
            if (e < 0)
                representable = false;
            else
                chain[static_cast<std::size_t>(e)] = Int(a < b ? 1 : -1);
        }
        if (!representable) continue;
        // Bounds iff appending the chain to the boundary column space keeps the rank.
        IncrementalRank rank(static_cast<int>(chain.size()), Field::Q());
        std::vector<Int> dense_col(chain.size());
        for (const auto& col : d2.cols) {
            std::fill(dense_col.begin(), dense_col.end(), Int(0));
            for (const auto& [r, val] : col) dense_col[static_cast<std::size_t>(r)] = val;
            rank.add(dense_col);
        }
        if (!rank.add(chain)) ++report.cycles_bounding;
    }
    return report;
}

}  // namespace graphlim
