#pragma once

// Independent reference implementations ("oracles") used by the test suites.
// Each oracle favors the most direct exhaustive method available —
// Floyd–Warshall instead of per-source search, explicit subset and word
// enumeration, quotient bases spelled out column by column — so that an
// agreement with the library is evidence, not an echo.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "graphlim/complex.hpp"
#include "graphlim/exact_linalg.hpp"
#include "graphlim/graphing.hpp"
#include "graphlim/homology.hpp"
#include "graphlim/partial_bijection.hpp"
#include "graphlim/rational.hpp"
#include "graphlim/spectral.hpp"
#include "graphlim/unlabeled_graph.hpp"

namespace oracle {

constexpr int kUnreachable = 1 << 29;

// All-pairs shortest paths by Floyd–Warshall.
inline std::vector<std::vector<int>> fw_distances(int n,
                                                  const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<int>> d(static_cast<std::size_t>(n),
                                    std::vector<int>(static_cast<std::size_t>(n), kUnreachable));
    for (int v = 0; v < n; ++v) d[static_cast<std::size_t>(v)][static_cast<std::size_t>(v)] = 0;
    for (auto [u, v] : edges) {
        d[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = 1;
        d[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = 1;
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::min(
                    d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                    d[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] +
                        d[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]);
    return d;
}

inline std::vector<std::vector<int>> fw_distances(const graphlim::UnlabeledGraph& g) {
    return fw_distances(g.vertex_count(), g.edges());
}

// ---------------------------------------------------------------------------
// Exhaustive minimum-cost Lipschitz edge set.
// ---------------------------------------------------------------------------

struct LipOracleResult {
    bool feasible = false;
    graphlim::Rat cost;
    int edge_count = 0;
};

namespace detail {

inline bool fw_feasible(int n, const std::vector<std::pair<int, int>>& kept,
                        const std::vector<std::pair<int, int>>& g_edges, int L) {
    const auto d = fw_distances(n, kept);
    for (auto [u, v] : g_edges)
        if (d[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] > L) return false;
    return true;
}

}  // namespace detail

// Minimum |E'|/n over edge sets E' of pairs at G-distance in [1, L] such that
// every G-edge has E'-distance at most L.  Pure subset enumeration in
// ascending size, with one reduction: an edge whose removal from the full
// candidate set already breaks feasibility must be in every feasible subset
// (feasibility is monotone under adding edges), so it is committed up front.
inline LipOracleResult lip_cost_subsets(const graphlim::UnlabeledGraph& g, int L) {
    const int n = g.vertex_count();
    if (n > 16) throw std::invalid_argument("lip_cost_subsets: oracle capped at 16 vertices");
    if (L == 0) {
        if (g.edge_count() > 0) return {};
        return {true, graphlim::Rat(0), 0};
    }
    const auto dist = fw_distances(g);
    std::vector<std::pair<int, int>> candidates;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            const int d = dist[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
            if (d >= 1 && d <= L) candidates.emplace_back(u, v);
        }
    if (!detail::fw_feasible(n, candidates, g.edges(), L)) return {};

    std::vector<std::pair<int, int>> forced;
    std::vector<std::pair<int, int>> open;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        auto rest = candidates;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
        (detail::fw_feasible(n, rest, g.edges(), L) ? open : forced).push_back(candidates[i]);
    }

    const int k = static_cast<int>(open.size());
    if (k > 30) throw std::invalid_argument("lip_cost_subsets: too many free candidates");
    std::vector<std::pair<int, int>> kept;
    for (int s = 0; s <= k; ++s) {
        // All s-subsets of `open` via Gosper's hack.
        std::uint64_t mask = (s == 0) ? 0 : (std::uint64_t{1} << s) - 1;
        const std::uint64_t limit = std::uint64_t{1} << k;
        while (true) {
            kept = forced;
            for (int b = 0; b < k; ++b)
                if (mask >> b & 1) kept.push_back(open[static_cast<std::size_t>(b)]);
            if (detail::fw_feasible(n, kept, g.edges(), L)) {
                const int total = static_cast<int>(kept.size());
                return {true, graphlim::rat(total, n), total};
            }
            if (s == 0) break;
            const std::uint64_t c = mask & (~mask + 1);
            const std::uint64_t r = mask + c;
            mask = (((r ^ mask) >> 2) / c) | r;
            if (mask >= limit) break;
        }
    }
    throw std::logic_error("lip_cost_subsets: full candidate set was feasible but search failed");
}

// ---------------------------------------------------------------------------
// Exhaustive minimum part count for fix/free decompositions.
// ---------------------------------------------------------------------------

// Smallest number of groups the non-fixed pairs of f admit such that within
// each group the source set and target set are disjoint.  Backtracking over
// group assignments; intended for bisections with at most ~10 free pairs.
inline int min_free_parts(const graphlim::PartialBijection& f) {
    std::vector<std::pair<int, int>> free_pairs;
    for (auto [x, y] : f.pairs())
        if (x != y) free_pairs.push_back({x, y});
    if (free_pairs.empty()) return 0;
    const int p = static_cast<int>(free_pairs.size());

    for (int parts = 1; parts <= p; ++parts) {
        std::vector<std::set<int>> sources(static_cast<std::size_t>(parts));
        std::vector<std::set<int>> targets(static_cast<std::size_t>(parts));
        auto assign = [&](auto&& self, int idx) -> bool {
            if (idx == p) return true;
            auto [x, y] = free_pairs[static_cast<std::size_t>(idx)];
            for (int part = 0; part < parts; ++part) {
                auto& s = sources[static_cast<std::size_t>(part)];
                auto& t = targets[static_cast<std::size_t>(part)];
                if (t.count(x) || s.count(y)) continue;  // would make s ∩ t nonempty
                const bool new_x = s.insert(x).second;
                const bool new_y = t.insert(y).second;
                if (self(self, idx + 1)) return true;
                if (new_x) s.erase(x);
                if (new_y) t.erase(y);
            }
            return false;
        };
        if (assign(assign, 0)) return parts;
    }
    return p;
}

// ---------------------------------------------------------------------------
// Brute-force indexed word length.
// ---------------------------------------------------------------------------

namespace detail {

struct StepTables {
    // forward[i][x] / backward[i][x]: image of x under generator i (resp. its
    // inverse), or -1 outside the domain.
    std::vector<std::vector<int>> forward, backward;
};

inline StepTables step_tables(const graphlim::Graphing& g) {
    StepTables t;
    const int n = g.base().n;
    for (const auto& b : g.bisections()) {
        std::vector<int> fwd(static_cast<std::size_t>(n), -1);
        std::vector<int> bwd(static_cast<std::size_t>(n), -1);
        for (auto [x, y] : b.pairs()) {
            fwd[static_cast<std::size_t>(x)] = y;
            bwd[static_cast<std::size_t>(y)] = x;
        }
        t.forward.push_back(std::move(fwd));
        t.backward.push_back(std::move(bwd));
    }
    return t;
}

inline bool reaches(const StepTables& t, int gen_limit, int from, int to, int budget) {
    if (from == to) return true;
    if (budget == 0) return false;
    for (int i = 0; i < gen_limit; ++i) {
        const int f = t.forward[static_cast<std::size_t>(i)][static_cast<std::size_t>(from)];
        if (f >= 0 && reaches(t, gen_limit, f, to, budget - 1)) return true;
        const int b = t.backward[static_cast<std::size_t>(i)][static_cast<std::size_t>(from)];
        if (b >= 0 && reaches(t, gen_limit, b, to, budget - 1)) return true;
    }
    return false;
}

}  // namespace detail

// Indexed word length by explicit word enumeration: the least k such that
// some word of length at most k over the first min(k, m) generators (and
// inverses) maps x to y; values beyond m fall back to plain distance over
// all m generators.
inline std::optional<int> word_length_bruteforce(const graphlim::Graphing& g, int x, int y,
                                                 int k_max) {
    if (x == y) return 0;
    const auto tables = detail::step_tables(g);
    const int m = g.generator_count();
    for (int k = 1; k <= k_max; ++k)
        if (detail::reaches(tables, std::min(k, m), x, y, k)) return k;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Image rank of H_i(sub) -> H_i(super) via explicit quotient bases.
// ---------------------------------------------------------------------------

namespace detail {

// Dense column-major copy of a sparse boundary matrix, reduced into the field.
inline std::vector<std::vector<graphlim::Rat>> dense_columns_q(
    const graphlim::SparseIntColumns& m) {
    std::vector<std::vector<graphlim::Rat>> cols;
    for (const auto& col : m.cols) {
        std::vector<graphlim::Rat> dense(static_cast<std::size_t>(m.rows));
        for (auto [row, value] : col) dense[static_cast<std::size_t>(row)] = graphlim::Rat(value);
        cols.push_back(std::move(dense));
    }
    return cols;
}

inline int rank_of_rows_q(std::vector<std::vector<graphlim::Rat>> rows) {
    if (rows.empty()) return 0;
    return graphlim::rank_q_inplace(rows);
}

inline int rank_of_rows_fp(const std::vector<std::vector<graphlim::Rat>>& rows,
                           std::uint64_t p) {
    graphlim::IntMatrix ints;
    for (const auto& row : rows) {
        std::vector<graphlim::Int> r;
        for (const auto& value : row) {
            if (value.get_den() != 1)
                throw std::invalid_argument("rank_of_rows_fp: non-integer entry");
            r.push_back(value.get_num());
        }
        ints.push_back(std::move(r));
    }
    if (ints.empty()) return 0;
    return graphlim::rank_fp(ints, p);
}

inline int rank_of_rows(std::vector<std::vector<graphlim::Rat>> rows,
                        const graphlim::Field& field) {
    return field.rational ? rank_of_rows_q(std::move(rows)) : rank_of_rows_fp(rows, field.p);
}

// Kernel basis of a dense matrix over F_p (rows of the returned matrix are
// basis vectors), by Gauss-Jordan elimination.
inline std::vector<std::vector<graphlim::Rat>> kernel_basis_fp(
    std::vector<std::vector<std::uint64_t>> a, int cols, std::uint64_t p) {
    const int rows = static_cast<int>(a.size());
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pivot = -1;
        for (int i = r; i < rows; ++i)
            if (a[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        std::swap(a[static_cast<std::size_t>(pivot)], a[static_cast<std::size_t>(r)]);
        const std::uint64_t inv =
            graphlim::inv_mod(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)], p);
        for (int j = 0; j < cols; ++j)
            a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] =
                a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] % p * inv % p;
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            const std::uint64_t factor =
                a[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
            if (factor == 0) continue;
            for (int j = 0; j < cols; ++j) {
                auto& entry = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                entry = (entry + (p - factor) * a[static_cast<std::size_t>(r)]
                                                 [static_cast<std::size_t>(j)]) %
                        p;
            }
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<std::vector<graphlim::Rat>> basis;
    std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
    for (int c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[static_cast<std::size_t>(c)]) continue;
        std::vector<graphlim::Rat> vec(static_cast<std::size_t>(cols));
        vec[static_cast<std::size_t>(c)] = graphlim::Rat(1);
        for (int i = 0; i < r; ++i) {
            const std::uint64_t coeff =
                a[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
            if (coeff != 0)
                vec[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(i)])] =
                    graphlim::Rat(static_cast<long>(p - coeff));
        }
        basis.push_back(std::move(vec));
    }
    return basis;
}

// Cycle-space basis of ∂_i as row vectors over the field (entries are
// integers when the field is F_p, taken mod p downstream).
inline std::vector<std::vector<graphlim::Rat>> cycle_basis(const graphlim::FiniteComplex& k,
                                                           int i, const graphlim::Field& field) {
    const long cells = k.cell_count(i);
    if (i == 0) {
        // ∂_0 = 0: every 0-chain is a cycle.
        std::vector<std::vector<graphlim::Rat>> basis;
        for (long c = 0; c < cells; ++c) {
            std::vector<graphlim::Rat> vec(static_cast<std::size_t>(cells));
            vec[static_cast<std::size_t>(c)] = graphlim::Rat(1);
            basis.push_back(std::move(vec));
        }
        return basis;
    }
    const auto sparse = graphlim::boundary_matrix(k, i);
    if (field.rational) {
        graphlim::QMatrix dense(static_cast<std::size_t>(sparse.rows),
                                std::vector<graphlim::Rat>(static_cast<std::size_t>(cells)));
        for (std::size_t c = 0; c < sparse.cols.size(); ++c)
            for (auto [row, value] : sparse.cols[c])
                dense[static_cast<std::size_t>(row)][c] = graphlim::Rat(value);
        return graphlim::kernel_basis_q(std::move(dense));
    }
    std::vector<std::vector<std::uint64_t>> dense(
        static_cast<std::size_t>(sparse.rows),
        std::vector<std::uint64_t>(static_cast<std::size_t>(cells), 0));
    for (std::size_t c = 0; c < sparse.cols.size(); ++c)
        for (auto [row, value] : sparse.cols[c])
            dense[static_cast<std::size_t>(row)][c] = graphlim::mod_of(value, field.p);
    return kernel_basis_fp(std::move(dense), static_cast<int>(cells), field.p);
}

}  // namespace detail

// dim of the image of H_i(sub) -> H_i(super) for a subcomplex inclusion,
// computed from first principles: take a basis Z of the full cycle space of
// ∂_i(sub), push each vector into the chain coordinates of `super`, and
// measure how much Z adds to the boundary space B' = im ∂_{i+1}(super):
//     image dim = rank([B' | Z]) − rank(B').
// (The classes of Z span the image, and quotienting by B' ⊇ B absorbs the
// relation already present in H_i(sub).)
inline int image_rank_quotient(const graphlim::FiniteComplex& sub,
                               const graphlim::FiniteComplex& super, int i,
                               const graphlim::Field& field = graphlim::Field::Q()) {
    if (!sub.subcomplex_of(super)) throw std::invalid_argument("not a subcomplex");
    const long super_cells = super.cell_count(i);

    std::vector<std::vector<graphlim::Rat>> stacked;
    const auto up = graphlim::boundary_matrix(super, i + 1);
    for (const auto& col : up.cols) {
        std::vector<graphlim::Rat> dense(static_cast<std::size_t>(super_cells));
        for (auto [row, value] : col) dense[static_cast<std::size_t>(row)] = graphlim::Rat(value);
        stacked.push_back(std::move(dense));
    }
    const int rank_boundaries = detail::rank_of_rows(stacked, field);

    for (const auto& cycle : detail::cycle_basis(sub, i, field)) {
        std::vector<graphlim::Rat> embedded(static_cast<std::size_t>(super_cells));
        for (long c = 0; c < sub.cell_count(i); ++c) {
            const auto& value = cycle[static_cast<std::size_t>(c)];
            if (value == 0) continue;
            const long target = super.cell_index(i, sub.cells(i)[static_cast<std::size_t>(c)]);
            embedded[static_cast<std::size_t>(target)] = value;
        }
        stacked.push_back(std::move(embedded));
    }
    return detail::rank_of_rows(std::move(stacked), field) - rank_boundaries;
}

// ---------------------------------------------------------------------------
// Vietoris–Rips complex by subset enumeration.
// ---------------------------------------------------------------------------

// Every vertex subset of size <= dmax+1 whose pairwise distances are all
// <= q (so in particular finite) spans a cell.
inline graphlim::FiniteComplex rips_subsets(const graphlim::UnlabeledGraph& g, int q, int dmax) {
    const int n = g.vertex_count();
    if (n > 16) throw std::invalid_argument("rips_subsets: oracle capped at 16 vertices");
    const auto dist = fw_distances(g);
    std::vector<std::vector<graphlim::Cell>> cells(static_cast<std::size_t>(dmax) + 1);
    graphlim::Cell current;
    auto extend = [&](auto&& self, int next) -> void {
        if (!current.empty())
            cells[current.size() - 1].push_back(current);
        if (static_cast<int>(current.size()) == dmax + 1) return;
        for (int v = next; v < n; ++v) {
            bool close = true;
            for (int u : current)
                if (dist[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] > q) {
                    close = false;
                    break;
                }
            if (!close) continue;
            current.push_back(v);
            self(self, v + 1);
            current.pop_back();
        }
    };
    extend(extend, 0);
    return graphlim::FiniteComplex(std::move(cells));
}

// ---------------------------------------------------------------------------
// Floating-point eigenvalues via Eigen (test-only dependency).
// ---------------------------------------------------------------------------

inline std::vector<double> eigen_eigenvalues(const graphlim::IntSymMatrix& x) {
    const int k = x.size();
    Eigen::MatrixXd m(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) m(i, j) = x.at(i, j).get_d();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    std::vector<double> out(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) out[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    return out;
}

}  // namespace oracle
