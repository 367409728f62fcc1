#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "graphlim/rational.hpp"

namespace graphlim {

// ---------------------------------------------------------------------------
// Dense exact matrices. Rows of rationals (or integers); sizes here are the
// small fiber/corpus matrices — the big boundary matrices go through the
// sparse column reduction further down.
// ---------------------------------------------------------------------------

using QMatrix = std::vector<std::vector<Rat>>;
using IntMatrix = std::vector<std::vector<Int>>;

inline QMatrix to_rational(const IntMatrix& m) {
    QMatrix out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        out[i].reserve(m[i].size());
        for (const auto& v : m[i]) out[i].emplace_back(v);
    }
    return out;
}

// Destructive Gaussian elimination; returns the rank.
inline int rank_q_inplace(QMatrix& a) {
    if (a.empty()) return 0;
    const std::size_t rows = a.size(), cols = a[0].size();
    int rank = 0;
    for (std::size_t col = 0; col < cols && static_cast<std::size_t>(rank) < rows; ++col) {
        std::size_t pivot = rows;
        for (std::size_t r = static_cast<std::size_t>(rank); r < rows; ++r) {
            if (a[r][col] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot == rows) continue;
        std::swap(a[static_cast<std::size_t>(rank)], a[pivot]);
        const Rat inv = a[static_cast<std::size_t>(rank)][col];
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == static_cast<std::size_t>(rank) || a[r][col] == 0) continue;
            const Rat factor = a[r][col] / inv;
            for (std::size_t c = col; c < cols; ++c)
                a[r][c] -= factor * a[static_cast<std::size_t>(rank)][c];
        }
        ++rank;
    }
    return rank;
}

inline int rank_q(QMatrix a) { return rank_q_inplace(a); }

inline int rank_q(const IntMatrix& a) {
    QMatrix q = to_rational(a);
    return rank_q_inplace(q);
}

// Basis of the right kernel {x : a·x = 0}, one column vector per basis
// element, via reduced row echelon form.
inline std::vector<std::vector<Rat>> kernel_basis_q(QMatrix a) {
    if (a.empty()) return {};
    const std::size_t rows = a.size(), cols = a[0].size();
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rows;
        for (std::size_t r = rank; r < rows; ++r) {
            if (a[r][col] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot == rows) continue;
        std::swap(a[rank], a[pivot]);
        const Rat inv = a[rank][col];
        for (std::size_t c = col; c < cols; ++c) a[rank][c] /= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || a[r][col] == 0) continue;
            const Rat factor = a[r][col];
            for (std::size_t c = col; c < cols; ++c) a[r][c] -= factor * a[rank][c];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<Rat>> basis;
    for (std::size_t free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<Rat> vec(cols, Rat(0));
        vec[free_col] = 1;
        for (std::size_t r = 0; r < pivot_col.size(); ++r) vec[pivot_col[r]] = -a[r][free_col];
        basis.push_back(std::move(vec));
    }
    return basis;
}

// ---------------------------------------------------------------------------
// Dense rank over the prime field F_p (p an odd 31-bit prime or 2).
// ---------------------------------------------------------------------------

inline bool is_prime_u64(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
    // Fermat: p is prime, a != 0 mod p.
    std::uint64_t result = 1, base = a % p, e = p - 2;
    while (e) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return result;
}

inline int rank_fp_inplace(std::vector<std::vector<std::uint64_t>>& a, std::uint64_t p) {
    if (a.empty()) return 0;
    const std::size_t rows = a.size(), cols = a[0].size();
    int rank = 0;
    for (std::size_t col = 0; col < cols && static_cast<std::size_t>(rank) < rows; ++col) {
        std::size_t pivot = rows;
        for (std::size_t r = static_cast<std::size_t>(rank); r < rows; ++r) {
            if (a[r][col] % p != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot == rows) continue;
        std::swap(a[static_cast<std::size_t>(rank)], a[pivot]);
        const std::uint64_t inv = inv_mod(a[static_cast<std::size_t>(rank)][col] % p, p);
        for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < rows; ++r) {
            const std::uint64_t factor = a[r][col] % p * inv % p;
            if (factor == 0) continue;
            for (std::size_t c = col; c < cols; ++c) {
                a[r][c] = (a[r][c] + (p - factor) * (a[static_cast<std::size_t>(rank)][c] % p)) % p;
            }
        }
        ++rank;
    }
    return rank;
}

inline std::uint64_t mod_of(const Int& v, std::uint64_t p) {
    Int r = v % static_cast<long>(p);
    if (r < 0) r += static_cast<long>(p);
    return r.get_ui();
}

inline int rank_fp(const IntMatrix& m, std::uint64_t p) {
    std::vector<std::vector<std::uint64_t>> a(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        a[i].reserve(m[i].size());
        for (const auto& v : m[i]) a[i].push_back(mod_of(v, p));
    }
    return rank_fp_inplace(a, p);
}

// ---------------------------------------------------------------------------
// Sparse integer columns with exact column reduction (the workhorse for
// boundary matrices: entries stay integral, each column is kept primitive).
// ---------------------------------------------------------------------------

struct SparseIntColumns {
    int rows = 0;
    // Each column: (row index, value) sorted by row, values nonzero.
    std::vector<std::vector<std::pair<int, Int>>> cols;
};

namespace detail {

inline void make_primitive(std::vector<std::pair<int, Int>>& col) {
    if (col.empty()) return;
    Int g = 0;
    for (const auto& [row, v] : col) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1) return;
    }
    if (g <= 1) return;
    for (auto& [row, v] : col) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

// col := a*col + b*other, sparse merge by row.
inline std::vector<std::pair<int, Int>> linear_combine(const std::vector<std::pair<int, Int>>& col,
                                                       const Int& a,
                                                       const std::vector<std::pair<int, Int>>& other,
                                                       const Int& b) {
    std::vector<std::pair<int, Int>> out;
    out.reserve(col.size() + other.size());
    std::size_t i = 0, j = 0;
    while (i < col.size() || j < other.size()) {
        if (j >= other.size() || (i < col.size() && col[i].first < other[j].first)) {
            Int v = a * col[i].second;
            if (v != 0) out.emplace_back(col[i].first, std::move(v));
            ++i;
        } else if (i >= col.size() || other[j].first < col[i].first) {
            Int v = b * other[j].second;
            if (v != 0) out.emplace_back(other[j].first, std::move(v));
            ++j;
        } else {
            Int v = a * col[i].second + b * other[j].second;
            if (v != 0) out.emplace_back(col[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace detail

// Rank over Q via column reduction against the highest nonzero row of each
// column; integer-exact (cross-multiplication + primitive-part reduction).
inline int rank_sparse_q(SparseIntColumns m) {
    std::vector<int> owner_of_low(static_cast<std::size_t>(m.rows), -1);
    int rank = 0;
    for (std::size_t c = 0; c < m.cols.size(); ++c) {
        auto& col = m.cols[c];
        detail::make_primitive(col);
        while (!col.empty()) {
            const int low = col.back().first;
            const int owner = owner_of_low[static_cast<std::size_t>(low)];
            if (owner < 0) {
                owner_of_low[static_cast<std::size_t>(low)] = static_cast<int>(c);
                ++rank;
                break;
            }
            const auto& pivot_col = m.cols[static_cast<std::size_t>(owner)];
            const Int a = pivot_col.back().second;
            const Int b = -col.back().second;
            col = detail::linear_combine(col, a, pivot_col, b);
            detail::make_primitive(col);
        }
    }
    return rank;
}

// Same reduction over F_p.
inline int rank_sparse_fp(const SparseIntColumns& m, std::uint64_t p) {
    std::vector<int> owner_of_low(static_cast<std::size_t>(m.rows), -1);
    std::vector<std::vector<std::pair<int, std::uint64_t>>> cols(m.cols.size());
    for (std::size_t c = 0; c < m.cols.size(); ++c) {
        for (const auto& [row, v] : m.cols[c]) {
            std::uint64_t mv = mod_of(v, p);
            if (mv != 0) cols[c].emplace_back(row, mv);
        }
    }
    int rank = 0;
    for (std::size_t c = 0; c < cols.size(); ++c) {
        auto& col = cols[c];
        while (!col.empty()) {
            const int low = col.back().first;
            const int owner = owner_of_low[static_cast<std::size_t>(low)];
            if (owner < 0) {
                owner_of_low[static_cast<std::size_t>(low)] = static_cast<int>(c);
                ++rank;
                break;
            }
            const auto& pivot_col = cols[static_cast<std::size_t>(owner)];
            // col -= (col_low / pivot_low) * pivot_col
            const std::uint64_t factor =
                col.back().second * inv_mod(pivot_col.back().second, p) % p;
            std::vector<std::pair<int, std::uint64_t>> merged;
            merged.reserve(col.size() + pivot_col.size());
            std::size_t i = 0, j = 0;
            while (i < col.size() || j < pivot_col.size()) {
                if (j >= pivot_col.size() ||
                    (i < col.size() && col[i].first < pivot_col[j].first)) {
                    merged.push_back(col[i++]);
                } else if (i >= col.size() || pivot_col[j].first < col[i].first) {
                    std::uint64_t v = (p - factor) * pivot_col[j].second % p;
                    if (v != 0) merged.emplace_back(pivot_col[j].first, v);
                    ++j;
                } else {
                    std::uint64_t v = (col[i].second + (p - factor) * pivot_col[j].second) % p;
                    if (v != 0) merged.emplace_back(col[i].first, v);
                    ++i;
                    ++j;
                }
            }
            col = std::move(merged);
        }
    }
    return rank;
}

// ---------------------------------------------------------------------------
// Exact characteristic polynomial (monic, integer coefficients) by the
// Faddeev–LeVerrier recurrence; the trace divisions are exact over Z.
// Returns [1, c_1, ..., c_k] for λ^k + c_1 λ^{k-1} + ... + c_k.
// ---------------------------------------------------------------------------

inline std::vector<Int> charpoly(const IntMatrix& a, int size_cap = 60) {
    const int k = static_cast<int>(a.size());
    if (k > size_cap)
        throw std::invalid_argument("characteristic polynomial size cap exceeded (" +
                                    std::to_string(k) + " > " + std::to_string(size_cap) + ")");
    std::vector<Int> coeffs(static_cast<std::size_t>(k) + 1);
    coeffs[0] = 1;
    if (k == 0) return coeffs;
    IntMatrix b = a;
    for (int m = 1; m <= k; ++m) {
        if (m > 1) {
            // b := a * (b + c_{m-1} I)
            IntMatrix shifted = b;
            for (int i = 0; i < k; ++i)
                shifted[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] +=
                    coeffs[static_cast<std::size_t>(m - 1)];
            IntMatrix next(static_cast<std::size_t>(k),
                           std::vector<Int>(static_cast<std::size_t>(k), Int(0)));
            for (int i = 0; i < k; ++i)
                for (int l = 0; l < k; ++l) {
                    const Int& alv = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)];
                    if (alv == 0) continue;
                    for (int j = 0; j < k; ++j)
                        next[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
                            alv * shifted[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)];
                }
            b = std::move(next);
        }
        Int trace = 0;
        for (int i = 0; i < k; ++i)
            trace += b[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
        Int q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), trace.get_mpz_t(), Int(m).get_mpz_t());
        if (r != 0) throw std::logic_error("characteristic polynomial trace division not exact");
        coeffs[static_cast<std::size_t>(m)] = -q;
    }
    return coeffs;
}

}  // namespace graphlim
