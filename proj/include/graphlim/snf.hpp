#pragma once

#include <cstdlib>
#include <vector>

#include "graphlim/exact_linalg.hpp"
#include "graphlim/rational.hpp"

namespace graphlim {

// Smith normal form over Z. Returns the nonzero invariant factors
// d_1 | d_2 | ... (positive, in divisibility order); their count is the
// rank, the factors > 1 are the torsion coefficients of coker.
inline std::vector<Int> smith_invariant_factors(IntMatrix a) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows ? static_cast<int>(a[0].size()) : 0;
    std::vector<Int> factors;
    auto at = [&](int i, int j) -> Int& {
        return a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    };
    for (int t = 0; t < std::min(rows, cols); ++t) {
        // Pivot: smallest nonzero |entry| in the trailing submatrix.
        int pi = -1, pj = -1;
        Int best = 0;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j) {
                if (at(i, j) == 0) continue;
                Int mag = abs(at(i, j));
                if (pi < 0 || mag < best) {
                    best = mag;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;
        std::swap(a[static_cast<std::size_t>(t)], a[static_cast<std::size_t>(pi)]);
        for (int i = 0; i < rows; ++i) std::swap(at(i, t), at(i, pj));

        bool settled = false;
        while (!settled) {
            settled = true;
            // Clear the pivot column with row operations.
            for (int i = t + 1; i < rows; ++i) {
                if (at(i, t) == 0) continue;
                Int q, r;
                mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), at(i, t).get_mpz_t(),
                            at(t, t).get_mpz_t());
                for (int j = t; j < cols; ++j) at(i, j) -= q * at(t, j);
                if (at(i, t) != 0) {
                    // Remainder is smaller than the pivot: promote it.
                    std::swap(a[static_cast<std::size_t>(t)], a[static_cast<std::size_t>(i)]);
                    settled = false;
                }
            }
            if (!settled) continue;
            // Clear the pivot row with column operations.
            for (int j = t + 1; j < cols; ++j) {
                if (at(t, j) == 0) continue;
                Int q, r;
                mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), at(t, j).get_mpz_t(),
                            at(t, t).get_mpz_t());
                for (int i = t; i < rows; ++i) at(i, j) -= q * at(i, t);
                if (at(t, j) != 0) {
                    for (int i = 0; i < rows; ++i) std::swap(at(i, t), at(i, j));
                    settled = false;
                }
            }
            if (!settled) continue;
            // Enforce divisibility: pivot must divide the trailing block.
            for (int i = t + 1; i < rows && settled; ++i)
                for (int j = t + 1; j < cols && settled; ++j) {
                    if (at(i, j) % at(t, t) == 0) continue;
                    for (int c = t; c < cols; ++c) at(t, c) += at(i, c);
                    settled = false;
                }
        }
        if (at(t, t) < 0)
            for (int j = t; j < cols; ++j) at(t, j) = -at(t, j);
        factors.push_back(at(t, t));
    }
    return factors;
}

struct AbelianQuotient {
    int free_rank = 0;             // rank of the free part of coker
    std::vector<Int> torsion;      // invariant factors > 1, divisibility order
    int minimal_generators() const { return free_rank + static_cast<int>(torsion.size()); }
};

// Structure of Z^ambient_rank / row_span(relations).
inline AbelianQuotient abelian_quotient(const IntMatrix& relations, int ambient_rank) {
    AbelianQuotient out;
    std::vector<Int> factors = smith_invariant_factors(relations);
    out.free_rank = ambient_rank - static_cast<int>(factors.size());
    for (const auto& f : factors)
        if (f > 1) out.torsion.push_back(f);
    return out;
}

}  // namespace graphlim
