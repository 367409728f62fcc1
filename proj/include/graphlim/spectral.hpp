#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
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

// Integer symmetric matrix: the finite Laplace-type operators whose spectral
// data the approximation bounds control.
class IntSymMatrix {
  public:
    IntSymMatrix() = default;

    explicit IntSymMatrix(IntMatrix entries) : entries_(std::move(entries)) {
        const std::size_t k = entries_.size();
        for (const auto& row : entries_)
            if (row.size() != k) throw std::invalid_argument("matrix must be square");
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j)
                if (entries_[i][j] != entries_[j][i])
                    throw std::invalid_argument("matrix must be symmetric");
    }

    int size() const { return static_cast<int>(entries_.size()); }
    const IntMatrix& entries() const { return entries_; }
    const Int& at(int i, int j) const {
        return entries_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }

    Int trace_of_square() const {
        Int total(0);
        for (const auto& row : entries_)
            for (const auto& v : row) total += v * v;
        return total;
    }

  private:
    IntMatrix entries_;
};

inline IntSymMatrix graph_laplacian(const UnlabeledGraph& g) {
    const std::size_t n = static_cast<std::size_t>(g.vertex_count());
    IntMatrix m(n, std::vector<Int>(n, Int(0)));
    for (const auto& [u, v] : g.edges()) {
        m[static_cast<std::size_t>(u)][static_cast<std::size_t>(u)] += 1;
        m[static_cast<std::size_t>(v)][static_cast<std::size_t>(v)] += 1;
        m[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] -= 1;
        m[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] -= 1;
    }
    return IntSymMatrix(std::move(m));
}

// Combinatorial i-Laplacian d_i^T d_i + d_{i+1} d_{i+1}^T of a complex.
inline IntSymMatrix complex_laplacian(const FiniteComplex& k, int i) {
    const std::size_t n = static_cast<std::size_t>(k.cell_count(i));
    IntMatrix m(n, std::vector<Int>(n, Int(0)));
    if (i >= 1) {
        const auto d = boundary_matrix(k, i);
        for (std::size_t a = 0; a < d.cols.size(); ++a)
            for (std::size_t b = a; b < d.cols.size(); ++b) {
                Int dot(0);
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
                m[a][b] += dot;
                if (a != b) m[b][a] += dot;
            }
    }
    const auto d_up = boundary_matrix(k, i + 1);
    for (const auto& col : d_up.cols)
        for (const auto& [r1, v1] : col)
            for (const auto& [r2, v2] : col)
                m[static_cast<std::size_t>(r1)][static_cast<std::size_t>(r2)] += v1 * v2;
    return IntSymMatrix(std::move(m));
}

// Matrix file: first line k, then k rows of k integers.
inline void write_matrix(std::ostream& os, const IntSymMatrix& x) {
    os << x.size() << '\n';
    for (int i = 0; i < x.size(); ++i) {
        for (int j = 0; j < x.size(); ++j) os << (j ? " " : "") << x.at(i, j).get_str();
        os << '\n';
    }
}

inline IntSymMatrix read_matrix(std::istream& is) {
    long k = -1;
    if (!(is >> k) || k < 0) throw std::invalid_argument("matrix file: expected size line");
    IntMatrix m(static_cast<std::size_t>(k), std::vector<Int>(static_cast<std::size_t>(k)));
    for (auto& row : m)
        for (auto& v : row) {
            std::string token;
            if (!(is >> token)) throw std::invalid_argument("matrix file: truncated entries");
            try {
                v = Int(token);
            } catch (const std::invalid_argument&) {
                throw std::invalid_argument("matrix file: bad integer '" + token + "'");
            }
        }
    return IntSymMatrix(std::move(m));
}

inline std::string matrix_to_string(const IntSymMatrix& x) {
    std::ostringstream os;
    write_matrix(os, x);
    return os.str();
}

inline IntSymMatrix matrix_from_string(const std::string& text) {
    std::istringstream is(text);
    return read_matrix(is);
}

// ---------------------------------------------------------------------------
// Exact kernel dimension (rational rank).
// ---------------------------------------------------------------------------

struct KernelDim {
    long dim = 0;
    Rat normalized = Rat(0);  // dim / k
};

inline KernelDim kernel_dim_exact(const IntSymMatrix& x) {
    KernelDim out;
    out.dim = x.size() - rank_q(x.entries());
    out.normalized = x.size() > 0 ? rat(out.dim, x.size()) : Rat(0);
    return out;
}

// ---------------------------------------------------------------------------
// Floating eigenvalues: Householder tridiagonalization + Sturm bisection.
// Approximate by construction; every consumer treats them as such, and the
// atom at zero is always replaced by the exact kernel dimension.
// ---------------------------------------------------------------------------

namespace detail {

// Reduces a symmetric matrix to tridiagonal form (diagonal d, subdiagonal e;
// e[0] unused). Classic Householder similarity chain without eigenvectors.
inline void householder_tridiag(std::vector<std::vector<double>> a, std::vector<double>& d,
                                std::vector<double>& e) {
    const int n = static_cast<int>(a.size());
    d.assign(static_cast<std::size_t>(n), 0.0);
    e.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = n - 1; i >= 1; --i) {
        const int l = i - 1;
        double h = 0.0, scale = 0.0;
        if (l > 0) {
            for (int k = 0; k <= l; ++k)
                scale += std::fabs(a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]);
            if (scale == 0.0) {
                e[static_cast<std::size_t>(i)] =
                    a[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)];
            } else {
                auto& row_i = a[static_cast<std::size_t>(i)];
                for (int k = 0; k <= l; ++k) {
                    row_i[static_cast<std::size_t>(k)] /= scale;
                    h += row_i[static_cast<std::size_t>(k)] * row_i[static_cast<std::size_t>(k)];
                }
                double f = row_i[static_cast<std::size_t>(l)];
                const double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
                e[static_cast<std::size_t>(i)] = scale * g;
                h -= f * g;
                row_i[static_cast<std::size_t>(l)] = f - g;
                f = 0.0;
                for (int j = 0; j <= l; ++j) {
                    double gg = 0.0;
                    for (int k = 0; k <= j; ++k)
                        gg += a[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] *
                              row_i[static_cast<std::size_t>(k)];
                    for (int k = j + 1; k <= l; ++k)
                        gg += a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] *
                              row_i[static_cast<std::size_t>(k)];
                    e[static_cast<std::size_t>(j)] = gg / h;
                    f += e[static_cast<std::size_t>(j)] * row_i[static_cast<std::size_t>(j)];
                }
                const double hh = f / (h + h);
                for (int j = 0; j <= l; ++j) {
                    const double fj = row_i[static_cast<std::size_t>(j)];
                    const double gj = e[static_cast<std::size_t>(j)] - hh * fj;
                    e[static_cast<std::size_t>(j)] = gj;
                    for (int k = 0; k <= j; ++k)
                        a[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] -=
                            fj * e[static_cast<std::size_t>(k)] +
                            gj * row_i[static_cast<std::size_t>(k)];
                }
            }
        } else {
            e[static_cast<std::size_t>(i)] =
                a[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)];
        }
    }
    e[0] = 0.0;
    for (int i = 0; i < n; ++i)
        d[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
}

// Number of eigenvalues of the tridiagonal matrix strictly below x
// (Sturm/LDL^T sign count with a pivot floor).
inline int sturm_count_below(const std::vector<double>& d, const std::vector<double>& e, double x,
                             double pivmin) {
    int count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        q = i == 0 ? d[0] - x : d[i] - x - e[i] * e[i] / q;
        if (std::fabs(q) < pivmin) q = -pivmin;
        if (q < 0.0) ++count;
    }
    return count;
}

}  // namespace detail

// All k eigenvalues in ascending order, each bisected to ~1e-13 of the
// Gershgorin scale. Approximate (floating); kernel questions use exact rank.
inline std::vector<double> approximate_eigenvalues(const IntSymMatrix& x) {
    const int k = x.size();
    if (k == 0) return {};
    std::vector<std::vector<double>> a(static_cast<std::size_t>(k),
                                       std::vector<double>(static_cast<std::size_t>(k)));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = to_double(Rat(x.at(i, j)));
    std::vector<double> d, e;
    detail::householder_tridiag(std::move(a), d, e);

    double lo = d[0], hi = d[0];
    for (int i = 0; i < k; ++i) {
        const double spread = std::fabs(e[static_cast<std::size_t>(i)]) +
                              (i + 1 < k ? std::fabs(e[static_cast<std::size_t>(i) + 1]) : 0.0);
        lo = std::min(lo, d[static_cast<std::size_t>(i)] - spread);
        hi = std::max(hi, d[static_cast<std::size_t>(i)] + spread);
    }
    const double scale = std::max({1.0, std::fabs(lo), std::fabs(hi)});
    const double pivmin = 1e-290 * std::max(1.0, scale * scale);
    const double tol = 1e-13 * scale;

    std::vector<double> eigen(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        double a_lo = lo, a_hi = hi;
        while (a_hi - a_lo > tol) {
            const double mid = 0.5 * (a_lo + a_hi);
            if (detail::sturm_count_below(d, e, mid, pivmin) >= j + 1)
                a_hi = mid;
            else
                a_lo = mid;
        }
        eigen[static_cast<std::size_t>(j)] = 0.5 * (a_lo + a_hi);
    }
    std::sort(eigen.begin(), eigen.end());
    return eigen;
}

// ---------------------------------------------------------------------------
// Spectral histograms with the exact atom at zero.
// ---------------------------------------------------------------------------

struct HistogramBin {
    double lo = 0.0;
    double hi = 0.0;
    long count = 0;
    Rat mass = Rat(0);
};

struct SpectralHistogram {
    int k = 0;
    long exact_zero_dim = 0;
    Rat zero_atom_mass = Rat(0);
    std::vector<double> eigenvalues;         // all k, ascending, floating
    std::vector<double> nonzero_eigenvalues; // eigenvalues minus the exact zero atom
    std::vector<HistogramBin> bins;          // over the nonzero part
};

// The exact_zero_dim eigenvalues of smallest magnitude form the atom at 0 (the
// exact kernel count overrides the floating values there); the rest are binned
// into `bin_count` equal-width intervals.
inline SpectralHistogram spectral_histogram(const IntSymMatrix& x, int bin_count = 16) {
    if (bin_count < 1) throw std::invalid_argument("spectral_histogram: need at least one bin");
    SpectralHistogram out;
    out.k = x.size();
    out.exact_zero_dim = kernel_dim_exact(x).dim;
    out.zero_atom_mass = out.k > 0 ? rat(out.exact_zero_dim, out.k) : Rat(0);
    out.eigenvalues = approximate_eigenvalues(x);

    std::vector<std::size_t> order(out.eigenvalues.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::fabs(out.eigenvalues[a]) < std::fabs(out.eigenvalues[b]);
    });
    std::vector<char> in_atom(out.eigenvalues.size(), 0);
    for (long j = 0; j < out.exact_zero_dim && j < static_cast<long>(order.size()); ++j)
        in_atom[order[static_cast<std::size_t>(j)]] = 1;
    for (std::size_t i = 0; i < out.eigenvalues.size(); ++i)
        if (!in_atom[i]) out.nonzero_eigenvalues.push_back(out.eigenvalues[i]);

    if (!out.nonzero_eigenvalues.empty()) {
        const double lo = out.nonzero_eigenvalues.front();
        const double hi = out.nonzero_eigenvalues.back();
        if (hi <= lo) {
            out.bins.push_back({lo, hi, static_cast<long>(out.nonzero_eigenvalues.size()),
                                rat(static_cast<long>(out.nonzero_eigenvalues.size()), out.k)});
        } else {
            const double width = (hi - lo) / bin_count;
            out.bins.resize(static_cast<std::size_t>(bin_count));
            for (int b = 0; b < bin_count; ++b) {
                out.bins[static_cast<std::size_t>(b)].lo = lo + b * width;
                out.bins[static_cast<std::size_t>(b)].hi = b + 1 == bin_count ? hi : lo + (b + 1) * width;
            }
            for (double v : out.nonzero_eigenvalues) {
                int b = static_cast<int>((v - lo) / width);
                b = std::clamp(b, 0, bin_count - 1);
                ++out.bins[static_cast<std::size_t>(b)].count;
            }
            for (auto& bin : out.bins) bin.mass = rat(bin.count, out.k);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// The epsilon-mass bound: mu([-eps, eps] \ {0}) <= Tr(x^2) / (k ln(1/eps)).
// ---------------------------------------------------------------------------

struct LueckCheck {
    Rat lhs = Rat(0);       // (near-zero count - exact kernel dim)/k, exact given the classification
    double rhs = 0.0;       // Tr(x^2) / (k ln(1/eps))
    bool pass = false;
    long kernel_dim = 0;
    long near_zero_count = 0;
    Int trace_square = Int(0);
};

inline LueckCheck lueck_bound_check(const IntSymMatrix& x, double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("lueck_bound_check: eps must satisfy 0 < eps < 1");
    LueckCheck out;
    out.kernel_dim = kernel_dim_exact(x).dim;
    const auto eigen = approximate_eigenvalues(x);
    for (double v : eigen)
        if (std::fabs(v) <= eps) ++out.near_zero_count;
    const int k = std::max(1, x.size());
    out.lhs = rat(out.near_zero_count - out.kernel_dim, k);
    out.trace_square = x.trace_of_square();
    out.rhs = to_double(Rat(out.trace_square)) / (k * std::log(1.0 / eps));
    out.pass = to_double(out.lhs) <= out.rhs + 1e-9;
    return out;
}

// ---------------------------------------------------------------------------
// Exact product of nonzero eigenvalues via the characteristic polynomial.
// ---------------------------------------------------------------------------

struct NonzeroProduct {
    Int product_abs = Int(1);   // |product of nonzero eigenvalues|; empty product = 1
    long zero_multiplicity = 0; // multiplicity of 0 as a root
    bool integer_ge_one = false;
};

// natural log of a positive big integer, stable for huge values
inline double log_int(const Int& v) {
    if (v <= 0) throw std::invalid_argument("log_int: argument must be positive");
    signed long exp2 = 0;
    const double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

inline NonzeroProduct nonzero_product_check(const IntSymMatrix& x, int size_cap = 60) {
    const auto coeffs = charpoly(x.entries(), size_cap);  // [1, c_1, ..., c_k]
    const int k = x.size();
    NonzeroProduct out;
    int lowest = 0;  // largest index with a nonzero coefficient = lowest nonzero degree term
    for (int i = k; i >= 0; --i)
        if (coeffs[static_cast<std::size_t>(i)] != 0) {
            lowest = i;
            break;
        }
    out.zero_multiplicity = k - lowest;
    out.product_abs = abs(coeffs[static_cast<std::size_t>(lowest)]);
    out.integer_ge_one = out.product_abs >= 1;
    return out;
}

// Exact value of sum over nonzero eigenvalues of ln |lambda| (= ln of the
// nonzero-eigenvalue product), evaluated in floating point only at the end.
inline double sum_log_nonzero_eigenvalues(const IntSymMatrix& x, int size_cap = 60) {
    return log_int(nonzero_product_check(x, size_cap).product_abs);
}

// ---------------------------------------------------------------------------
// Normalized kernel dimensions along a sequence of operators.
// ---------------------------------------------------------------------------

struct KernelSeqRow {
    long position = 0;
    int k = 0;
    long dim = 0;
    Rat normalized = Rat(0);
};

struct KernelSequenceReport {
    std::vector<KernelSeqRow> rows;
    long n_0 = 0;           // tail window start (positions >= n_0; all rows if none qualify)
    Rat tail_min = Rat(0);
    Rat tail_max = Rat(0);
};

inline KernelSequenceReport kernel_sequence_report(
    const std::vector<std::pair<long, IntSymMatrix>>& xs, long n_0 = 0, int jobs = 1) {
    KernelSequenceReport out;
    out.n_0 = n_0;
    out.rows.resize(xs.size());
    parallel_for(xs.size(), jobs, [&](std::size_t i) {
        const auto& [position, x] = xs[i];
        const auto kd = kernel_dim_exact(x);
        out.rows[i] = {position, x.size(), kd.dim, kd.normalized};
    });
    auto scan = [&](bool restrict_to_tail) {
        bool found = false;
        for (const auto& row : out.rows) {
            if (restrict_to_tail && row.position < n_0) continue;
            if (!found || row.normalized < out.tail_min) out.tail_min = row.normalized;
            if (!found || row.normalized > out.tail_max) out.tail_max = row.normalized;
            found = true;
        }
        return found;
    };
    if (!scan(true)) scan(false);
    return out;
}

}  // namespace graphlim
