#pragma once

// Independent homology oracles used by the verification suites.  These
// rebuild the complexes from the structure constants in the classical
// conventions with their own dense linear algebra, sharing nothing with the
// cyclic-module engine: Hochschild dimensions from the bar-type complex with
// faces d_i(a_0,...,a_n) = (a_0,...,a_i a_{i+1},...,a_n), d_n wrapping, and
// cyclic dimensions from the Connes quotient complex C_n / im(1 - t), which
// computes HC over a characteristic-zero field.

#include <cstdint>
#include <vector>

#include "ncw/algebra.hpp"

namespace ncw::oracle {

using Row = std::vector<GaussianRational>;
using Mat = std::vector<Row>;  // row-major, mat[r][c]

inline size_t oracle_rank(Mat m) {
    size_t rows = m.size();
    if (rows == 0) return 0;
    size_t cols = m[0].size(), rank = 0;
    for (size_t c = 0; c < cols && rank < rows; ++c) {
        size_t piv = rank;
        while (piv < rows && m[piv][c].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[rank]);
        GaussianRational inv = m[rank][c].inverse();
        for (size_t j = c; j < cols; ++j) m[rank][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == rank || m[i][c].is_zero()) continue;
            GaussianRational f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

// Words are (a_0, ..., a_n) with a_j the digit at position n - j (big-endian,
// deliberately unlike the engine's layout).
inline int64_t word_dim(size_t algdim, int n) {
    int64_t d = 1;
    for (int j = 0; j <= n; ++j) d *= static_cast<int64_t>(algdim);
    return d;
}

inline int digit(int64_t w, int pos_from_top, int n, size_t algdim) {
    int64_t d = w;
    for (int k = 0; k < n - pos_from_top; ++k) d /= static_cast<int64_t>(algdim);
    return static_cast<int>(d % static_cast<int64_t>(algdim));
}

// Dense matrix of the Hochschild boundary b: C_n -> C_{n-1} in the Loday
// convention, rows indexed by target words.
inline Mat bar_boundary(const AlgebraPresentation& a, int n) {
    size_t N = a.dim();
    Mat m(static_cast<size_t>(word_dim(N, n - 1)),
          Row(static_cast<size_t>(word_dim(N, n)), GaussianRational(0)));
    for (int64_t w = 0; w < word_dim(N, n); ++w) {
        std::vector<int> letters(static_cast<size_t>(n) + 1);
        for (int j = 0; j <= n; ++j) letters[j] = digit(w, j, n, N);  // letters[j] = a_j
        for (int i = 0; i <= n; ++i) {
            GaussianRational sgn((i % 2 == 0) ? 1 : -1);
            std::vector<int> rest;
            const GRVec* prod;
            if (i < n) {
                prod = &a.basis_product(static_cast<size_t>(letters[i]),
                                        static_cast<size_t>(letters[i + 1]));
                for (int j = 0; j <= n; ++j)
                    if (j != i && j != i + 1) rest.push_back(letters[j]);
                // composite goes at position i
                for (const auto& [k, c] : *prod) {
                    int64_t t = 0;
                    int pos = 0;
                    for (int j = 0; j < i; ++j) t = t * N + rest[pos++];
                    t = t * static_cast<int64_t>(N) + k;
                    for (int j = i; j < n - 1; ++j) t = t * N + rest[pos++];
                    m[static_cast<size_t>(t)][static_cast<size_t>(w)] += sgn * c;
                }
            } else {
                prod = &a.basis_product(static_cast<size_t>(letters[n]),
                                        static_cast<size_t>(letters[0]));
                for (const auto& [k, c] : *prod) {
                    int64_t t = k;
                    for (int j = 1; j <= n - 1; ++j) t = t * N + letters[j];
                    m[static_cast<size_t>(t)][static_cast<size_t>(w)] += sgn * c;
                }
            }
        }
    }
    return m;
}

// Dense matrix of 1 - t on C_n, t(a_0,...,a_n) = (-1)^n (a_n, a_0, ..., a_{n-1}).
inline Mat one_minus_t(const AlgebraPresentation& a, int n) {
    size_t N = a.dim();
    int64_t dim = word_dim(N, n);
    Mat m(static_cast<size_t>(dim), Row(static_cast<size_t>(dim), GaussianRational(0)));
    GaussianRational sgn((n % 2 == 0) ? 1 : -1);
    for (int64_t w = 0; w < dim; ++w) {
        std::vector<int> letters(static_cast<size_t>(n) + 1);
        for (int j = 0; j <= n; ++j) letters[j] = digit(w, j, n, N);
        int64_t t = letters[n];
        for (int j = 0; j < n; ++j) t = t * N + letters[j];
        m[static_cast<size_t>(w)][static_cast<size_t>(w)] += GaussianRational(1);
        m[static_cast<size_t>(t)][static_cast<size_t>(w)] -= sgn;
    }
    return m;
}

inline Mat hstack(const Mat& a, const Mat& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    Mat m = a;
    for (size_t r = 0; r < m.size(); ++r) m[r].insert(m[r].end(), b[r].begin(), b[r].end());
    return m;
}

// HH_n for n <= max_degree via dense ranks of the bar-type boundaries.
inline std::vector<int64_t> hochschild_dims(const AlgebraPresentation& a, int max_degree) {
    if (a.dim() == 0) return std::vector<int64_t>(static_cast<size_t>(max_degree) + 1, 0);
    std::vector<size_t> rank(static_cast<size_t>(max_degree) + 2, 0);
    for (int n = 1; n <= max_degree + 1; ++n) rank[n] = oracle_rank(bar_boundary(a, n));
    std::vector<int64_t> dims;
    for (int n = 0; n <= max_degree; ++n)
        dims.push_back(word_dim(a.dim(), n) - static_cast<int64_t>(rank[n]) -
                       static_cast<int64_t>(rank[n + 1]));
    return dims;
}

// HC_n for n <= max_degree via the Connes quotient complex: on the quotient
// Q_n = C_n / im(1 - t) the boundary descends, and
//   rank(induced b_n) = rank [b_n | 1-t_{n-1}] - rank(1-t_{n-1}).
inline std::vector<int64_t> connes_lambda_dims(const AlgebraPresentation& a, int max_degree) {
    if (a.dim() == 0) return std::vector<int64_t>(static_cast<size_t>(max_degree) + 1, 0);
    std::vector<size_t> rank_omt(static_cast<size_t>(max_degree) + 2, 0);  // rank(1 - t_n)
    std::vector<size_t> rank_induced(static_cast<size_t>(max_degree) + 2, 0);
    for (int n = 0; n <= max_degree + 1; ++n) rank_omt[n] = oracle_rank(one_minus_t(a, n));
    for (int n = 1; n <= max_degree + 1; ++n) {
        Mat joint = hstack(bar_boundary(a, n), one_minus_t(a, n - 1));
        rank_induced[n] = oracle_rank(std::move(joint)) - rank_omt[n - 1];
    }
    std::vector<int64_t> dims;
    for (int n = 0; n <= max_degree; ++n) {
        int64_t q = word_dim(a.dim(), n) - static_cast<int64_t>(rank_omt[n]);
        dims.push_back(q - static_cast<int64_t>(rank_induced[n]) -
                       static_cast<int64_t>(rank_induced[n + 1]));
    }
    return dims;
}

}  // namespace ncw::oracle
