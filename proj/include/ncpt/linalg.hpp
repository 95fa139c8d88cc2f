#pragma once

/**
 * @file linalg.hpp
 * @brief Exact dense linear algebra over the Gaussian rationals.
 */

#include <optional>
#include <vector>

#include "phase.hpp"

namespace ncpt {

using GVec = std::vector<GaussRational>;
using GMatrix = std::vector<GVec>; // row major

inline GMatrix gmat_identity(int n) {
    GMatrix m(n, GVec(n));
    for (int i = 0; i < n; ++i) m[i][i] = GaussRational(1);
    return m;
}

inline GMatrix gmat_mul(const GMatrix& a, const GMatrix& b) {
    int r = int(a.size()), k = int(b.size()), c = k ? int(b[0].size()) : 0;
    GMatrix out(r, GVec(c));
    for (int i = 0; i < r; ++i)
        for (int t = 0; t < k; ++t) {
            if (a[i][t].is_zero()) continue;
            for (int j = 0; j < c; ++j) out[i][j] += a[i][t] * b[t][j];
        }
    return out;
}

inline GVec gmat_apply(const GMatrix& a, const GVec& v) {
    GVec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        GaussRational s;
        for (size_t j = 0; j < v.size(); ++j) s += a[i][j] * v[j];
        out[i] = s;
    }
    return out;
}

inline bool gvec_is_zero(const GVec& v) {
    for (auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

/// In-place reduced row echelon form; returns the pivot columns.
inline std::vector<int> rref(GMatrix& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    int rows = int(m.size()), cols = int(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (!m[i][c].is_zero()) { p = i; break; }
        if (p < 0) continue;
        std::swap(m[r], m[p]);
        GaussRational inv = GaussRational(1) / m[r][c];
        for (int j = c; j < cols; ++j) m[r][j] = m[r][j] * inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            GaussRational f = m[i][c];
            for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    m.resize(r ? r : 0); // drop zero rows
    return pivots;
}

inline int rank(GMatrix m) { return int(rref(m).size()); }

/// Basis of the right kernel, one vector per free column.
inline std::vector<GVec> kernel(GMatrix m) {
    int cols = m.empty() ? 0 : int(m[0].size());
    std::vector<int> pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<GVec> basis;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        GVec v(cols);
        v[f] = GaussRational(1);
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Solve A x = b exactly; nullopt when inconsistent.
inline std::optional<GVec> solve(const GMatrix& A, const GVec& b) {
    int rows = int(A.size()), cols = rows ? int(A[0].size()) : 0;
    GMatrix aug(rows, GVec(cols + 1));
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) aug[i][j] = A[i][j];
        aug[i][cols] = b[i];
    }
    std::vector<int> pivots = rref(aug);
    for (int p : pivots)
        if (p == cols) return std::nullopt;
    GVec x(cols);
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][cols];
    return x;
}

inline std::optional<GMatrix> inverse(const GMatrix& A) {
    int n = int(A.size());
    GMatrix aug(n, GVec(2 * n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug[i][j] = A[i][j];
        aug[i][n + i] = GaussRational(1);
    }
    std::vector<int> pivots = rref(aug);
    if (int(pivots.size()) != n) return std::nullopt;
    for (int i = 0; i < n; ++i)
        if (pivots[i] != i) return std::nullopt;
    GMatrix inv(n, GVec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

/// Exact determinant by Gaussian elimination over the field Q(i).
inline GaussRational gdet(GMatrix a) {
    int n = int(a.size());
    GaussRational det(1);
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int i = c; i < n; ++i)
            if (!a[i][c].is_zero()) { p = i; break; }
        if (p < 0) return GaussRational(0);
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        GaussRational inv = GaussRational(1) / a[c][c];
        for (int i = c + 1; i < n; ++i) {
            if (a[i][c].is_zero()) continue;
            GaussRational f = a[i][c] * inv;
            for (int j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    return det;
}

/// Span membership against a row-echelon basis (rows assumed rref'd).
inline bool in_span(const GMatrix& echelon, const std::vector<int>& pivots, const GVec& v) {
    GVec w = v;
    for (size_t r = 0; r < pivots.size(); ++r) {
        GaussRational f = w[pivots[r]];
        if (f.is_zero()) continue;
        for (size_t j = 0; j < w.size(); ++j) w[j] -= f * echelon[r][j];
    }
    return gvec_is_zero(w);
}

} // namespace ncpt
