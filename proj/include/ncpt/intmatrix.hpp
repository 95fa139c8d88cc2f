#pragma once

/**
 * @file intmatrix.hpp
 * @brief Dense integer matrices and the Smith normal form over Z.
 *
 * The Smith routine returns unimodular transforms U, V with U*M*V diagonal
 * and d1 | d2 | ... ; it re-verifies the factorization and both determinants
 * exactly before returning. Integer linear systems A*x = b are solved through
 * the same factorization.
 */

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace ncpt {

class IntMatrix {
    int rows_ = 0, cols_ = 0;
    std::vector<long long> e_;

public:
    IntMatrix() = default;
    IntMatrix(int r, int c) : rows_(r), cols_(c), e_(size_t(r) * c, 0) {}
    IntMatrix(std::vector<std::vector<long long>> rows) {
        rows_ = int(rows.size());
        cols_ = rows_ ? int(rows[0].size()) : 0;
        for (auto& r : rows) {
            if (int(r.size()) != cols_) throw std::invalid_argument("IntMatrix: ragged rows");
            e_.insert(e_.end(), r.begin(), r.end());
        }
    }

    static IntMatrix identity(int n) {
        IntMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    long long& at(int i, int j) { return e_[size_t(i) * cols_ + j]; }
    long long at(int i, int j) const { return e_[size_t(i) * cols_ + j]; }

    bool operator==(const IntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }
    bool operator!=(const IntMatrix& o) const { return !(*this == o); }

    IntMatrix operator*(const IntMatrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("IntMatrix: dimension mismatch");
        IntMatrix r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                long long a = at(i, k);
                if (a == 0) continue;
                for (int j = 0; j < o.cols_; ++j) r.at(i, j) += a * o.at(k, j);
            }
        return r;
    }

    IntMatrix operator+(const IntMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("IntMatrix: dimension mismatch");
        IntMatrix r = *this;
        for (size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
        return r;
    }
    IntMatrix operator-(const IntMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("IntMatrix: dimension mismatch");
        IntMatrix r = *this;
        for (size_t i = 0; i < e_.size(); ++i) r.e_[i] -= o.e_[i];
        return r;
    }

    std::vector<long long> apply(const std::vector<long long>& v) const {
        if (int(v.size()) != cols_) throw std::invalid_argument("IntMatrix: vector size");
        std::vector<long long> r(rows_, 0);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
        return r;
    }

    IntMatrix transposed() const {
        IntMatrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }
};

/// Determinant by fraction-free (Bareiss) elimination; exact in __int128.
inline long long det(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det: square matrix required");
    int n = m.rows();
    if (n == 0) return 1;
    std::vector<std::vector<__int128>> a(n, std::vector<__int128>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = m.at(i, j);
    __int128 prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (a[i][k] != 0) { p = i; break; }
            if (p < 0) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    __int128 d = sign * a[n - 1][n - 1];
    return (long long)d;
}

struct SmithResult {
    std::vector<long long> diag; // nonnegative, d1 | d2 | ...
    IntMatrix left;              // unimodular, rows x rows
    IntMatrix right;             // unimodular, cols x cols
};

namespace detail {
inline long long floordiv(long long a, long long b) {
    long long q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}
} // namespace detail

/// Smith normal form: left*m*right is diagonal with d1 | d2 | ...
inline SmithResult smith_normal_form(const IntMatrix& m) {
    int R = m.rows(), C = m.cols();
    IntMatrix a = m;
    IntMatrix U = IntMatrix::identity(R);
    IntMatrix V = IntMatrix::identity(C);

    auto swap_rows = [&](int i, int j) {
        if (i == j) return;
        for (int k = 0; k < C; ++k) std::swap(a.at(i, k), a.at(j, k));
        for (int k = 0; k < R; ++k) std::swap(U.at(i, k), U.at(j, k));
    };
    auto swap_cols = [&](int i, int j) {
        if (i == j) return;
        for (int k = 0; k < R; ++k) std::swap(a.at(k, i), a.at(k, j));
        for (int k = 0; k < C; ++k) std::swap(V.at(k, i), V.at(k, j));
    };
    auto addmul_row = [&](int dst, int src, long long f) { // row dst += f * row src
        if (f == 0) return;
        for (int k = 0; k < C; ++k) a.at(dst, k) += f * a.at(src, k);
        for (int k = 0; k < R; ++k) U.at(dst, k) += f * U.at(src, k);
    };
    auto addmul_col = [&](int dst, int src, long long f) {
        if (f == 0) return;
        for (int k = 0; k < R; ++k) a.at(k, dst) += f * a.at(k, src);
        for (int k = 0; k < C; ++k) V.at(k, dst) += f * V.at(k, src);
    };
    auto negate_row = [&](int i) {
        for (int k = 0; k < C; ++k) a.at(i, k) = -a.at(i, k);
        for (int k = 0; k < R; ++k) U.at(i, k) = -U.at(i, k);
    };

    int T = std::min(R, C);
    for (int t = 0; t < T; ++t) {
        for (;;) {
            // smallest nonzero entry of the trailing block as pivot
            int pi = -1, pj = -1;
            long long best = 0;
            for (int i = t; i < R; ++i)
                for (int j = t; j < C; ++j) {
                    long long v = a.at(i, j) < 0 ? -a.at(i, j) : a.at(i, j);
                    if (v != 0 && (pi < 0 || v < best)) {
                        best = v;
                        pi = i;
                        pj = j;
                    }
                }
            if (pi < 0) { t = T; break; } // trailing block is zero
            swap_rows(t, pi);
            swap_cols(t, pj);

            bool clean = true;
            for (int i = t + 1; i < R; ++i) {
                long long q = detail::floordiv(a.at(i, t), a.at(t, t));
                addmul_row(i, t, -q);
                if (a.at(i, t) != 0) clean = false;
            }
            for (int j = t + 1; j < C; ++j) {
                long long q = detail::floordiv(a.at(t, j), a.at(t, t));
                addmul_col(j, t, -q);
                if (a.at(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // pivot must divide the whole trailing block
            bool divides = true;
            for (int i = t + 1; i < R && divides; ++i)
                for (int j = t + 1; j < C; ++j)
                    if (a.at(i, j) % a.at(t, t) != 0) {
                        addmul_row(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (t >= T) break;
        if (a.at(t, t) < 0) negate_row(t);
    }

    SmithResult res;
    res.diag.resize(T);
    for (int t = 0; t < T; ++t) res.diag[t] = a.at(t, t);
    res.left = U;
    res.right = V;

    // self-check: factorization and unimodularity, recomputed from scratch
    IntMatrix chk = U * m * V;
    for (int i = 0; i < R; ++i)
        for (int j = 0; j < C; ++j) {
            long long want = (i == j && i < T) ? res.diag[i] : 0;
            if (chk.at(i, j) != want) throw std::logic_error("smith_normal_form: factorization check failed");
        }
    for (int t = 0; t + 1 < T; ++t)
        if (res.diag[t] != 0 && res.diag[t + 1] % res.diag[t] != 0)
            throw std::logic_error("smith_normal_form: divisibility chain broken");
    long long du = det(U), dv = det(V);
    if ((du != 1 && du != -1) || (dv != 1 && dv != -1))
        throw std::logic_error("smith_normal_form: transform not unimodular");
    return res;
}

struct IntSolution {
    std::vector<long long> particular;
    std::vector<std::vector<long long>> kernel; // basis of the solution lattice of A*x = 0
};

/// Integer solutions of A*x = b, or nullopt when none exist.
inline std::optional<IntSolution> solve_integer(const IntMatrix& A, const std::vector<long long>& b) {
    if (int(b.size()) != A.rows()) throw std::invalid_argument("solve_integer: size mismatch");
    SmithResult s = smith_normal_form(A);
    std::vector<long long> ub = s.left.apply(b);
    int T = int(s.diag.size());
    std::vector<long long> y(A.cols(), 0);
    for (int i = 0; i < A.rows(); ++i) {
        long long d = i < T ? s.diag[i] : 0;
        if (d == 0) {
            if (ub[i] != 0) return std::nullopt;
        } else {
            if (ub[i] % d != 0) return std::nullopt;
            y[i] = ub[i] / d;
        }
    }
    IntSolution sol;
    sol.particular = s.right.apply(y);
    for (int j = 0; j < A.cols(); ++j) {
        if (j < T && s.diag[j] != 0) continue;
        std::vector<long long> col(A.cols());
        for (int i = 0; i < A.cols(); ++i) col[i] = s.right.at(i, j);
        sol.kernel.push_back(std::move(col));
    }
    return sol;
}

} // namespace ncpt
