#pragma once

/**
 * @file findim.hpp
 * @brief Finite-dimensional unital algebras by structure constants.
 *
 * Everything structural runs exactly over the Gaussian rationals: the
 * radical is the kernel of the trace form of left multiplication, then
 * re-verified to be a nilpotent two-sided ideal; the semisimple quotient and
 * automorphism descent are exact as well. Only character extraction works in
 * floats (eigenvectors of a random left-multiplication operator), with the
 * multiplicativity residuals checked afterwards.
 */

#include <Eigen/Dense>
#include <algorithm>
#include <optional>
#include <random>
#include <string>

#include "linalg.hpp"
#include "nctorus.hpp"

namespace ncpt {

class StructureAlgebra {
    int dim_ = 0;
    std::vector<std::string> labels_;
    std::vector<std::vector<GVec>> c_; // c_[i][j][k]: b_i b_j = sum_k c b_k
    GVec unit_;
    std::optional<std::vector<MultiIndex>> weights_;

public:
    StructureAlgebra(std::vector<std::vector<GVec>> constants, GVec unit,
                     std::vector<std::string> labels = {},
                     std::optional<std::vector<MultiIndex>> weights = std::nullopt)
        : dim_(int(constants.size())),
          labels_(std::move(labels)),
          c_(std::move(constants)),
          unit_(std::move(unit)),
          weights_(std::move(weights)) {
        if (labels_.empty())
            for (int i = 0; i < dim_; ++i) labels_.push_back("b" + std::to_string(i));
        validate();
    }

    int dim() const { return dim_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const GVec& unit() const { return unit_; }
    const std::vector<std::vector<GVec>>& constants() const { return c_; }
    const std::optional<std::vector<MultiIndex>>& weights() const { return weights_; }

    GVec basis_vector(int i) const {
        GVec v(dim_);
        v[i] = GaussRational(1);
        return v;
    }

    GVec mul(const GVec& x, const GVec& y) const {
        GVec out(dim_);
        for (int i = 0; i < dim_; ++i) {
            if (x[i].is_zero()) continue;
            for (int j = 0; j < dim_; ++j) {
                if (y[j].is_zero()) continue;
                GaussRational f = x[i] * y[j];
                for (int k = 0; k < dim_; ++k) out[k] += f * c_[i][j][k];
            }
        }
        return out;
    }

    /// Matrix of left multiplication by x.
    GMatrix left_mul(const GVec& x) const {
        GMatrix L(dim_, GVec(dim_));
        for (int j = 0; j < dim_; ++j) {
            GVec col = mul(x, basis_vector(j));
            for (int k = 0; k < dim_; ++k) L[k][j] = col[k];
        }
        return L;
    }

    bool is_commutative() const {
        for (int i = 0; i < dim_; ++i)
            for (int j = i + 1; j < dim_; ++j)
                if (c_[i][j] != c_[j][i]) return false;
        return true;
    }

private:
    void validate() const {
        if (int(c_.size()) != dim_ || int(unit_.size()) != dim_)
            throw std::invalid_argument("StructureAlgebra: shape mismatch");
        for (auto& row : c_) {
            if (int(row.size()) != dim_) throw std::invalid_argument("StructureAlgebra: shape mismatch");
            for (auto& v : row)
                if (int(v.size()) != dim_) throw std::invalid_argument("StructureAlgebra: shape mismatch");
        }
        for (int i = 0; i < dim_; ++i) {
            if (mul(unit_, basis_vector(i)) != basis_vector(i) ||
                mul(basis_vector(i), unit_) != basis_vector(i))
                throw std::invalid_argument("StructureAlgebra: unit laws fail");
        }
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j)
                for (int k = 0; k < dim_; ++k)
                    if (mul(mul(basis_vector(i), basis_vector(j)), basis_vector(k)) !=
                        mul(basis_vector(i), mul(basis_vector(j), basis_vector(k))))
                        throw std::invalid_argument("StructureAlgebra: not associative");
        if (weights_) {
            if (int(weights_->size()) != dim_)
                throw std::invalid_argument("StructureAlgebra: weights size");
            for (int i = 0; i < dim_; ++i)
                for (int j = 0; j < dim_; ++j)
                    for (int k = 0; k < dim_; ++k)
                        if (!c_[i][j][k].is_zero() &&
                            mi_add((*weights_)[i], (*weights_)[j]) != (*weights_)[k])
                            throw std::invalid_argument("StructureAlgebra: weights not graded");
            for (int i = 0; i < dim_; ++i)
                if (!unit_[i].is_zero() && !mi_is_zero((*weights_)[i]))
                    throw std::invalid_argument("StructureAlgebra: unit not weight zero");
        }
    }
};

/// Subspace of an algebra, kept as a reduced-echelon basis.
struct Subspace {
    GMatrix basis; // rref rows
    std::vector<int> pivots;

    int dim() const { return int(basis.size()); }
    bool contains(const GVec& v) const { return in_span(basis, pivots, v); }
};

inline Subspace make_subspace(GMatrix vectors) {
    Subspace s;
    s.pivots = rref(vectors);
    s.basis = std::move(vectors);
    return s;
}

// ---------------------------------------------------------------------------
// Radical and semisimple quotient

/**
 * Jacobson radical as the kernel of the trace form G_ij = tr(L_i L_j),
 * followed by an exact certificate: the kernel is a two-sided ideal and some
 * power of it vanishes. Throws if either certificate fails.
 */
inline Subspace radical(const StructureAlgebra& A) {
    int d = A.dim();
    std::vector<GMatrix> L(d);
    for (int i = 0; i < d; ++i) L[i] = A.left_mul(A.basis_vector(i));
    GMatrix gram(d, GVec(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            GaussRational tr;
            for (int k = 0; k < d; ++k)
                for (int m = 0; m < d; ++m) tr += L[i][k][m] * L[j][m][k];
            gram[i][j] = tr;
        }
    Subspace rad = make_subspace(kernel(gram));

    // certificate 1: two-sided ideal
    for (auto& v : rad.basis)
        for (int i = 0; i < d; ++i) {
            if (!rad.contains(A.mul(A.basis_vector(i), v)) ||
                !rad.contains(A.mul(v, A.basis_vector(i))))
                throw std::logic_error("radical: trace-form kernel is not an ideal");
        }
    // certificate 2: nilpotent (powers of the ideal shrink to zero)
    GMatrix power = rad.basis;
    for (int step = 0; step <= d && !power.empty(); ++step) {
        GMatrix next;
        for (auto& v : power)
            for (auto& w : rad.basis) next.push_back(A.mul(v, w));
        rref(next);
        power = std::move(next);
    }
    if (!power.empty()) throw std::logic_error("radical: ideal is not nilpotent");
    return rad;
}

struct SemisimpleQuotient {
    StructureAlgebra algebra;   // A_ss by structure constants
    GMatrix projection;         // m x d, x -> coordinates of x + rad
    std::vector<int> section;   // basis indices of A lifting the quotient basis
};

/// Quotient by the radical, with the projection re-verified to be a unital
/// algebra map whose kernel is exactly the radical.
inline SemisimpleQuotient semisimple_quotient(const StructureAlgebra& A) {
    Subspace rad = radical(A);
    int d = A.dim(), r = rad.dim(), m = d - r;
    std::vector<bool> is_pivot(d, false);
    for (int p : rad.pivots) is_pivot[p] = true;
    std::vector<int> section;
    for (int i = 0; i < d; ++i)
        if (!is_pivot[i]) section.push_back(i);

    // reduce x modulo the radical, then read off the non-pivot coordinates
    auto project = [&](const GVec& x) {
        GVec w = x;
        for (size_t t = 0; t < rad.pivots.size(); ++t) {
            GaussRational f = w[rad.pivots[t]];
            if (f.is_zero()) continue;
            for (int j = 0; j < d; ++j) w[j] -= f * rad.basis[t][j];
        }
        GVec out(m);
        for (int k = 0; k < m; ++k) out[k] = w[section[k]];
        return out;
    };

    std::vector<std::vector<GVec>> cq(m, std::vector<GVec>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            cq[i][j] = project(A.mul(A.basis_vector(section[i]), A.basis_vector(section[j])));
    std::vector<std::string> labels;
    for (int k : section) labels.push_back(A.labels()[k]);
    StructureAlgebra Ass(cq, project(A.unit()), labels);

    GMatrix proj(m, GVec(d));
    for (int j = 0; j < d; ++j) {
        GVec col = project(A.basis_vector(j));
        for (int k = 0; k < m; ++k) proj[k][j] = col[k];
    }

    // verify: unital algebra homomorphism with kernel exactly the radical
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            GVec lhs = gmat_apply(proj, A.mul(A.basis_vector(i), A.basis_vector(j)));
            GVec rhs = Ass.mul(gmat_apply(proj, A.basis_vector(i)),
                               gmat_apply(proj, A.basis_vector(j)));
            if (lhs != rhs) throw std::logic_error("semisimple_quotient: not a homomorphism");
        }
    if (gmat_apply(proj, A.unit()) != Ass.unit())
        throw std::logic_error("semisimple_quotient: unit not preserved");
    for (auto& v : rad.basis)
        if (!gvec_is_zero(gmat_apply(proj, v)))
            throw std::logic_error("semisimple_quotient: radical not in kernel");
    if (radical(Ass).dim() != 0)
        throw std::logic_error("semisimple_quotient: quotient not semisimple");

    return {std::move(Ass), std::move(proj), std::move(section)};
}

// ---------------------------------------------------------------------------
// Characters (commutative algebras)

/// Multiplicative linear functional, chi(1) = 1; values are floats.
struct Character {
    std::vector<CScalar> values; // chi(b_i)

    CScalar eval(const GVec& x) const {
        CScalar s = 0.0;
        for (size_t i = 0; i < values.size(); ++i) s += x[i].to_complex() * values[i];
        return s;
    }
    CScalar eval(const std::vector<CScalar>& x) const {
        CScalar s = 0.0;
        for (size_t i = 0; i < values.size(); ++i) s += x[i] * values[i];
        return s;
    }
};

inline double character_distance(const Character& a, const Character& b) {
    double d = 0.0;
    for (size_t i = 0; i < a.values.size(); ++i)
        d = std::max(d, std::abs(a.values[i] - b.values[i]));
    return d;
}

namespace detail {
inline Eigen::MatrixXcd to_eigen(const GMatrix& m) {
    Eigen::MatrixXcd out(m.size(), m.empty() ? 0 : m[0].size());
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[i].size(); ++j) out(i, j) = m[i][j].to_complex();
    return out;
}
} // namespace detail

/**
 * All characters of a commutative algebra: exactly dim(A_ss) of them.
 * A random linear combination of the left-multiplication operators on A_ss
 * splits the joint spectrum; its eigenvectors are the primitive idempotent
 * lines, from which character values are read off and then verified to be
 * unital and multiplicative within 1e-6. Reruns with a derived seed when an
 * eigenvalue collision spoils the split; throws after the retry budget.
 */
inline std::vector<Character> characters(const StructureAlgebra& A, unsigned long long seed = 1) {
    if (!A.is_commutative()) throw std::invalid_argument("characters: algebra not commutative");
    SemisimpleQuotient q = semisimple_quotient(A);
    int m = q.algebra.dim(), d = A.dim();

    std::vector<Eigen::MatrixXcd> Lss(m);
    for (int i = 0; i < m; ++i)
        Lss[i] = detail::to_eigen(q.algebra.left_mul(q.algebra.basis_vector(i)));

    for (int attempt = 0; attempt < 32; ++attempt) {
        std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * attempt);
        std::uniform_real_distribution<double> co(-1.0, 1.0);
        Eigen::MatrixXcd R = Eigen::MatrixXcd::Zero(m, m);
        for (int i = 0; i < m; ++i) R += CScalar(co(rng), co(rng)) * Lss[i];

        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(R);
        if (es.info() != Eigen::Success) continue;
        double scale = 1.0 + es.eigenvalues().cwiseAbs().maxCoeff();
        bool split = true;
        for (int i = 0; i < m && split; ++i)
            for (int j = i + 1; j < m; ++j)
                if (std::abs(es.eigenvalues()[i] - es.eigenvalues()[j]) < 1e-8 * scale) {
                    split = false;
                    break;
                }
        if (!split) continue;

        std::vector<Character> out;
        bool ok = true;
        for (int j = 0; j < m && ok; ++j) {
            Eigen::VectorXcd v = es.eigenvectors().col(j);
            int p = 0;
            for (int i = 1; i < m; ++i)
                if (std::abs(v[i]) > std::abs(v[p])) p = i;
            Character chi;
            chi.values.resize(d);
            for (int i = 0; i < d; ++i) {
                // chi(b_i) = (L_{proj(b_i)} v)_p / v_p
                Eigen::MatrixXcd Li = Eigen::MatrixXcd::Zero(m, m);
                for (int k = 0; k < m; ++k) Li += q.projection[k][i].to_complex() * Lss[k];
                chi.values[i] = (Li * v)[p] / v[p];
            }
            // verification: unital, multiplicative, kills the radical
            if (std::abs(chi.eval(A.unit()) - CScalar(1.0, 0.0)) > 1e-6) ok = false;
            for (int a = 0; a < d && ok; ++a)
                for (int b = 0; b < d; ++b) {
                    CScalar lhs = chi.eval(A.mul(A.basis_vector(a), A.basis_vector(b)));
                    if (std::abs(lhs - chi.values[a] * chi.values[b]) > 1e-6) {
                        ok = false;
                        break;
                    }
                }
            out.push_back(std::move(chi));
        }
        if (!ok) continue;
        std::sort(out.begin(), out.end(), [](const Character& a, const Character& b) {
            for (size_t i = 0; i < a.values.size(); ++i) {
                if (a.values[i].real() != b.values[i].real())
                    return a.values[i].real() < b.values[i].real();
                if (a.values[i].imag() != b.values[i].imag())
                    return a.values[i].imag() < b.values[i].imag();
            }
            return false;
        });
        return out;
    }
    throw std::runtime_error("characters: eigen-split failed after retry budget; rerandomize seed");
}

// ---------------------------------------------------------------------------
// Automorphism descent and character permutations

inline bool is_algebra_automorphism(const StructureAlgebra& A, const GMatrix& phi) {
    if (int(phi.size()) != A.dim()) return false;
    if (gmat_apply(phi, A.unit()) != A.unit()) return false;
    if (!inverse(phi)) return false;
    for (int i = 0; i < A.dim(); ++i)
        for (int j = 0; j < A.dim(); ++j) {
            GVec lhs = gmat_apply(phi, A.mul(A.basis_vector(i), A.basis_vector(j)));
            GVec rhs = A.mul(gmat_apply(phi, A.basis_vector(i)), gmat_apply(phi, A.basis_vector(j)));
            if (lhs != rhs) return false;
        }
    return true;
}

struct DescendedAutomorphism {
    GMatrix on_radical;  // r x r in the radical basis
    GMatrix on_quotient; // m x m in the quotient basis
};

/// Restriction to the radical and the induced quotient automorphism.
inline DescendedAutomorphism descend_automorphism(const StructureAlgebra& A, const GMatrix& phi) {
    if (!is_algebra_automorphism(A, phi))
        throw std::invalid_argument("descend_automorphism: not a unital algebra automorphism");
    SemisimpleQuotient q = semisimple_quotient(A);
    Subspace rad = radical(A);
    int r = rad.dim(), m = q.algebra.dim();

    DescendedAutomorphism out;
    out.on_radical.assign(r, GVec(r));
    for (int j = 0; j < r; ++j) {
        GVec img = gmat_apply(phi, rad.basis[j]);
        if (!rad.contains(img))
            throw std::logic_error("descend_automorphism: radical not preserved");
        // coordinates of img in the echelon radical basis
        GVec w = img;
        for (int t = 0; t < r; ++t) {
            GaussRational f = w[rad.pivots[t]];
            out.on_radical[t][j] = f;
            if (f.is_zero()) continue;
            for (size_t s = 0; s < w.size(); ++s) w[s] -= f * rad.basis[t][s];
        }
        if (!gvec_is_zero(w)) throw std::logic_error("descend_automorphism: radical coordinates");
    }

    out.on_quotient.assign(m, GVec(m));
    for (int j = 0; j < m; ++j) {
        GVec img = gmat_apply(q.projection, gmat_apply(phi, A.basis_vector(q.section[j])));
        for (int k = 0; k < m; ++k) out.on_quotient[k][j] = img[k];
    }
    return out;
}

/// Permutation pi with chi_{pi(i)} = chi_i o phi^{-1}; throws on ambiguity.
inline std::vector<int> character_permutation(const StructureAlgebra& A, const GMatrix& phi,
                                              const std::vector<Character>& chis,
                                              double tol = 1e-6) {
    auto inv = inverse(phi);
    if (!inv || !is_algebra_automorphism(A, phi))
        throw std::invalid_argument("character_permutation: not an automorphism");
    int m = int(chis.size()), d = A.dim();
    std::vector<int> perm(m, -1);
    std::vector<bool> used(m, false);
    for (int i = 0; i < m; ++i) {
        Character target;
        target.values.resize(d);
        for (int b = 0; b < d; ++b) {
            GVec col(d);
            for (int k = 0; k < d; ++k) col[k] = (*inv)[k][b];
            target.values[b] = chis[i].eval(col);
        }
        int found = -1;
        for (int k = 0; k < m; ++k)
            if (character_distance(target, chis[k]) <= tol) {
                if (found >= 0)
                    throw std::runtime_error("character_permutation: ambiguous match");
                found = k;
            }
        if (found < 0) throw std::runtime_error("character_permutation: no match within tolerance");
        if (used[found]) throw std::runtime_error("character_permutation: not a bijection");
        used[found] = true;
        perm[i] = found;
    }
    return perm;
}

// ---------------------------------------------------------------------------
// Stock algebras

/// Diagonal algebra C^n.
inline StructureAlgebra algebra_cn(int n) {
    std::vector<std::vector<GVec>> c(n, std::vector<GVec>(n, GVec(n)));
    for (int i = 0; i < n; ++i) c[i][i][i] = GaussRational(1);
    GVec unit(n, GaussRational(1));
    return StructureAlgebra(std::move(c), std::move(unit));
}

/// Dual numbers C[e]/(e^2), basis {1, e}.
inline StructureAlgebra algebra_dual_numbers() {
    std::vector<std::vector<GVec>> c(2, std::vector<GVec>(2, GVec(2)));
    c[0][0][0] = GaussRational(1);
    c[0][1][1] = GaussRational(1);
    c[1][0][1] = GaussRational(1);
    GVec unit(2);
    unit[0] = GaussRational(1);
    return StructureAlgebra(std::move(c), std::move(unit), {"1", "e"});
}

/// C[x]/(x^2 - 1), basis {1, x}.
inline StructureAlgebra algebra_cx_sq_one() {
    std::vector<std::vector<GVec>> c(2, std::vector<GVec>(2, GVec(2)));
    c[0][0][0] = GaussRational(1);
    c[0][1][1] = GaussRational(1);
    c[1][0][1] = GaussRational(1);
    c[1][1][0] = GaussRational(1);
    GVec unit(2);
    unit[0] = GaussRational(1);
    return StructureAlgebra(std::move(c), std::move(unit), {"1", "x"});
}

/// Full 2x2 matrix algebra, basis {e11, e12, e21, e22}.
inline StructureAlgebra algebra_m2() {
    auto idx = [](int a, int b) { return a * 2 + b; };
    std::vector<std::vector<GVec>> c(4, std::vector<GVec>(4, GVec(4)));
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int p = 0; p < 2; ++p)
                for (int q = 0; q < 2; ++q)
                    if (b == p) c[idx(a, b)][idx(p, q)][idx(a, q)] = GaussRational(1);
    GVec unit(4);
    unit[idx(0, 0)] = GaussRational(1);
    unit[idx(1, 1)] = GaussRational(1);
    return StructureAlgebra(std::move(c), std::move(unit), {"e11", "e12", "e21", "e22"});
}

/// Transport structure constants along a basis change b'_j = sum_i P_ij b_i.
inline StructureAlgebra conjugate_algebra(const StructureAlgebra& A, const GMatrix& P) {
    auto Pinv = inverse(P);
    if (!Pinv) throw std::invalid_argument("conjugate_algebra: singular basis change");
    int d = A.dim();
    std::vector<std::vector<GVec>> c(d, std::vector<GVec>(d, GVec(d)));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            GVec pi(d), pj(d);
            for (int k = 0; k < d; ++k) {
                pi[k] = P[k][i];
                pj[k] = P[k][j];
            }
            c[i][j] = gmat_apply(*Pinv, A.mul(pi, pj));
        }
    return StructureAlgebra(std::move(c), gmat_apply(*Pinv, A.unit()), A.labels(), A.weights());
}

} // namespace ncpt
