#pragma once

/**
 * @file nctorus.hpp
 * @brief Arithmetic of the smooth noncommutative n-torus on finitely
 *        supported Fourier data.
 *
 * Generators U_1..U_n obey U_r U_s = exp(2*pi*i*theta_rs) U_s U_r and words
 * are normal-ordered as U^k = U_1^{k_1} ... U_n^{k_n}. The reordering cocycle
 *
 *     sigma(k, l) = sum_{r > s} theta_rs * k_r * l_s   (mod 1)
 *
 * is kept as an exact rational phase; coefficients are complex doubles pruned
 * below the global tolerance. Elements are immutable values.
 */

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "phase.hpp"
#include "rational.hpp"

namespace ncpt {

using MultiIndex = std::vector<long long>;

inline MultiIndex mi_add(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}
inline MultiIndex mi_neg(const MultiIndex& a) {
    MultiIndex r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}
inline MultiIndex mi_unit(int n, int r) {
    MultiIndex k(n, 0);
    k[r] = 1;
    return k;
}
inline bool mi_is_zero(const MultiIndex& a) {
    return std::all_of(a.begin(), a.end(), [](long long x) { return x == 0; });
}

/// Skew-symmetric rational matrix of commutation exponents.
class ThetaMatrix {
    int n_ = 0;
    std::vector<std::vector<Rat>> e_;

public:
    ThetaMatrix() = default;
    explicit ThetaMatrix(int n) : n_(n), e_(n, std::vector<Rat>(n)) {}
    ThetaMatrix(std::vector<std::vector<Rat>> entries) : e_(std::move(entries)) {
        n_ = int(e_.size());
        for (auto& row : e_)
            if (int(row.size()) != n_) throw std::invalid_argument("ThetaMatrix: not square");
        for (int r = 0; r < n_; ++r) {
            if (!e_[r][r].is_zero()) throw std::invalid_argument("ThetaMatrix: nonzero diagonal");
            for (int s = 0; s < r; ++s)
                if (e_[r][s] != -e_[s][r]) throw std::invalid_argument("ThetaMatrix: not skew-symmetric");
        }
    }

    /// n = 2 with the single parameter theta_12.
    static ThetaMatrix two_torus(const Rat& theta12) {
        ThetaMatrix t(2);
        t.e_[0][1] = theta12;
        t.e_[1][0] = -theta12;
        return t;
    }

    int n() const { return n_; }
    const Rat& at(int r, int s) const { return e_[r][s]; }
    const std::vector<std::vector<Rat>>& entries() const { return e_; }

    bool operator==(const ThetaMatrix& o) const { return n_ == o.n_ && e_ == o.e_; }
    bool operator!=(const ThetaMatrix& o) const { return !(*this == o); }
};

/// Normal-ordering cocycle: U^k U^l = exp(2 pi i sigma(k,l)) U^{k+l}.
inline PhaseQ sigma(const ThetaMatrix& theta, const MultiIndex& k, const MultiIndex& l) {
    if (int(k.size()) != theta.n() || int(l.size()) != theta.n())
        throw std::invalid_argument("sigma: dimension mismatch");
    Rat acc;
    for (int r = 1; r < theta.n(); ++r)
        for (int s = 0; s < r; ++s)
            if (k[r] != 0 && l[s] != 0) acc += theta.at(r, s) * Rat(k[r] * l[s]);
    return PhaseQ(acc);
}

/// Involution phase: (U^k)* = exp(2 pi i star_phase(k)) U^{-k}.
inline PhaseQ star_phase(const ThetaMatrix& theta, const MultiIndex& k) {
    return sigma(theta, k, k);
}

/// A single exact monomial phi * U^k; the phase group of the algebra.
struct Monomial {
    PhaseQ phase;
    MultiIndex k;
};

inline Monomial mono_mul(const ThetaMatrix& theta, const Monomial& a, const Monomial& b) {
    return {a.phase + b.phase + sigma(theta, a.k, b.k), mi_add(a.k, b.k)};
}
inline Monomial mono_inverse(const ThetaMatrix& theta, const Monomial& a) {
    return {-a.phase - sigma(theta, a.k, mi_neg(a.k)), mi_neg(a.k)};
}
inline Monomial mono_pow(const ThetaMatrix& theta, const Monomial& a, long long p) {
    Monomial base = p >= 0 ? a : mono_inverse(theta, a);
    long long reps = p >= 0 ? p : -p;
    Monomial acc{PhaseQ(), MultiIndex(a.k.size(), 0)};
    for (long long i = 0; i < reps; ++i) acc = mono_mul(theta, acc, base);
    return acc;
}

class NcTorusElement {
    ThetaMatrix theta_;
    std::map<MultiIndex, CScalar> coeffs_;

    void prune() {
        for (auto it = coeffs_.begin(); it != coeffs_.end();)
            it = std::abs(it->second) <= tolerance() ? coeffs_.erase(it) : std::next(it);
    }

public:
    explicit NcTorusElement(ThetaMatrix theta) : theta_(std::move(theta)) {}
    NcTorusElement(ThetaMatrix theta, std::map<MultiIndex, CScalar> coeffs)
        : theta_(std::move(theta)), coeffs_(std::move(coeffs)) {
        for (auto& [k, v] : coeffs_)
            if (int(k.size()) != theta_.n()) throw std::invalid_argument("NcTorusElement: bad index length");
        prune();
    }

    static NcTorusElement zero(const ThetaMatrix& theta) { return NcTorusElement(theta); }
    static NcTorusElement monomial(const ThetaMatrix& theta, const MultiIndex& k, CScalar c) {
        return NcTorusElement(theta, {{k, c}});
    }
    static NcTorusElement monomial(const ThetaMatrix& theta, const Monomial& m, CScalar scale = {1.0, 0.0}) {
        return monomial(theta, m.k, scale * phase_to_scalar(m.phase));
    }
    static NcTorusElement one(const ThetaMatrix& theta) {
        return monomial(theta, MultiIndex(theta.n(), 0), {1.0, 0.0});
    }
    static NcTorusElement generator(const ThetaMatrix& theta, int r) {
        return monomial(theta, mi_unit(theta.n(), r), {1.0, 0.0});
    }

    const ThetaMatrix& theta() const { return theta_; }
    const std::map<MultiIndex, CScalar>& coeffs() const { return coeffs_; }
    int n() const { return theta_.n(); }
    bool is_zero() const { return coeffs_.empty(); }

    CScalar coeff(const MultiIndex& k) const {
        auto it = coeffs_.find(k);
        return it == coeffs_.end() ? CScalar(0.0, 0.0) : it->second;
    }

    double norm_l1() const {
        double s = 0.0;
        for (auto& [k, v] : coeffs_) s += std::abs(v);
        return s;
    }

    bool approx_equal(const NcTorusElement& o) const {
        if (theta_ != o.theta_) return false;
        for (auto& [k, v] : coeffs_)
            if (!approx_eq(v, o.coeff(k))) return false;
        for (auto& [k, v] : o.coeffs_)
            if (!approx_eq(v, coeff(k))) return false;
        return true;
    }
};

inline void require_same_theta(const NcTorusElement& a, const NcTorusElement& b) {
    if (a.theta() != b.theta()) throw std::invalid_argument("nctorus: theta mismatch");
}

inline NcTorusElement add(const NcTorusElement& a, const NcTorusElement& b) {
    require_same_theta(a, b);
    std::map<MultiIndex, CScalar> c = a.coeffs();
    for (auto& [k, v] : b.coeffs()) c[k] += v;
    return NcTorusElement(a.theta(), std::move(c));
}

inline NcTorusElement scale(const NcTorusElement& a, CScalar s) {
    std::map<MultiIndex, CScalar> c;
    for (auto& [k, v] : a.coeffs()) c[k] = v * s;
    return NcTorusElement(a.theta(), std::move(c));
}

inline NcTorusElement sub(const NcTorusElement& a, const NcTorusElement& b) {
    return add(a, scale(b, {-1.0, 0.0}));
}

/// Twisted convolution: (a b)_m = sum_{k+l=m} exp(2 pi i sigma(k,l)) a_k b_l.
inline NcTorusElement multiply(const NcTorusElement& a, const NcTorusElement& b) {
    require_same_theta(a, b);
    std::map<MultiIndex, CScalar> c;
    for (auto& [k, av] : a.coeffs())
        for (auto& [l, bv] : b.coeffs())
            c[mi_add(k, l)] += av * bv * phase_to_scalar(sigma(a.theta(), k, l));
    return NcTorusElement(a.theta(), std::move(c));
}

/// Involution: conjugate-linear, antimultiplicative, (U_r)* = U_r^{-1}.
inline NcTorusElement star(const NcTorusElement& a) {
    std::map<MultiIndex, CScalar> c;
    for (auto& [k, v] : a.coeffs())
        c[mi_neg(k)] = std::conj(v) * phase_to_scalar(star_phase(a.theta(), k));
    return NcTorusElement(a.theta(), std::move(c));
}

/// Exact phase by which act(t, .) scales the degree-k mode.
inline PhaseQ act_phase(const TorusPoint& t, const MultiIndex& k) {
    if (t.size() != k.size()) throw std::invalid_argument("act: dimension mismatch");
    PhaseQ p;
    for (size_t r = 0; r < t.size(); ++r) p = p + t[r] * k[r];
    return p;
}

/// Torus action: the degree-k coefficient picks up t^k.
inline NcTorusElement act(const TorusPoint& t, const NcTorusElement& a) {
    if (int(t.size()) != a.n()) throw std::invalid_argument("act: dimension mismatch");
    std::map<MultiIndex, CScalar> c;
    for (auto& [k, v] : a.coeffs()) c[k] = v * phase_to_scalar(act_phase(t, k));
    return NcTorusElement(a.theta(), std::move(c));
}

inline NcTorusElement isotypic_component(const NcTorusElement& a, const MultiIndex& k) {
    std::map<MultiIndex, CScalar> c;
    auto it = a.coeffs().find(k);
    if (it != a.coeffs().end()) c[k] = it->second;
    return NcTorusElement(a.theta(), std::move(c));
}

// ---------------------------------------------------------------------------
// Invertibility certification

enum class InvertTag { Invertible, Zero, Unknown };
enum class InvertCertificate { Monomial, Neumann };

struct InvertibilityVerdict {
    InvertTag tag = InvertTag::Unknown;
    InvertCertificate certificate = InvertCertificate::Monomial;
    double residual = 0.0; // l1 norm of a*inverse - 1 for Neumann
    NcTorusElement inverse;

    explicit InvertibilityVerdict(const ThetaMatrix& theta)
        : inverse(NcTorusElement::zero(theta)) {}
};

namespace detail {
inline NcTorusElement monomial_inverse_elem(const NcTorusElement& a) {
    auto& [k, v] = *a.coeffs().begin();
    Monomial inv = mono_inverse(a.theta(), Monomial{PhaseQ(), k});
    return NcTorusElement::monomial(a.theta(), inv, CScalar(1.0, 0.0) / v);
}
} // namespace detail

/**
 * Certified three-valued invertibility check.
 *
 * Monomial certificate: a = lambda U^k. Neumann certificate: some monomial
 * term m of a has ||m^{-1} a - 1||_1 < 1, so the geometric series converges
 * in l1; the series is truncated once the tail bound drops below tolerance.
 * The product check a * inverse ~ 1 is rerun before returning Invertible.
 * Unknown is a value: failure to certify is not a proof of non-invertibility.
 */
inline InvertibilityVerdict certify_invertible(const NcTorusElement& a) {
    InvertibilityVerdict out(a.theta());
    if (a.is_zero()) {
        out.tag = InvertTag::Zero;
        return out;
    }
    if (a.coeffs().size() == 1) {
        NcTorusElement inv = detail::monomial_inverse_elem(a);
        NcTorusElement check = multiply(a, inv);
        if (sub(check, NcTorusElement::one(a.theta())).norm_l1() <= tolerance()) {
            out.tag = InvertTag::Invertible;
            out.certificate = InvertCertificate::Monomial;
            out.inverse = inv;
            return out;
        }
        return out; // float surprise; stay Unknown
    }

    // leading-term candidates, largest modulus first
    std::vector<std::pair<double, MultiIndex>> cand;
    for (auto& [k, v] : a.coeffs()) cand.push_back({std::abs(v), k});
    std::sort(cand.begin(), cand.end(), [](auto& x, auto& y) {
        if (x.first != y.first) return x.first > y.first;
        return x.second < y.second;
    });

    for (auto& [mod, k] : cand) {
        NcTorusElement lead = NcTorusElement::monomial(a.theta(), k, a.coeff(k));
        NcTorusElement m = detail::monomial_inverse_elem(lead);
        NcTorusElement x = sub(multiply(m, a), NcTorusElement::one(a.theta()));
        double q = x.norm_l1();
        if (q >= 1.0) continue;
        // (1+x)^{-1} = sum (-x)^j, truncated when the l1 tail bound is below tol
        NcTorusElement series = NcTorusElement::one(a.theta());
        NcTorusElement term = NcTorusElement::one(a.theta());
        double tail = q / (1.0 - q);
        while (tail > tolerance()) {
            term = scale(multiply(term, x), {-1.0, 0.0});
            series = add(series, term);
            tail *= q;
        }
        NcTorusElement inv = multiply(series, m);
        double residual = sub(multiply(a, inv), NcTorusElement::one(a.theta())).norm_l1();
        if (residual <= 1e-6) {
            out.tag = InvertTag::Invertible;
            out.certificate = InvertCertificate::Neumann;
            out.residual = residual;
            out.inverse = inv;
            return out;
        }
    }
    return out;
}

} // namespace ncpt
