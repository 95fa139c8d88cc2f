#pragma once

/**
 * @file phase.hpp
 * @brief Phases in Q/Z, complex scalars with a global tolerance, and
 *        exact Gaussian rationals.
 *
 * A PhaseQ q denotes the complex number exp(2*pi*i*q). Phases add and negate
 * modulo 1 and equality is exact, so cocycle identities and holonomies are
 * decidable. CScalar comparisons go through the single global tolerance knob.
 */

#include <complex>
#include <optional>
#include <vector>

#include "rational.hpp"

namespace ncpt {

using CScalar = std::complex<double>;

inline double& tolerance_ref() {
    static double tol = 1e-9;
    return tol;
}
inline double tolerance() { return tolerance_ref(); }
inline void set_tolerance(double t) { tolerance_ref() = t; }

inline bool approx_eq(const CScalar& a, const CScalar& b) {
    return std::abs(a.real() - b.real()) <= tolerance() &&
           std::abs(a.imag() - b.imag()) <= tolerance();
}
inline bool approx_zero(const CScalar& a) { return approx_eq(a, CScalar(0.0, 0.0)); }

/// Element of Q/Z, stored as a reduced rational in [0,1).
class PhaseQ {
    Rat q_;

    void wrap() { q_ = q_ - Rat(q_.floor()); }

public:
    PhaseQ() = default;
    explicit PhaseQ(const Rat& r) : q_(r) { wrap(); }
    PhaseQ(long long num, long long den) : q_(num, den) { wrap(); }

    const Rat& value() const { return q_; }
    bool is_zero() const { return q_.is_zero(); }

    PhaseQ operator+(const PhaseQ& o) const { return PhaseQ(q_ + o.q_); }
    PhaseQ operator-(const PhaseQ& o) const { return PhaseQ(q_ - o.q_); }
    PhaseQ operator-() const { return PhaseQ(-q_); }
    PhaseQ operator*(long long n) const { return PhaseQ(q_ * Rat(n)); }

    bool operator==(const PhaseQ& o) const { return q_ == o.q_; }
    bool operator!=(const PhaseQ& o) const { return !(*this == o); }
    bool operator<(const PhaseQ& o) const { return q_ < o.q_; }

    std::string str() const { return q_.str(); }
};

/// exp(2*pi*i*q). Quarter turns are emitted exactly.
inline CScalar phase_to_scalar(const PhaseQ& q) {
    const Rat& v = q.value();
    if (v == Rat(0)) return {1.0, 0.0};
    if (v == Rat(1, 2)) return {-1.0, 0.0};
    if (v == Rat(1, 4)) return {0.0, 1.0};
    if (v == Rat(3, 4)) return {0.0, -1.0};
    double ang = 2.0 * 3.14159265358979323846264338327950288 * v.to_double();
    return {std::cos(ang), std::sin(ang)};
}

/// Point of T^n with rational angles; componentwise group structure.
using TorusPoint = std::vector<PhaseQ>;

inline TorusPoint torus_add(const TorusPoint& a, const TorusPoint& b) {
    TorusPoint r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}
inline TorusPoint torus_neg(const TorusPoint& a) {
    TorusPoint r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

/// Exact complex number over Q: re + i*im.
struct GaussRational {
    Rat re, im;

    GaussRational() = default;
    GaussRational(const Rat& r) : re(r) {}
    GaussRational(const Rat& r, const Rat& i) : re(r), im(i) {}
    GaussRational(long long n) : re(n) {}

    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    GaussRational operator+(const GaussRational& o) const { return {re + o.re, im + o.im}; }
    GaussRational operator-(const GaussRational& o) const { return {re - o.re, im - o.im}; }
    GaussRational operator-() const { return {-re, -im}; }
    GaussRational operator*(const GaussRational& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    GaussRational conj() const { return {re, -im}; }
    Rat norm() const { return re * re + im * im; }
    GaussRational operator/(const GaussRational& o) const {
        Rat n = o.norm();
        if (n.is_zero()) throw std::domain_error("GaussRational: division by zero");
        GaussRational t = *this * o.conj();
        return {t.re / n, t.im / n};
    }

    GaussRational& operator+=(const GaussRational& o) { return *this = *this + o; }
    GaussRational& operator-=(const GaussRational& o) { return *this = *this - o; }
    GaussRational& operator*=(const GaussRational& o) { return *this = *this * o; }

    bool operator==(const GaussRational& o) const { return re == o.re && im == o.im; }
    bool operator!=(const GaussRational& o) const { return !(*this == o); }

    CScalar to_complex() const { return {re.to_double(), im.to_double()}; }

    std::string str() const {
        if (im.is_zero()) return re.str();
        return re.str() + (im > Rat(0) ? "+" : "") + im.str() + "i";
    }
};

/// exp(2*pi*i*q) as an exact Gaussian rational, when the phase is a quarter turn.
inline std::optional<GaussRational> phase_to_gauss(const PhaseQ& q) {
    const Rat& v = q.value();
    if (v == Rat(0)) return GaussRational(Rat(1), Rat(0));
    if (v == Rat(1, 4)) return GaussRational(Rat(0), Rat(1));
    if (v == Rat(1, 2)) return GaussRational(Rat(-1), Rat(0));
    if (v == Rat(3, 4)) return GaussRational(Rat(0), Rat(-1));
    return std::nullopt;
}

} // namespace ncpt
