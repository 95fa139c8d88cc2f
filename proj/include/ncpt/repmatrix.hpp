#pragma once

/**
 * @file repmatrix.hpp
 * @brief Clock-and-shift matrix representation of the rational 2-torus.
 *
 * For n = 2 and theta_12 = p/q the pair
 *
 *     U_1 -> Q = diag(1, w, ..., w^{q-1}),   U_2 -> P = cyclic shift,
 *
 * with w = exp(2 pi i p/q) satisfies U_1 U_2 = w U_2 U_1 in matrices, so the
 * assignment extends to a ring homomorphism on finitely supported elements.
 * This is the independent oracle the twisted convolution is validated against.
 */

#include <Eigen/Dense>

#include "nctorus.hpp"

namespace ncpt {

inline Eigen::MatrixXcd rep_clock(long long p, long long q) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(q, q);
    for (long long j = 0; j < q; ++j)
        m(j, j) = phase_to_scalar(PhaseQ(p * j, q));
    return m;
}

inline Eigen::MatrixXcd rep_shift(long long q) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(q, q);
    for (long long j = 0; j < q; ++j) m((j + 1) % q, j) = 1.0;
    return m;
}

inline Eigen::MatrixXcd mat_int_pow(const Eigen::MatrixXcd& m, long long e) {
    long long q = m.rows();
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(q, q);
    Eigen::MatrixXcd base = e >= 0 ? m : Eigen::MatrixXcd(m.inverse());
    for (long long i = 0; i < (e >= 0 ? e : -e); ++i) acc = acc * base;
    return acc;
}

/// Matrix image of a finitely supported element; n = 2, rational theta only.
inline Eigen::MatrixXcd rep_matrix(const NcTorusElement& a) {
    if (a.n() != 2) throw std::invalid_argument("rep_matrix: only n = 2 supported");
    Rat t = a.theta().at(0, 1);
    long long p = t.num(), q = t.den();
    Eigen::MatrixXcd U1 = rep_clock(p, q);
    Eigen::MatrixXcd U2 = rep_shift(q);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(q, q);
    for (auto& [k, v] : a.coeffs())
        out += v * (mat_int_pow(U1, k[0]) * mat_int_pow(U2, k[1]));
    return out;
}

inline double mat_max_norm(const Eigen::MatrixXcd& m) {
    return m.cwiseAbs().maxCoeff();
}

} // namespace ncpt
