#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "mhdshock/state.hpp"

namespace mhdshock {

/// Matrices of the quasilinear and symmetric-hyperbolic forms of the system,
/// in the variable ordering U = (rho, rho v, rho w, b1, b2).
struct ModelMatrices {
    Matrix5 A;        ///< quasilinear normal matrix, A = T D^-1 A_tilde T^-1
    Matrix5 B;        ///< quasilinear transverse matrix
    Matrix5 A_tilde;  ///< symmetric normal matrix of the primitive form
    Matrix5 B_tilde;  ///< symmetric transverse matrix
    Matrix5 D;        ///< diag(1/rho, rho, rho, 1, 1)
    Matrix5 T;        ///< dU/dU_tilde, block lower-triangular, det T = rho^2
};

namespace detail {

inline Matrix5 a_tilde(const State& s)
{
    Matrix5 m = Matrix5::Zero();
    m(0, 0) = s.v / s.rho;
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    m(1, 1) = s.rho * s.v;
    m(1, 4) = s.b;
    m(2, 2) = s.rho * s.v;
    m(2, 4) = -s.a;
    m(3, 3) = s.v;
    m(4, 1) = s.b;
    m(4, 2) = -s.a;
    m(4, 4) = s.v;
    return m;
}

inline Matrix5 b_tilde(const State& s)
{
    Matrix5 m = Matrix5::Zero();
    m(0, 0) = s.w / s.rho;
    m(0, 2) = 1.0;
    m(1, 1) = s.rho * s.w;
    m(1, 3) = -s.b;
    m(2, 0) = 1.0;
    m(2, 2) = s.rho * s.w;
    m(2, 3) = s.a;
    m(3, 1) = -s.b;
    m(3, 2) = s.a;
    m(3, 3) = s.w;
    m(4, 4) = s.w;
    return m;
}

}  // namespace detail

/// Assembles all matrices of the model at one state. T^-1 is formed from the
/// closed-form block inverse, not by generic inversion.
inline ModelMatrices model_matrices(const State& s)
{
    ModelMatrices m;
    m.A_tilde = detail::a_tilde(s);
    m.B_tilde = detail::b_tilde(s);

    m.D = Matrix5::Zero();
    m.D(0, 0) = 1.0 / s.rho;
    m.D(1, 1) = s.rho;
    m.D(2, 2) = s.rho;
    m.D(3, 3) = 1.0;
    m.D(4, 4) = 1.0;

    // T = [[1,0,0],[V, rho I2, 0],[0,0,I2]]
    m.T = Matrix5::Identity();
    m.T(1, 0) = s.v;
    m.T(2, 0) = s.w;
    m.T(1, 1) = s.rho;
    m.T(2, 2) = s.rho;

    Matrix5 t_inv = Matrix5::Identity();
    t_inv(1, 0) = -s.v / s.rho;
    t_inv(2, 0) = -s.w / s.rho;
    t_inv(1, 1) = 1.0 / s.rho;
    t_inv(2, 2) = 1.0 / s.rho;

    Matrix5 d_inv = Matrix5::Zero();
    d_inv(0, 0) = s.rho;
    d_inv(1, 1) = 1.0 / s.rho;
    d_inv(2, 2) = 1.0 / s.rho;
    d_inv(3, 3) = 1.0;
    d_inv(4, 4) = 1.0;

    m.A = m.T * d_inv * m.A_tilde * t_inv;
    m.B = m.T * d_inv * m.B_tilde * t_inv;
    return m;
}

/// Squared fast and slow magnetosonic speeds at a state, returned as
/// {c_s^2, c_f^2} with c_s <= c_f.
inline std::array<double, 2> magnetosonic_squared(const State& s)
{
    const double bsq = (s.a * s.a + s.b * s.b) / s.rho;
    const double sum = 1.0 + bsq;
    const double disc = std::sqrt(std::max(0.0, sum * sum - 4.0 * s.a * s.a / s.rho));
    return {0.5 * (sum - disc), 0.5 * (sum + disc)};
}

/// Eigenvalues of A(s) in ascending order: {v - c_f, v - c_s, v, v + c_s, v + c_f}.
inline Vector5 characteristic_speeds(const State& s)
{
    const auto [cs2, cf2] = magnetosonic_squared(s);
    const double cs = std::sqrt(std::max(0.0, cs2));
    const double cf = std::sqrt(std::max(0.0, cf2));
    Vector5 speeds;
    speeds << s.v - cf, s.v - cs, s.v, s.v + cs, s.v + cf;
    return speeds;
}

}  // namespace mhdshock
