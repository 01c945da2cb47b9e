#pragma once

#include <Eigen/Dense>

#include "mhdshock/errors.hpp"

namespace mhdshock {

using Vector5 = Eigen::Matrix<double, 5, 1>;
using Matrix5 = Eigen::Matrix<double, 5, 5>;
using Vector5c = Eigen::Matrix<std::complex<double>, 5, 1>;
using Matrix5c = Eigen::Matrix<std::complex<double>, 5, 5>;
using Complex = std::complex<double>;

/// One-sided fluid/field state of planar isothermal MHD. Pressure is never
/// stored: p = rho throughout (sound speed 1).
struct State {
    double rho;  ///< density, > 0
    double v;    ///< normal velocity
    double w;    ///< transverse velocity
    double a;    ///< normal magnetic field (constant across the shock)
    double b;    ///< transverse magnetic field

    bool valid() const noexcept { return rho > 0.0 && std::isfinite(rho); }
};

/// Conserved variables U = (rho, rho v, rho w, a, b).
inline Vector5 conserved(const State& s)
{
    Vector5 u;
    u << s.rho, s.rho * s.v, s.rho * s.w, s.a, s.b;
    return u;
}

/// Normal flux F(U). Fourth component is identically zero.
inline Vector5 flux_f(const State& s)
{
    const double p = s.rho;
    Vector5 f;
    f << s.rho * s.v,
        s.rho * s.v * s.v + p + 0.5 * (s.b * s.b - s.a * s.a),
        s.rho * s.v * s.w - s.a * s.b,
        0.0,
        s.b * s.v - s.w * s.a;
    return f;
}

/// Transverse flux G(U). Fifth component is identically zero.
inline Vector5 flux_g(const State& s)
{
    const double p = s.rho;
    Vector5 g;
    g << s.rho * s.w,
        s.rho * s.w * s.v - s.b * s.a,
        s.rho * s.w * s.w + p + 0.5 * (s.a * s.a - s.b * s.b),
        s.a * s.w - s.v * s.b,
        0.0;
    return g;
}

}  // namespace mhdshock
