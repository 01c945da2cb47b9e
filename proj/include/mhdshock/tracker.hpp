#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <vector>

#include "mhdshock/lopatinski.hpp"
#include "mhdshock/shock.hpp"

namespace mhdshock {

/// Closed-form critical downstream density of parallel shocks.
inline double critical_density(double a) { return (a * a + 2.0) / (a * a + 1.0); }

/// A point on the critical manifold: shock (R, a, c) has an axis zero of the
/// Lopatinski determinant at lambda = i gamma, omega = +1.
struct CriticalPoint {
    double a;
    double c;
    double R;         ///< critical rho^+
    double gamma;     ///< axis frequency
    double residual;  ///< sigma_min certificate of the zero
};

/// A point on an instability branch at fixed rho^+ = R(a0, c), a = a0 + xi.
struct ModePoint {
    double a0;
    double c;
    double xi;
    double alpha;  ///< Re lambda (growth rate)
    double beta;   ///< Im lambda (frequency)
    double residual;
};

struct RootOptions {
    double trust_radius = 0.5;
    double eps = 1e-7;       ///< axis regularization parameter
    double tol = 1e-10;      ///< sigma_min acceptance threshold
    double fd_step = 1e-7;   ///< finite-difference step scale
    int max_iter = 100;
};

/// Evaluates delta at lambda, regularizing along the real direction when the
/// iterate sits on or near the imaginary axis. Throws LeftHalfPlane for
/// Re lambda < -1e-6.
inline DeltaValue delta_regularized(const ShockWave& s, Complex lambda, double omega,
                                    double eps = 1e-7, BasisRef* ref = nullptr)
{
    if (lambda.real() < -1e-6)
        throw Error(ErrorKind::LeftHalfPlane, "iterate left the closed right half-plane");

    const double scale = std::max(1.0, std::abs(lambda));
    const double e = eps * scale;
    if (lambda.real() >= 4.0 * e) return delta(s, {lambda, omega}, ref);

    BasisRef local;
    BasisRef* anchor = ref ? ref : &local;
    const double base = std::max(lambda.real(), 0.0);
    const double im = lambda.imag();
    const DeltaValue dh = delta(s, {Complex(base + 0.5 * e, im), omega}, anchor);
    const DeltaValue d1 = delta(s, {Complex(base + e, im), omega}, anchor);

    DeltaValue out = d1;
    out.delta = 2.0 * dh.delta - d1.delta;
    out.sigma_min = std::max(0.0, 2.0 * dh.sigma_min - d1.sigma_min);
    out.regularized = true;
    out.eps = eps;
    return out;
}

/// Damped Newton search for a zero of Delta near lambda0. With
/// `axis_constrained` the iterate is held at lambda = i gamma and gamma alone
/// is adjusted (Gauss-Newton on |Delta|^2). Acceptance is by the
/// basis-independent sigma_min certificate.
inline Complex find_root(const ShockWave& s, double omega, Complex lambda0, bool axis_constrained,
                         const RootOptions& opt = {})
{
    BasisRef ref;
    auto f = [&](Complex z) { return delta_regularized(s, z, omega, opt.eps, &ref); };

    Complex lam = axis_constrained ? Complex(0.0, lambda0.imag()) : lambda0;

    auto clamp_trust = [&](Complex z) {
        const Complex d = z - lambda0;
        const double r = std::abs(d);
        if (r > opt.trust_radius) z = lambda0 + d * (opt.trust_radius / r);
        if (axis_constrained) z = Complex(0.0, z.imag());
        return z;
    };

    for (int it = 0; it < opt.max_iter; ++it) {
        const DeltaValue dv = f(lam);
        if (dv.sigma_min <= opt.tol) return lam;

        const double h = opt.fd_step * std::max(1.0, std::abs(lam));
        Complex proposal;
        if (axis_constrained) {
            const double g = lam.imag();
            const Complex df =
                (f(Complex(0.0, g + h)).delta - f(Complex(0.0, g - h)).delta) / (2.0 * h);
            const double dn = std::norm(df);
            if (dn == 0.0) throw Error(ErrorKind::Converge, "flat axis residual");
            const double step = (std::conj(df) * dv.delta).real() / dn;
            proposal = Complex(0.0, g - step);
        } else {
            const Complex df = (f(lam + h).delta - f(lam - h).delta) / (2.0 * h);
            if (df == Complex(0.0)) throw Error(ErrorKind::Converge, "flat residual");
            proposal = lam - dv.delta / df;
        }

        // Backtrack until the residual decreases.
        Complex next = clamp_trust(proposal);
        bool improved = false;
        for (double t = 1.0; t >= 1.0 / 64.0; t *= 0.5) {
            next = clamp_trust(lam + t * (proposal - lam));
            try {
                if (std::abs(f(next).delta) < std::abs(dv.delta)) {
                    improved = true;
                    break;
                }
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::LeftHalfPlane) throw;
            }
        }
        if (!improved) {
            // Stagnation: derivative-free descent of sigma_min.
            double radius = std::max(h, std::abs(proposal - lam) * 0.25);
            double best = dv.sigma_min;
            bool found = false;
            for (int shrink = 0; shrink < 20 && !found; ++shrink, radius *= 0.5) {
                for (const Complex dir :
                     {Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0, -1)}) {
                    const Complex cand = clamp_trust(lam + radius * dir);
                    try {
                        const double sig = f(cand).sigma_min;
                        if (sig < best) {
                            best = sig;
                            next = cand;
                            found = true;
                        }
                    } catch (const Error&) {
                    }
                }
            }
            if (!found) throw Error(ErrorKind::Converge, "Newton stagnated on sigma_min plateau");
        }
        lam = next;
    }
    throw Error(ErrorKind::Converge, "find_root exceeded max iterations");
}

/// Solves for (rho^+, gamma) such that the shock (rho^+, a, c) has an axis
/// zero at lambda = i gamma, omega = +1. Newton on the two real unknowns with
/// finite-difference Jacobian, seeded from the parallel closed form.
inline CriticalPoint solve_critical_point(double a, double c,
                                          std::optional<CriticalPoint> seed = std::nullopt,
                                          double axis_eps = 1e-7)
{
    double rho = seed ? seed->R : critical_density(a);
    double gamma = seed ? seed->gamma : 0.0;

    BasisRef ref;
    auto residual = [&](double r, double g) {
        const ShockWave s = solve_shock({a, r, c});
        return delta_on_axis(s, g, +1.0, axis_eps, &ref).delta;
    };

    Complex fv = residual(rho, gamma);
    bool converged = std::abs(fv) <= 1e-12;
    for (int it = 0; it < 50 && !converged; ++it) {
        const double hr = 1e-7 * std::max(1.0, std::abs(rho));
        const double hg = 1e-7 * std::max(1.0, std::abs(gamma));
        const Complex dr = (residual(rho + hr, gamma) - residual(rho - hr, gamma)) / (2.0 * hr);
        const Complex dg = (residual(rho, gamma + hg) - residual(rho, gamma - hg)) / (2.0 * hg);

        // 2x2 real system for the complex equation.
        const double det = dr.real() * dg.imag() - dg.real() * dr.imag();
        if (det == 0.0) throw Error(ErrorKind::Converge, "singular Jacobian in critical-point Newton");
        const double sr = (dg.imag() * fv.real() - dg.real() * fv.imag()) / det;
        const double sg = (dr.real() * fv.imag() - dr.imag() * fv.real()) / det;

        bool improved = false;
        for (double t = 1.0; t >= 1.0 / 64.0; t *= 0.5) {
            try {
                const Complex cand = residual(rho - t * sr, gamma - t * sg);
                if (std::abs(cand) < std::abs(fv)) {
                    rho -= t * sr;
                    gamma -= t * sg;
                    fv = cand;
                    improved = true;
                    break;
                }
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::NoShock && e.kind() != ErrorKind::AxisUnresolved) throw;
            }
        }
        if (!improved) break;
        converged = std::abs(fv) <= 1e-12;
    }

    const ShockWave s = solve_shock({a, rho, c});
    const double sigma = delta_on_axis(s, gamma, +1.0, axis_eps).sigma_min;
    if (!converged || sigma > 1e-8)
        throw Error(ErrorKind::Converge, "critical-point Newton did not reach residual 1e-8");
    return {a, c, rho, gamma, sigma};
}

struct CriticalTrace {
    std::vector<CriticalPoint> points;
    bool hit_existence_boundary = false;  ///< trace stopped early at NoShock
    int steps_requested = 0;
};

/// Natural continuation of the critical manifold over a monotone a-grid at
/// fixed c; each point is seeded by the previous solution.
inline CriticalTrace trace_critical_curve(double c, double a_from, double a_to, int steps,
                                          double axis_eps = 1e-7,
                                          std::optional<CriticalPoint> seed0 = std::nullopt)
{
    if (!(a_from > 0.0)) throw Error(ErrorKind::Domain, "a_from must be positive");
    if (steps < 2) throw Error(ErrorKind::Domain, "steps must be >= 2");

    CriticalTrace trace;
    trace.steps_requested = steps;
    std::optional<CriticalPoint> seed = seed0;
    for (int i = 0; i < steps; ++i) {
        const double a = a_from + (a_to - a_from) * i / (steps - 1);
        try {
            CriticalPoint cp = solve_critical_point(a, c, seed, axis_eps);
            seed = cp;
            trace.points.push_back(cp);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::NoShock) {
                trace.hit_existence_boundary = true;
                break;
            }
            std::ostringstream os;
            os << "critical trace failed at grid index " << i << " (a=" << a << "): " << e.what();
            throw Error(ErrorKind::Converge, os.str());
        }
    }
    return trace;
}

/// Continuation of the unstable mode lambda(xi) = alpha + i beta for
/// a = a0 + xi at fixed rho^+ = R(a0, c), starting from the axis zero.
inline std::vector<ModePoint> trace_instability(double a0, double c, double xi_max, int steps,
                                                const RootOptions& opt = {},
                                                std::optional<CriticalPoint> seed0 = std::nullopt)
{
    if (!(xi_max > 0.0)) throw Error(ErrorKind::Domain, "xi_max must be positive");
    if (steps < 2) throw Error(ErrorKind::Domain, "steps must be >= 2");

    const CriticalPoint cp = solve_critical_point(a0, c, seed0, opt.eps);

    std::vector<ModePoint> branch;
    branch.push_back({a0, c, 0.0, 0.0, cp.gamma, cp.residual});

    Complex lam(0.0, cp.gamma);
    for (int i = 1; i < steps; ++i) {
        const double xi = xi_max * i / (steps - 1);
        const ShockWave s = solve_shock({a0 + xi, cp.R, c});
        RootOptions local = opt;
        lam = find_root(s, +1.0, lam, false, local);
        const double sigma = delta_regularized(s, lam, +1.0, opt.eps).sigma_min;
        branch.push_back({a0, c, xi, lam.real(), lam.imag(), sigma});
    }
    return branch;
}

struct Theorem1Row {
    double a;
    double rho_formula;
    double rho_numeric;  ///< NaN when no slow shock exists at the formula density
    double gap;          ///< |rho_numeric - rho_formula|
    bool no_shock;
};

/// Bisection check of the closed-form critical density: locates the sign
/// change of the phase-aligned real part of the axis determinant in
/// rho^+ within [formula -/+ 0.1], clipped to the slow-shock region.
inline std::vector<Theorem1Row> verify_theorem1(const std::vector<double>& a_grid,
                                                double axis_eps = 1e-7)
{
    std::vector<Theorem1Row> rows;
    rows.reserve(a_grid.size());
    for (const double a : a_grid) {
        const double rf = critical_density(a);
        Theorem1Row row{a, rf, std::numeric_limits<double>::quiet_NaN(),
                        std::numeric_limits<double>::quiet_NaN(), false};

        // Slow parallel shocks require 1 < rho^+ < a^2.  Keep the bracket
        // away from the weak-shock limit rho^+ -> 1, where v - c_s -> 0 and
        // the stable/unstable splitting of the Lopatinski matrix degenerates.
        const double lo_lim = 1.0 + 1e-4;
        const double hi_lim = a * a * (1.0 - 1e-9);
        double lo = std::max(rf - 0.1, lo_lim);
        double hi = std::min(rf + 0.1, hi_lim);
        if (!(lo < hi) || !(rf > lo_lim) || !(rf < hi_lim)) {
            row.no_shock = true;
            rows.push_back(row);
            continue;
        }

        BasisRef ref;
        auto dval = [&](double rho) {
            return delta_on_axis(parallel_shock(a, rho), 0.0, +1.0, axis_eps, &ref).delta;
        };

        const Complex d_lo = dval(lo);
        const Complex d_hi = dval(hi);
        const Complex dir = d_hi - d_lo;
        if (std::abs(dir) == 0.0) throw Error(ErrorKind::NoBracket, "flat determinant over bracket");
        const Complex phase = std::conj(dir) / std::abs(dir);
        auto fval = [&](const Complex& d) { return (phase * d).real(); };

        double f_lo = fval(d_lo);
        double f_hi = fval(d_hi);
        if (f_lo * f_hi >= 0.0)
            throw Error(ErrorKind::NoBracket, "no sign change of the aligned determinant in bracket");

        for (int it = 0; it < 80 && hi - lo > 1e-12; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double f_mid = fval(dval(mid));
            if (f_lo * f_mid <= 0.0) {
                hi = mid;
                f_hi = f_mid;
            } else {
                lo = mid;
                f_lo = f_mid;
            }
        }
        row.rho_numeric = 0.5 * (lo + hi);
        row.gap = std::abs(row.rho_numeric - rf);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace mhdshock
