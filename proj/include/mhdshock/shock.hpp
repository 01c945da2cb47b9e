#pragma once

#include <cmath>
#include <optional>
#include <sstream>

#include "mhdshock/model.hpp"
#include "mhdshock/state.hpp"

namespace mhdshock {

enum class LaxType { Slow, Fast, None };

inline const char* to_string(LaxType t)
{
    switch (t) {
        case LaxType::Slow: return "slow";
        case LaxType::Fast: return "fast";
        case LaxType::None: return "none";
    }
    return "none";
}

/// Physical parameters of a shock family with rho^- = 1 fixed.
struct ShockParameters {
    double a;         ///< normal field component
    double rho_plus;  ///< downstream density, > 1
    double c;         ///< transverse Rankine-Hugoniot invariant
};

/// A standing planar shock: upstream state (x < 0), downstream state (x > 0),
/// and the scalar Rankine-Hugoniot invariants m, j, c (d = 0 hard-wired).
struct ShockWave {
    State left;   ///< upstream U^-
    State right;  ///< downstream U^+
    double m;     ///< mass flux rho v, > 0
    double j;     ///< normal momentum invariant
    double c;     ///< transverse invariant v b - a w
    LaxType lax_type;
};

/// Scalar profile function g^{amc}(v) = m (1+v^2)/v + (1/2) (m c / (m v - a^2))^2.
/// Roots of g = j in (0, a^2/m) give slow shocks; roots in (a^2/m, inf) fast ones.
inline double g_profile(double v, double a, double m, double c)
{
    if (!(v > 0.0))
        throw Error(ErrorKind::Domain, "g_profile requires v > 0");
    const double denom = m * v - a * a;
    if (denom == 0.0)
        throw Error(ErrorKind::Domain, "g_profile undefined at v = a^2/m");
    const double q = m * c / denom;
    return m * (1.0 + v * v) / v + 0.5 * q * q;
}

/// Strict Lax classification from the velocity/field inequalities.
inline LaxType classify(const ShockWave& s)
{
    const double asq = s.left.a * s.left.a;
    const double kl = s.left.rho * s.left.v * s.left.v;
    const double kr = s.right.rho * s.right.v * s.right.v;
    if (0.0 < kr && kr < kl && kl < asq) return LaxType::Slow;
    if (asq < kr && kr < kl) return LaxType::Fast;
    return LaxType::None;
}

/// Relative sup-norm Rankine-Hugoniot defect of the pair.
inline double rh_residual(const ShockWave& s)
{
    const Vector5 fl = flux_f(s.left);
    const Vector5 fr = flux_f(s.right);
    const double scale = std::max(1.0, fl.cwiseAbs().maxCoeff());
    return (fl - fr).cwiseAbs().maxCoeff() / scale;
}

namespace detail {

inline ShockWave assemble_shock(double a, double rho_plus, double c, double v_minus)
{
    const double m = v_minus;  // rho^- = 1
    const double v_plus = v_minus / rho_plus;

    auto side = [&](double rho, double v) {
        double b = 0.0;
        double w = 0.0;
        if (c != 0.0) {
            b = c * m / (m * v - a * a);
            w = a * b / m;
        }
        return State{rho, v, w, a, b};
    };

    ShockWave s;
    s.left = side(1.0, v_minus);
    s.right = side(rho_plus, v_plus);
    s.m = m;
    s.c = c;
    // j from RHred2 at the upstream state; avoids the g-profile pole when the
    // boundary case m v = a^2 is probed with c = 0.
    s.j = m * v_minus + 1.0 + 0.5 * s.left.b * s.left.b;
    s.lax_type = classify(s);
    return s;
}

}  // namespace detail

/// Parallel shock (w = b = 0, c = 0) with rho^- = 1: v^- = sqrt(rho^+),
/// v^+ = 1/sqrt(rho^+).
inline ShockWave parallel_shock(double a, double rho_plus)
{
    if (!(rho_plus > 1.0))
        throw Error(ErrorKind::NoShock, "parallel shock needs rho_plus > 1");
    return detail::assemble_shock(a, rho_plus, 0.0, std::sqrt(rho_plus));
}

enum class ShockBranch { Slow, Fast };

/// Constructs the shock with rho^- = 1 from (a, rho^+, c) by solving the scalar
/// equation h(v) = g(v; m=v) - g(v/rho^+; m=v) = 0 for the upstream velocity.
/// The slow branch confines v to (0, a^2/m), i.e. v < |a|; the fast branch to
/// v > |a|. Safeguarded Newton with bisection fallback inside a sign-change
/// bracket grown around the parallel seed v = sqrt(rho^+).
inline ShockWave solve_shock(const ShockParameters& p, ShockBranch branch = ShockBranch::Slow)
{
    const double a = p.a;
    const double rho_plus = p.rho_plus;
    const double c = p.c;

    if (!(rho_plus > 1.0))
        throw Error(ErrorKind::NoShock, "rho_plus <= 1 admits no shock (j/m <= 2)");

    const double aa = std::abs(a);
    const double v0 = std::sqrt(rho_plus);
    const bool slow = branch == ShockBranch::Slow;

    auto check_type = [&](const ShockWave& s) {
        const LaxType want = slow ? LaxType::Slow : LaxType::Fast;
        if (s.lax_type != want) {
            std::ostringstream os;
            os << "no strict " << to_string(want) << " Lax shock at a=" << a
               << " rho_plus=" << rho_plus << " c=" << c;
            throw Error(ErrorKind::NoShock, os.str());
        }
        return s;
    };

    if (c == 0.0) return check_type(parallel_shock(a, rho_plus));

    if (slow && !(v0 < aa))
        throw Error(ErrorKind::NoShock, "slow branch needs sqrt(rho_plus) < |a|");
    if (!slow && !(v0 > aa))
        throw Error(ErrorKind::NoShock, "fast branch needs sqrt(rho_plus) > |a|");

    // h is smooth on the branch interval and vanishes at v0 when c = 0.
    auto h = [&](double v) {
        return g_profile(v, a, v, c) - g_profile(v / rho_plus, a, v, c);
    };

    if (std::abs(h(v0)) <= 1e-13)
        return check_type(detail::assemble_shock(a, rho_plus, c, v0));

    // Grow a bracket geometrically around the seed, clipped to the branch
    // interval (v and v/rho_plus on the same side of a^2/m, i.e. v != |a|).
    const double guard = 1e-9;
    double lo = v0, hi = v0;
    bool bracketed = false;
    for (double eta = 1e-3; eta <= 1.0; eta *= 2.0) {
        if (slow) {
            lo = std::max(v0 * (1.0 - eta), guard);
            hi = std::min(v0 * (1.0 + eta), aa * (1.0 - guard));
        } else {
            lo = std::max(v0 * (1.0 - eta), aa * (1.0 + guard));
            hi = v0 * (1.0 + eta);
        }
        if (!(lo < hi)) continue;
        if (h(lo) * h(hi) < 0.0) {
            bracketed = true;
            break;
        }
    }
    if (!bracketed)
        throw Error(ErrorKind::NoShock, "no sign change of the profile equation in the branch bracket");

    // Reject ambiguous brackets instead of guessing between roots.
    {
        int changes = 0;
        const int n = 64;
        double prev = h(lo);
        for (int i = 1; i <= n; ++i) {
            const double v = lo + (hi - lo) * i / n;
            const double cur = h(v);
            if (prev * cur < 0.0) ++changes;
            prev = cur;
        }
        if (changes > 1)
            throw Error(ErrorKind::Converge, "multiple sign changes in the slow bracket; root ambiguous");
    }

    double vlo = lo, vhi = hi;
    double flo = h(vlo);
    double v = 0.5 * (vlo + vhi);
    bool converged = false;
    for (int it = 0; it < 200; ++it) {
        const double fv = h(v);
        if (std::abs(fv) <= 1e-13) {
            converged = true;
            break;
        }
        if (flo * fv < 0.0)
            vhi = v;
        else {
            vlo = v;
            flo = fv;
        }
        const double step = 1e-7 * v;
        const double dv = (h(v + step) - h(v - step)) / (2.0 * step);
        double vn = v - fv / dv;
        if (!(vn > vlo && vn < vhi)) vn = 0.5 * (vlo + vhi);  // bisection safeguard
        if (std::abs(vn - v) <= 1e-16 * std::abs(v)) {
            v = vn;
            converged = std::abs(h(v)) <= 1e-11;
            break;
        }
        v = vn;
    }
    if (!converged)
        throw Error(ErrorKind::Converge, "profile-equation iteration did not converge");

    return check_type(detail::assemble_shock(a, rho_plus, c, v));
}

}  // namespace mhdshock
