#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "mhdshock/model.hpp"
#include "mhdshock/schur.hpp"
#include "mhdshock/shock.hpp"

namespace mhdshock {

/// Frequency pair (lambda, omega) in S+ = (closure of C+ x R) \ {(0,0)}.
struct SpectralPoint {
    Complex lambda;
    double omega;
};

/// Lopatinski determinant value with its basis-independent diagnostics.
struct DeltaValue {
    Complex delta;
    double sigma_min;        ///< smallest singular value of the Lopatinski matrix
    int dim_stable_minus;    ///< d^-
    int dim_unstable_plus;   ///< d^+
    bool regularized;        ///< true if obtained as an eps -> 0 axis limit
    double eps;              ///< regularization parameter used (0 if none)
};

/// L(s) = (lambda I + i omega B(s)) A(s)^-1.
inline Matrix5c lopatinski_matrix(const State& s, const SpectralPoint& pt)
{
    const ModelMatrices m = model_matrices(s);

    Eigen::JacobiSVD<Matrix5> svd(m.A);
    const double smin = svd.singularValues().minCoeff();
    const double smax = svd.singularValues().maxCoeff();
    if (smin == 0.0 || smax / smin > 1e12)
        throw Error(ErrorKind::SingularA, "A(s) numerically singular (characteristic state)");

    const Matrix5 a_inv = m.A.partialPivLu().inverse();
    const Matrix5c numerator =
        pt.lambda * Matrix5c::Identity() + Complex(0.0, pt.omega) * m.B.cast<Complex>();
    return numerator * a_inv.cast<Complex>();
}

/// Orthonormal basis of the stable (Re < 0) invariant subspace of L, with
/// deterministic column phases. Fails if the eigenvalue count differs from
/// `expected_dim` or any eigenvalue sits within `split_tol` of the axis.
inline Eigen::Matrix<Complex, 5, Eigen::Dynamic> stable_basis(const Matrix5c& l, int expected_dim,
                                                              double split_tol = 1e-10)
{
    return schur::signed_invariant_subspace(l, expected_dim, true, split_tol);
}

/// Mirror of stable_basis for the unstable (Re > 0) subspace.
inline Eigen::Matrix<Complex, 5, Eigen::Dynamic> unstable_basis(const Matrix5c& l, int expected_dim,
                                                                double split_tol = 1e-10)
{
    return schur::signed_invariant_subspace(l, expected_dim, false, split_tol);
}

/// J(lambda, omega) = lambda (U^+ - U^-) + i omega (G(U^+) - G(U^-)).
inline Vector5c jump_vector(const ShockWave& s, const SpectralPoint& pt)
{
    const Vector5 du = conserved(s.right) - conserved(s.left);
    const Vector5 dg = flux_g(s.right) - flux_g(s.left);
    return pt.lambda * du.cast<Complex>() + Complex(0.0, pt.omega) * dg.cast<Complex>();
}

/// Reference bases used to keep the (basis-dependent) value of delta
/// comparable across nearby evaluations: columns of subsequent evaluations
/// are permuted and phase-rotated to maximize overlap with the reference.
/// sigma_min is unaffected. First use captures the reference.
struct BasisRef {
    bool set = false;
    Eigen::Matrix<Complex, 5, Eigen::Dynamic> stable_minus;
    Eigen::Matrix<Complex, 5, Eigen::Dynamic> unstable_plus;
};

namespace detail {

/// Greedy overlap matching of `cur` columns onto `ref` columns, then a phase
/// rotation making each matched inner product real positive.
inline void align_columns(Eigen::Matrix<Complex, 5, Eigen::Dynamic>& cur,
                          const Eigen::Matrix<Complex, 5, Eigen::Dynamic>& ref)
{
    const int n = static_cast<int>(cur.cols());
    if (n == 0 || ref.cols() != n) return;

    Eigen::Matrix<Complex, 5, Eigen::Dynamic> out(5, n);
    std::vector<bool> used(n, false);
    for (int i = 0; i < n; ++i) {
        int best = -1;
        double best_mag = -1.0;
        Complex best_dot;
        for (int j = 0; j < n; ++j) {
            if (used[j]) continue;
            const Complex dot = ref.col(i).dot(cur.col(j));
            if (std::abs(dot) > best_mag) {
                best_mag = std::abs(dot);
                best = j;
                best_dot = dot;
            }
        }
        used[best] = true;
        out.col(i) = cur.col(best);
        if (best_mag > 0.0) out.col(i) *= std::conj(best_dot) / best_mag;
    }
    cur = out;
}

inline std::pair<int, int> lax_dims(const ShockWave& s)
{
    switch (s.lax_type) {
        case LaxType::Slow: return {1, 3};
        case LaxType::Fast: return {0, 4};
        case LaxType::None: break;
    }
    throw Error(ErrorKind::Domain, "delta requires a classified slow or fast Lax shock");
}

}  // namespace detail

/// Lopatinski determinant at an interior point Re lambda > 0. Columns are the
/// stable basis of L^-, the unit-normalized jump vector, and the unstable
/// basis of L^+.
inline DeltaValue delta(const ShockWave& s, const SpectralPoint& pt, BasisRef* ref = nullptr)
{
    if (!(pt.lambda.real() > 0.0))
        throw Error(ErrorKind::Domain, "delta requires Re lambda > 0; use delta_on_axis on the axis");
    const auto [dm, dp] = detail::lax_dims(s);

    const Matrix5c lm = lopatinski_matrix(s.left, pt);
    const Matrix5c lp = lopatinski_matrix(s.right, pt);
    auto rm = stable_basis(lm, dm);
    auto rp = unstable_basis(lp, dp);

    if (ref) {
        if (ref->set) {
            detail::align_columns(rm, ref->stable_minus);
            detail::align_columns(rp, ref->unstable_plus);
        } else {
            ref->stable_minus = rm;
            ref->unstable_plus = rp;
            ref->set = true;
        }
    }

    Vector5c j = jump_vector(s, pt);
    const double jn = j.norm();
    if (jn < 1e-14)
        throw Error(ErrorKind::ZeroJump, "jump vector too small to normalize");
    j /= jn;

    Matrix5c mat;
    mat.block(0, 0, 5, dm) = rm;
    mat.col(dm) = j;
    mat.block(0, dm + 1, 5, dp) = rp;

    DeltaValue out;
    // Determinant of the matrix with the true (unnormalized) jump column, so
    // delta is degree-one homogeneous in (lambda, omega); sigma_min is taken
    // from the column-normalized matrix.
    out.delta = jn * mat.determinant();
    Eigen::JacobiSVD<Matrix5c> svd(mat);
    out.sigma_min = svd.singularValues().minCoeff();
    out.dim_stable_minus = dm;
    out.dim_unstable_plus = dp;
    out.regularized = false;
    out.eps = 0.0;
    return out;
}

/// Axis value Delta(i gamma, omega) as the Kreiss limit from the interior:
/// two Richardson extrapolations at eps-separated offsets, cross-checked
/// against each other. sigma_min is extrapolated alongside and clamped at 0.
inline DeltaValue delta_on_axis(const ShockWave& s, double gamma, double omega, double eps = 1e-7,
                                BasisRef* ref = nullptr)
{
    if (!(eps > 0.0)) throw Error(ErrorKind::Domain, "eps must be positive");
    if (gamma == 0.0 && omega == 0.0)
        throw Error(ErrorKind::Domain, "(0, 0) excluded from S+");

    const double scale = std::max(1.0, std::abs(gamma));
    const double e = eps * scale;

    BasisRef local;
    BasisRef* anchor = ref ? ref : &local;
    auto at = [&](double x) { return delta(s, {Complex(x, gamma), omega}, anchor); };
    const DeltaValue dh = at(0.5 * e);
    const DeltaValue d1 = at(e);
    const DeltaValue d2 = at(2.0 * e);

    const Complex coarse = 2.0 * d1.delta - d2.delta;
    const Complex fine = 2.0 * dh.delta - d1.delta;
    const double disc = std::abs(fine - coarse);
    if (disc > 0.1 * std::max(std::abs(fine), std::abs(coarse)) && disc > 1e-9)
        throw Error(ErrorKind::AxisUnresolved,
                    "axis limit not resolved at this eps; shrink eps (possible glancing point)");

    DeltaValue out = d1;
    out.delta = fine;
    out.sigma_min = std::max(0.0, 2.0 * dh.sigma_min - d1.sigma_min);
    out.regularized = true;
    out.eps = eps;
    return out;
}

/// Closed-form Lopatinski bases of the parallel-shock axis limit at
/// (lambda, omega) = (0, 1): the single stable column of L^- and the three
/// unstable columns of L^+. Assembled with the jump direction (0,0,i,0,0)
/// their determinant is 2i [rho^+ (a^2+1) - (a^2+2)].
inline std::pair<Vector5c, Eigen::Matrix<Complex, 5, 3>> theorem1_vectors(double a, double rho_plus)
{
    if (!(rho_plus > 1.0))
        throw Error(ErrorKind::Domain, "theorem1_vectors requires rho_plus > 1");

    const double sq = std::sqrt(rho_plus);
    const Complex arg(
        (a * a - rho_plus) * (a * a / rho_plus - 1.0 / (1.0 - rho_plus)), 0.0);

    Vector5c r_minus;
    r_minus << Complex(1.0), Complex(sq), -Complex(0.0, 1.0) * std::sqrt(arg), Complex(a),
        Complex(0.0);

    Eigen::Matrix<Complex, 5, 3> r_plus;
    r_plus.setZero();
    r_plus(0, 0) = sq;
    r_plus(0, 1) = a * (rho_plus - 1.0);
    r_plus(1, 0) = 2.0;
    r_plus(2, 2) = -a * sq;
    r_plus(3, 1) = 2.0;
    r_plus(4, 2) = 1.0;
    return {r_minus, r_plus};
}

/// The determinant identity of the closed-form bases: det(R^-, (0,0,i,0,0), R^+).
inline Complex theorem1_determinant(double a, double rho_plus)
{
    const auto [rm, rp] = theorem1_vectors(a, rho_plus);
    Matrix5c mat;
    mat.col(0) = rm;
    mat.col(1) << Complex(0.0), Complex(0.0), Complex(0.0, 1.0), Complex(0.0), Complex(0.0);
    mat.block<5, 3>(0, 2) = rp;
    return mat.determinant();
}

}  // namespace mhdshock
