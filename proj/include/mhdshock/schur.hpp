#pragma once

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <functional>

#include "mhdshock/errors.hpp"
#include "mhdshock/state.hpp"

namespace mhdshock {
namespace schur {

/// Swaps the adjacent diagonal entries k, k+1 of an upper-triangular complex
/// Schur factor T by a unitary Givens similarity, updating U accordingly.
inline void swap_adjacent(Matrix5c& T, Matrix5c& U, int k)
{
    const Complex l1 = T(k, k);
    const Complex l2 = T(k + 1, k + 1);
    const Complex t = T(k, k + 1);

    // Eigenvector of the 2x2 block for l2 is (t, l2 - l1); rotate it onto e1.
    const Complex v1 = t;
    const Complex v2 = l2 - l1;
    const double r = std::sqrt(std::norm(v1) + std::norm(v2));
    if (r < 1e-300) return;  // coincident eigenvalues, order immaterial

    const Complex c = std::conj(v1) / r;
    const Complex s = std::conj(v2) / r;
    // G = [[c, s], [-conj(s), conj(c)]] is unitary with G (v1,v2)^T = (r,0)^T.

    for (int j = k; j < 5; ++j) {
        const Complex x = T(k, j), y = T(k + 1, j);
        T(k, j) = c * x + s * y;
        T(k + 1, j) = -std::conj(s) * x + std::conj(c) * y;
    }
    for (int i = 0; i <= k + 1; ++i) {
        const Complex x = T(i, k), y = T(i, k + 1);
        T(i, k) = x * std::conj(c) + y * std::conj(s);
        T(i, k + 1) = -x * s + y * c;
    }
    for (int i = 0; i < 5; ++i) {
        const Complex x = U(i, k), y = U(i, k + 1);
        U(i, k) = x * std::conj(c) + y * std::conj(s);
        U(i, k + 1) = -x * s + y * c;
    }
    T(k + 1, k) = 0.0;
    T(k, k) = l2;
    T(k + 1, k + 1) = l1;
}

struct OrderedSchur {
    Matrix5c T;  ///< upper triangular, selected eigenvalues leading
    Matrix5c U;  ///< unitary, M = U T U^H
    int selected = 0;
};

/// Complex Schur decomposition with the eigenvalues satisfying `select` moved
/// to the leading diagonal block. Within each group, eigenvalues are sorted by
/// (Im, Re) so the factorization is deterministic.
inline OrderedSchur ordered_schur(const Matrix5c& M, const std::function<bool(Complex)>& select)
{
    Eigen::ComplexSchur<Matrix5c> cs(M, true);
    if (cs.info() != Eigen::Success)
        throw Error(ErrorKind::Converge, "complex Schur iteration failed");

    OrderedSchur out;
    out.T = cs.matrixT();
    out.U = cs.matrixU();

    auto key_less = [&](Complex x, Complex y) {
        const bool sx = select(x), sy = select(y);
        if (sx != sy) return sx;
        if (x.imag() != y.imag()) return x.imag() < y.imag();
        return x.real() < y.real();
    };

    // Bubble sort on the diagonal; adjacent transpositions only.
    for (int pass = 0; pass < 5; ++pass) {
        bool moved = false;
        for (int k = 0; k < 4; ++k) {
            if (key_less(out.T(k + 1, k + 1), out.T(k, k))) {
                swap_adjacent(out.T, out.U, k);
                moved = true;
            }
        }
        if (!moved) break;
    }

    for (int k = 0; k < 5; ++k)
        if (select(out.T(k, k))) ++out.selected;
    return out;
}

/// Fixes the phase of each column: the largest-modulus entry (lowest index on
/// ties) is rotated to the positive real axis.
template <typename Derived>
void fix_phases(Eigen::MatrixBase<Derived>& M)
{
    for (int k = 0; k < M.cols(); ++k) {
        int imax = 0;
        double best = std::abs(M(0, k));
        for (int i = 1; i < M.rows(); ++i) {
            const double mag = std::abs(M(i, k));
            if (mag > best) {
                best = mag;
                imax = i;
            }
        }
        if (best > 0.0) M.col(k) *= std::abs(M(imax, k)) / M(imax, k);
    }
}

/// Orthonormal basis of the invariant subspace of M for eigenvalues with the
/// requested real-part sign. `expected_dim` is enforced; eigenvalues closer
/// than `split_tol` to the imaginary axis are rejected.
inline Eigen::Matrix<Complex, 5, Eigen::Dynamic> signed_invariant_subspace(
    const Matrix5c& M, int expected_dim, bool negative_real_part, double split_tol = 1e-10)
{
    auto select = [negative_real_part](Complex z) {
        return negative_real_part ? z.real() < 0.0 : z.real() > 0.0;
    };
    OrderedSchur os = ordered_schur(M, select);

    for (int k = 0; k < 5; ++k)
        if (std::abs(os.T(k, k).real()) < split_tol)
            throw Error(ErrorKind::NeutralSplitting,
                        "Lopatinski eigenvalue within split_tol of the imaginary axis");

    if (os.selected != expected_dim)
        throw Error(ErrorKind::DimMismatch,
                    "invariant subspace dimension " + std::to_string(os.selected) +
                        " != expected " + std::to_string(expected_dim));

    Eigen::Matrix<Complex, 5, Eigen::Dynamic> basis = os.U.leftCols(expected_dim);
    fix_phases(basis);
    return basis;
}

}  // namespace schur
}  // namespace mhdshock
