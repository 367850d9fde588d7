// SPDX-License-Identifier: Apache-2.0
//
// Dense complex-matrix primitives shared by the rest of the library:
// Hermitian square roots, overflow-safe log-determinants, linear solves and
// principal (inverse) square roots of diagonalizable matrices.
//
// Square roots and log-determinants of Hermitian inputs go through the
// Hermitian eigendecomposition rather than Cholesky: correlation matrices
// produced by narrow angle spreads are near-singular and may carry tiny
// negative eigenvalues from roundoff, which are clamped at zero.

#ifndef RISMIMO_MATRIX_KERNEL_HPP
#define RISMIMO_MATRIX_KERNEL_HPP

#include "rismimo/types.hpp"

namespace rismimo {

/// Absolute entrywise tolerance for Hermitian-input checks. Inputs come from
/// our own constructors; a violation indicates a bug upstream.
inline constexpr double kHermitianTol = 1e-12;

/// Max |A - A^H| entry, scaled check helper.
double hermiticity_defect(const CMat& a);

/// True if A is Hermitian to `tol` absolute entrywise.
bool is_hermitian(const CMat& a, double tol = kHermitianTol);

/// Principal square root S of a Hermitian PSD matrix, S * S^H = A.
/// Eigenvalues in [-1e-10 * lambda_max, 0) are clamped to zero; anything more
/// negative (or a non-Hermitian input) is rejected.
CMat hermitian_sqrt(const CMat& a);

/// log det(A) for Hermitian positive definite A, computed from eigenvalues so
/// the determinant itself is never formed. Rejects singular or indefinite
/// input with a condition diagnostic.
double logdet_hpd(const CMat& a);

/// log det(A) of a general square matrix via LU with complex logarithms.
/// Returns the complex value; callers assert the imaginary part when the
/// true value is known to be real.
Complex logdet_general(const CMat& a);

/// logdet_general for a matrix whose determinant is real positive in exact
/// arithmetic. The imaginary part of the summed principal logarithms is a
/// multiple of 2*pi plus roundoff; it is folded into (-pi, pi] and required
/// to be below 1e-8 in magnitude, naming `label` otherwise.
double logdet_real(const CMat& a, const char* label = "A");

/// Solve A X = B for square, numerically nonsingular A. Rejects
/// rank-deficient A with a smallest-pivot diagnostic naming `label`.
CMat solve_general(const CMat& a, const CMat& b, const char* label = "A");

/// Solve A^H X = B (the (.)^-H forms).
CMat solve_adjoint(const CMat& a, const CMat& b, const char* label = "A");

/// Principal square root of a general diagonalizable matrix. Eigenvalues are
/// mapped through the principal branch; eigenvalues with significantly
/// negative real part are rejected (naming `label`).
CMat principal_sqrt(const CMat& a, const char* label = "A");

/// Principal inverse square root of a general diagonalizable matrix. Every
/// eigenvalue must have positive real part.
CMat principal_inv_sqrt(const CMat& a, const char* label = "A");

}  // namespace rismimo

#endif
