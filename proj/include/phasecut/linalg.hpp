#pragma once

#include "phasecut/types.hpp"

namespace phasecut {

/// Eigendecomposition of a Hermitian matrix. Eigenvalues are sorted
/// ascending; eigenvector columns are orthonormal.
struct EigDecomposition {
  RealVec eigenvalues;
  Mat eigenvectors;
};

/// Dense Hermitian eigendecomposition. Throws std::invalid_argument on
/// non-finite input. Reconstruction error is within 1e-10 * ||H||_2.
EigDecomposition eig_hermitian(const Mat& H);

/// Moore-Penrose pseudoinverse via SVD. Singular values below
/// rank_tol * sigma_max are treated as zero.
Mat pseudoinverse(const Mat& A, double rank_tol = 1e-12);

/// Real embedding T(Z) = [[Re Z, -Im Z], [Im Z, Re Z]] of a Hermitian Z.
/// Satisfies Tr(T(Z)T(Y)) = 2 Tr(ZY) and preserves semidefiniteness.
RealMat realify(const Mat& Z);

/// Frobenius-nearest positive semidefinite matrix: eigenvalues clipped at 0.
Mat psd_project(const Mat& H);

/// Trace-norm distance from a PSD matrix V to the face
/// F = {V : (I - AA+) V (I - AA+) = 0} of the PSD cone, computed by the
/// basis-transform construction: rotate V into an orthonormal basis of
/// range(A) and its complement, zero the complement block, and return
/// the nuclear norm of the difference. Throws std::domain_error when V
/// is not PSD (lambda_min < -1e-8 * ||V||_2).
double dist_to_F_oracle(const Mat& V, const Mat& A);

// Small shared helpers.

/// (H + H*) / 2.
Mat hermitize(const Mat& H);

/// Spectral norm of a Hermitian matrix (max |eigenvalue|).
double spectral_norm_hermitian(const Mat& H);

double lambda_min_hermitian(const Mat& H);

/// Nuclear norm (sum of singular values) of an arbitrary matrix.
double nuclear_norm(const Mat& X);

}  // namespace phasecut
