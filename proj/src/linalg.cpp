#include "phasecut/linalg.hpp"

#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace phasecut {

namespace {

void require_finite(const Mat& M, const char* what) {
  if (!M.allFinite()) throw std::invalid_argument(std::string(what) + ": non-finite entry");
}

}  // namespace

EigDecomposition eig_hermitian(const Mat& H) {
  require_finite(H, "eig_hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(H);
  if (es.info() != Eigen::Success) throw std::runtime_error("eig_hermitian: solver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

Mat pseudoinverse(const Mat& A, double rank_tol) {
  require_finite(A, "pseudoinverse");
  if (A.size() == 0) return Mat::Zero(A.cols(), A.rows());
  Eigen::BDCSVD<Mat> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVec& s = svd.singularValues();
  const double cutoff = rank_tol * (s.size() > 0 ? s[0] : 0.0);
  RealVec inv = RealVec::Zero(s.size());
  for (Index i = 0; i < s.size(); ++i)
    if (s[i] > cutoff && s[i] > 0.0) inv[i] = 1.0 / s[i];
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

RealMat realify(const Mat& Z) {
  const Index n = Z.rows();
  RealMat T(2 * n, 2 * n);
  T.topLeftCorner(n, n) = Z.real();
  T.topRightCorner(n, n) = -Z.imag();
  T.bottomLeftCorner(n, n) = Z.imag();
  T.bottomRightCorner(n, n) = Z.real();
  return T;
}

Mat psd_project(const Mat& H) {
  EigDecomposition eig = eig_hermitian(hermitize(H));
  RealVec clipped = eig.eigenvalues.cwiseMax(0.0);
  return hermitize(eig.eigenvectors * clipped.asDiagonal() * eig.eigenvectors.adjoint());
}

double dist_to_F_oracle(const Mat& V, const Mat& A) {
  const Index n = V.rows();
  if (A.rows() != n) throw std::invalid_argument("dist_to_F_oracle: dimension mismatch");
  const double norm_v = spectral_norm_hermitian(V);
  if (lambda_min_hermitian(V) < -1e-8 * norm_v)
    throw std::domain_error("dist_to_F_oracle: V is not positive semidefinite");

  // Full unitary whose leading columns span range(A).
  Eigen::BDCSVD<Mat> svd(A, Eigen::ComputeFullU);
  const RealVec& s = svd.singularValues();
  const double cutoff = (s.size() > 0 ? s[0] : 0.0) * 1e-12;
  Index r = 0;
  while (r < s.size() && s[r] > cutoff) ++r;
  const Mat& T = svd.matrixU();

  Mat Vt = T.adjoint() * V * T;
  Mat Wt = Vt;
  Wt.bottomRightCorner(n - r, n - r).setZero();
  const Mat W = T * Wt * T.adjoint();
  return nuclear_norm(V - W);
}

Mat hermitize(const Mat& H) { return 0.5 * (H + H.adjoint()); }

double spectral_norm_hermitian(const Mat& H) {
  if (H.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(H, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double lambda_min_hermitian(const Mat& H) {
  if (H.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(H, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double nuclear_norm(const Mat& X) {
  if (X.size() == 0) return 0.0;
  Eigen::BDCSVD<Mat> svd(X);
  return svd.singularValues().sum();
}

}  // namespace phasecut
