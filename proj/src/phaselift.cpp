#include "phasecut/phaselift.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "phasecut/linalg.hpp"
#include "phasecut/rng.hpp"

namespace phasecut {

namespace {

/// r_i = Tr(a_i a_i* X) - b_i^2, assembled through A-products.
RealVec lift_residual(const Mat& A, const Mat& X, const RealVec& bsq) {
  const Mat Y = A * X;
  return (Y.cwiseProduct(A.conjugate())).rowwise().sum().real() - bsq;
}

/// Gradient of the smooth part: 2 A* diag(r) A + lambda W.
Mat lift_gradient(const Mat& A, const RealVec& r, double lambda, const Mat& W) {
  const Mat RA = r.cast<cx>().asDiagonal() * A;
  Mat G = 2.0 * (A.adjoint() * RA);
  if (lambda != 0.0) G += lambda * W;
  return hermitize(G);
}

double lift_objective(double residual_sq, double lambda, const Mat& W, const Mat& X) {
  double value = residual_sq;
  if (lambda != 0.0) value += lambda * (W.cwiseProduct(X.conjugate())).sum().real();
  return value;
}

/// Largest eigenvalue of the (constant) quadratic-term Hessian
/// D -> 2 A* diag(diag(A D A*)) A, by power iteration.
double quadratic_lipschitz(const Mat& A) {
  const Index p = A.cols();
  Rng rng(0x11f7);
  Mat D = Mat(p, p);
  for (Index j = 0; j < p; ++j)
    for (Index i = 0; i < p; ++i) D(i, j) = rng.complex_normal();
  D = hermitize(D);
  double lambda_est = 1.0;
  for (int it = 0; it < 20; ++it) {
    D /= std::max(D.norm(), 1e-300);
    const RealVec d = (A * D).cwiseProduct(A.conjugate()).rowwise().sum().real();
    const Mat HD = 2.0 * (A.adjoint() * (d.cast<cx>().asDiagonal() * A));
    lambda_est = std::max(HD.norm(), 1e-300);
    D = hermitize(HD);
  }
  return lambda_est;
}

/// One monotone accelerated projected-gradient round on the current
/// penalty (Tr(W X) weight lambda); X is updated in place. The gradient
/// step is 1/L with L the exact Lipschitz constant of the quadratic
/// term; a safety backtrack halves it only on non-finite blowups. The
/// recorded objective never increases: a worse proposal keeps the
/// previous iterate and restarts the momentum.
void lift_round(const Mat& A, const RealVec& bsq, double lambda, const Mat& W, int inner_iters,
                double step0, LiftState& state) {
  Mat X = state.X;
  Mat Y = X;
  double t_momentum = 1.0;
  double step = step0;

  double f_x = lift_objective(lift_residual(A, X, bsq).squaredNorm(), lambda, W, X);
  const double floor_value = 1e-26 * (1.0 + bsq.squaredNorm());
  int stalled = 0;

  for (int it = 0; it < inner_iters; ++it) {
    const RealVec r_y = lift_residual(A, Y, bsq);
    const Mat G = lift_gradient(A, r_y, lambda, W);

    Mat Z = psd_project(Y - step * G);
    if (!Z.allFinite()) {
      step *= 0.5;
      Y = X;
      t_momentum = 1.0;
      continue;
    }
    const double f_z = lift_objective(lift_residual(A, Z, bsq).squaredNorm(), lambda, W, Z);

    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_momentum * t_momentum));
    const double decrease = f_x - f_z;
    if (f_z <= f_x) {
      const Mat X_prev = X;
      X = Z;
      f_x = f_z;
      Y = X + ((t_momentum - 1.0) / t_next) * (X - X_prev);
      t_momentum = t_next;
    } else {
      // Momentum overshoot: keep X, take the next step unaccelerated.
      Y = X;
      t_momentum = 1.0;
    }
    stalled = decrease <= 1e-15 * (1.0 + std::abs(f_x)) ? stalled + 1 : 0;
    state.objective_history.push_back(f_x);

    if (f_x <= floor_value) break;
    if (stalled >= 8) break;  // plain steps stopped improving
  }

  state.X = X;
  state.step = step;
  state.residual = lift_residual(A, X, bsq).squaredNorm();
  state.converged = true;
}

}  // namespace

LiftState phaselift_penalized(const PhaseProblem& problem, double lambda, int inner_iters,
                              double step0) {
  if (lambda < 0.0) throw std::invalid_argument("phaselift_penalized: lambda must be >= 0");
  const Mat& A = problem.ensemble->A;
  const Index p = A.cols();
  const RealVec bsq = problem.b.cwiseAbs2();

  LiftState state;
  state.X = Mat::Zero(p, p);
  state.W = Mat::Identity(p, p);
  state.lambda = lambda;
  if (step0 <= 0.0) step0 = 0.9 / quadratic_lipschitz(A);
  state.step = step0;
  lift_round(A, bsq, lambda, state.W, inner_iters, step0, state);
  state.outer_k = 1;
  return state;
}

LiftState phaselift_reweighted(const PhaseProblem& problem, int K, double eta, double lambda,
                               int inner_iters) {
  if (K < 1) throw std::invalid_argument("phaselift_reweighted: K must be >= 1");
  const Mat& A = problem.ensemble->A;
  const Index p = A.cols();
  const RealVec bsq = problem.b.cwiseAbs2();
  if (lambda < 0.0) lambda = 1e-3 * bsq.norm();

  LiftState state;
  state.X = Mat::Zero(p, p);
  state.W = Mat::Identity(p, p);
  const double step0 = 0.9 / quadratic_lipschitz(A);

  for (int k = 0; k < K; ++k) {
    state.lambda = lambda * std::pow(0.5, k);
    lift_round(A, bsq, state.lambda, state.W, inner_iters, step0, state);
    state.outer_k = k + 1;
    if (k + 1 < K) {
      const double eta_k = eta > 0.0 ? eta : 1e-2 * state.X.trace().real() / double(p);
      state.W = hermitize(
          (state.X + std::max(eta_k, 1e-12) * Mat::Identity(p, p)).inverse());
    }
  }
  return state;
}

LiftState weak_phaselift(const PhaseProblem& problem, int inner_iters) {
  return phaselift_penalized(problem, 0.0, inner_iters);
}

Mat phi_map(const Mat& X, const MeasurementEnsemble& e, const RealVec& b) {
  if (b.minCoeff() <= 0.0) throw std::domain_error("phi_map: requires b > 0");
  const Vec binv = b.cwiseInverse().cast<cx>();
  return hermitize(binv.asDiagonal() * (e.A * X * e.A.adjoint()) * binv.asDiagonal());
}

Mat phi_inverse(const Mat& U, const MeasurementEnsemble& e, const RealVec& b) {
  if (b.minCoeff() <= 0.0) throw std::domain_error("phi_inverse: requires b > 0");
  const Vec bd = b.cast<cx>();
  return hermitize(e.pinv * bd.asDiagonal() * U * bd.asDiagonal() * e.pinv.adjoint());
}

namespace {

/// Orthogonal projection onto {V : V_ii + V_{n+i,n+i} = 1}.
void project_pair_diagonal(RealMat& V) {
  const Index n = V.rows() / 2;
  for (Index i = 0; i < n; ++i) {
    const double excess = 0.5 * (V(i, i) + V(n + i, n + i) - 1.0);
    V(i, i) -= excess;
    V(n + i, n + i) -= excess;
  }
}

RealMat psd_project_real(const RealMat& S) {
  Eigen::SelfAdjointEigenSolver<RealMat> es(0.5 * (S + S.transpose()));
  const RealVec clipped = es.eigenvalues().cwiseMax(0.0);
  RealMat P = es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().transpose();
  return 0.5 * (P + P.transpose());
}

}  // namespace

namespace {

/// Dykstra's alternating projections onto {PSD} and the pair-sum
/// affine set: converges to the exact projection onto the intersection.
RealMat project_feasible(const RealMat& X0, int max_rounds = 64, double tol = 1e-11) {
  RealMat X = X0;
  RealMat correction = RealMat::Zero(X0.rows(), X0.cols());
  for (int round = 0; round < max_rounds; ++round) {
    const RealMat Y = psd_project_real(X + correction);
    correction += X - Y;
    RealMat Z = Y;
    project_pair_diagonal(Z);
    const double move = (Z - X).norm();
    X = Z;
    if (move <= tol * std::sqrt(double(X.rows()))) break;
  }
  return X;
}

}  // namespace

RealSdpResult solve_real_sdp(const RealMat& M2, int inner_iters) {
  const Index m = M2.rows();
  if (m % 2 != 0 || M2.cols() != m) throw std::invalid_argument("solve_real_sdp: M2 must be 2n x 2n");
  const Index n = m / 2;

  Eigen::SelfAdjointEigenSolver<RealMat> es(M2, Eigen::EigenvaluesOnly);
  const double norm_m = es.eigenvalues().cwiseAbs().maxCoeff();

  RealSdpResult res;
  res.V = 0.5 * RealMat::Identity(m, m);
  if (norm_m == 0.0) {
    res.converged = true;
    return res;
  }

  // Projected gradient with a growing step: later iterations approach
  // proximal-point steps, which drive the linear objective to its face.
  double step = 1.0 / norm_m;
  for (int it = 0; it < inner_iters; ++it) {
    const RealMat next = project_feasible(res.V - step * M2);
    const double move = (next - res.V).norm();
    res.V = next;
    ++res.iterations;
    step = std::min(step * 1.5, 1e8 / norm_m);
    if (move <= 1e-10 * std::sqrt(double(m)) && it > 2) {
      res.converged = true;
      break;
    }
  }

  double pair_violation = 0.0;
  for (Index i = 0; i < n; ++i)
    pair_violation = std::max(pair_violation, std::abs(res.V(i, i) + res.V(n + i, n + i) - 1.0));
  Eigen::SelfAdjointEigenSolver<RealMat> ev(res.V, Eigen::EigenvaluesOnly);
  res.constraint_violation =
      std::max(pair_violation, std::max(0.0, -ev.eigenvalues().minCoeff()));
  res.objective = (res.V.cwiseProduct(M2)).sum();
  return res;
}

Vec extract_signal(const Mat& X) {
  const EigDecomposition eig = eig_hermitian(X);
  const Index p = X.rows();
  const double lead = std::max(eig.eigenvalues[p - 1], 0.0);
  return eig.eigenvectors.col(p - 1) * std::sqrt(lead);
}

double leading_ratio(const Mat& X) {
  const EigDecomposition eig = eig_hermitian(X);
  const Index p = X.rows();
  const double lead = eig.eigenvalues[p - 1];
  const double second = p > 1 ? eig.eigenvalues[p - 2] : 0.0;
  return lead / std::max(second, 1e-16 * std::max(lead, 1.0));
}

double leading_ratio(const RealMat& X) {
  Eigen::SelfAdjointEigenSolver<RealMat> es(X, Eigen::EigenvaluesOnly);
  const Index p = X.rows();
  const double lead = es.eigenvalues()[p - 1];
  const double second = p > 1 ? es.eigenvalues()[p - 2] : 0.0;
  return lead / std::max(second, 1e-16 * std::max(lead, 1.0));
}

}  // namespace phasecut
