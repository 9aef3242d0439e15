#pragma once

#include <vector>

#include "phasecut/operators.hpp"
#include "phasecut/types.hpp"

namespace phasecut {

struct LiftState {
  Mat X;  // p x p, PSD
  Mat W;  // reweighting matrix, identity for the plain penalty
  int outer_k = 0;
  double lambda = 0.0;
  double step = 0.0;
  double residual = 0.0;  // sum_i (Tr(a_i a_i* X) - b_i^2)^2
  std::vector<double> objective_history;
  bool converged = false;
};

/// Penalized lift: min_{X >= 0} sum_i (Tr(a_i a_i* X) - b_i^2)^2 +
/// lambda Tr(X), solved by accelerated projected gradient with a
/// monotone (backtracked) objective. step0 < 0 picks 1/L from a power
/// iteration on the quadratic term.
LiftState phaselift_penalized(const PhaseProblem& problem, double lambda, int inner_iters,
                              double step0 = -1.0);

/// K reweighted rounds, replacing Tr(X) by Tr(W_k X) with
/// W_{k+1} = (X_k + eta I)^{-1}. eta < 0 selects 1e-2 Tr(X_k)/p per
/// round; lambda shrinks by 0.5 per round.
LiftState phaselift_reweighted(const PhaseProblem& problem, int K, double eta, double lambda,
                               int inner_iters);

/// Feasibility-only variant (lambda = 0).
LiftState weak_phaselift(const PhaseProblem& problem, int inner_iters);

/// Phi(X) = diag(b)^-1 A X A* diag(b)^-1, the feasible-set bijection
/// between the lifted programs. Requires b > 0 elementwise.
Mat phi_map(const Mat& X, const MeasurementEnsemble& e, const RealVec& b);

/// Inverse map X = A+ diag(b) U diag(b) A+*.
Mat phi_inverse(const Mat& U, const MeasurementEnsemble& e, const RealVec& b);

struct RealSdpResult {
  RealMat V;  // 2n x 2n, PSD with V_ii + V_{n+i,n+i} = 1
  double objective = 0.0;
  double constraint_violation = 0.0;
  bool converged = false;
  int iterations = 0;
};

/// Projected gradient on Tr(V M2) over {V PSD, V_ii + V_{n+i,n+i} = 1},
/// alternating projections between the two sets, started from I/2.
RealSdpResult solve_real_sdp(const RealMat& M2, int inner_iters);

/// Leading eigenvector scaled by sqrt(lambda_1).
Vec extract_signal(const Mat& X);

/// lambda_1 / lambda_2 of a PSD matrix (clamped away from 0/0).
double leading_ratio(const Mat& X);
double leading_ratio(const RealMat& X);

}  // namespace phasecut
