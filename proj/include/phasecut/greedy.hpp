#pragma once

#include <vector>

#include "phasecut/operators.hpp"
#include "phasecut/types.hpp"

namespace phasecut {

struct GreedyTrace {
  int iterations = 0;
  std::vector<double> objective_history;  // u*Mu per update, or ||y - AA+y||^2 per iteration
  bool converged = false;
  double final_residual = 0.0;
};

struct GsResult {
  Vec y;  // final iterate with |y| = b
  Vec x;  // least-squares signal for y
  GreedyTrace trace;
};

/// Alternating projections between {|y| = b} and the range of A (the
/// image of R^p under A for real_signal problems). Coordinates where
/// the range projection vanishes keep their previous phase.
GsResult gerchberg_saxton(const PhaseProblem& problem, Vec y0, int max_iter = 2000,
                          double tol = 1e-10);

struct GreedyPhaseResult {
  Vec u;
  GreedyTrace trace;
};

/// Cyclic coordinate minimization of u*Mu over unit-modulus u. Each
/// update is the exact single-coordinate minimizer, so the recorded
/// objective history is non-increasing.
GreedyPhaseResult greedy_phase(const Mat& M, Vec u0, int max_sweeps = 2000, double tol = 1e-10);

/// Gerchberg-Saxton restart from the phases of A x_tilde (section 4.7
/// style post-processing of SDP solutions).
Vec refine(const PhaseProblem& problem, const Vec& x_tilde, int max_iter = 2000);

}  // namespace phasecut
