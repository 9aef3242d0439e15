#include "phasecut/greedy.hpp"

#include <cmath>
#include <stdexcept>

namespace phasecut {

namespace {

/// b_i * phase(z_i), keeping the previous phase where z_i = 0.
Vec magnitude_fit(const RealVec& b, const Vec& z, const Vec& previous) {
  Vec y(b.size());
  for (Index i = 0; i < b.size(); ++i) {
    const double a = std::abs(z[i]);
    y[i] = (a > 0.0) ? b[i] * z[i] / a : previous[i];
  }
  return y;
}

}  // namespace

GsResult gerchberg_saxton(const PhaseProblem& problem, Vec y0, int max_iter, double tol) {
  const RealVec& b = problem.b;
  if (y0.size() != b.size()) throw std::invalid_argument("gerchberg_saxton: shape mismatch");
  for (Index i = 0; i < b.size(); ++i)
    if (std::abs(std::abs(y0[i]) - b[i]) > 1e-10 * (1.0 + b[i]))
      throw std::invalid_argument("gerchberg_saxton: |y0| != b");
  if (max_iter < 1) throw std::invalid_argument("gerchberg_saxton: max_iter must be >= 1");

  GsResult res;
  res.y = std::move(y0);
  res.trace.objective_history.reserve(max_iter);
  const double stop = tol * b.norm();

  for (int k = 0; k < max_iter; ++k) {
    const Vec proj = project_onto_range(problem, res.y);
    res.trace.objective_history.push_back((res.y - proj).squaredNorm());
    Vec next = magnitude_fit(b, proj, res.y);
    const double step = (next - res.y).norm();
    res.y = std::move(next);
    ++res.trace.iterations;
    if (step <= stop) {
      res.trace.converged = true;
      break;
    }
  }

  const Vec proj = project_onto_range(problem, res.y);
  res.trace.final_residual = (res.y - proj).norm();
  if (problem.real_signal) {
    RealVec y2(2 * b.size());
    y2 << res.y.real(), res.y.imag();
    res.x = (problem.realified->A2_pinv * y2).cast<cx>();
  } else {
    res.x = problem.ensemble->apply_pinv(res.y);
  }
  return res;
}

GreedyPhaseResult greedy_phase(const Mat& M, Vec u0, int max_sweeps, double tol) {
  const Index n = M.rows();
  if (u0.size() != n) throw std::invalid_argument("greedy_phase: shape mismatch");
  for (Index i = 0; i < n; ++i)
    if (std::abs(std::abs(u0[i]) - 1.0) > 1e-10)
      throw std::invalid_argument("greedy_phase: |u0| != 1");

  GreedyPhaseResult res;
  res.u = std::move(u0);
  Vec z = M * res.u;  // maintained incrementally across updates
  double objective = std::real(res.u.dot(z));
  res.trace.objective_history.reserve(std::size_t(max_sweeps) * std::size_t(n));

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    const double sweep_start = objective;
    for (Index i = 0; i < n; ++i) {
      // Off-diagonal coupling: conj(s_i) = (Mu)_i - M_ii u_i; the exact
      // minimizer of 2 Re(u_i s_i) over |u_i| = 1 is -conj(s_i)/|s_i|.
      const cx coupling = z[i] - M(i, i) * res.u[i];
      const double mag = std::abs(coupling);
      if (mag > 0.0) {
        const cx updated = -coupling / mag;
        const cx delta = updated - res.u[i];
        if (delta != cx(0.0)) {
          objective += 2.0 * std::real(std::conj(delta) * coupling);
          z += M.col(i) * delta;
          res.u[i] = updated;
        }
      }
      res.trace.objective_history.push_back(objective);
    }
    ++res.trace.iterations;
    objective = std::real(res.u.dot(z));  // kill incremental drift once per sweep
    const double decrease = sweep_start - objective;
    if (decrease <= tol * (1.0 + std::abs(objective))) {
      res.trace.converged = true;
      break;
    }
  }
  res.trace.final_residual = objective;
  return res;
}

Vec refine(const PhaseProblem& problem, const Vec& x_tilde, int max_iter) {
  if (!x_tilde.allFinite()) throw std::invalid_argument("refine: non-finite x");
  const Vec ax = problem.ensemble->apply(x_tilde);
  Vec y0(problem.b.size());
  for (Index i = 0; i < y0.size(); ++i) {
    const double a = std::abs(ax[i]);
    y0[i] = (a > 0.0) ? problem.b[i] * ax[i] / a : cx(problem.b[i], 0.0);
  }
  return gerchberg_saxton(problem, std::move(y0), max_iter).x;
}

}  // namespace phasecut
