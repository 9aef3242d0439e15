#include "phasecut/phasecut_sdp.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "phasecut/greedy.hpp"
#include "phasecut/linalg.hpp"
#include "phasecut/rng.hpp"

namespace phasecut {

namespace {

double trace_product(const Mat& U, const Mat& M) {
  // Tr(UM) for Hermitian U, M.
  return U.cwiseProduct(M.conjugate()).sum().real();
}

Vec phases_of(const Vec& v) {
  Vec u(v.size());
  for (Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    u[i] = (a > 0.0) ? v[i] / a : cx(1.0, 0.0);
  }
  return u;
}

/// Optimality certificate for a vertex candidate: a greedy-stationary u
/// satisfies (Mu)_i = theta_i u_i with real theta; the complementary
/// dual shift w = -theta makes u a null vector of M + diag(w), so the
/// duality gap of uu* is exactly -n lambda_min(M + diag(w)) when that
/// matrix is (nearly) PSD.
struct VertexCertificate {
  bool accepted = false;
  Vec u;
  double objective = 0.0;
  double gap = 0.0;
};

VertexCertificate try_certify(const Mat& M, const Mat& U, double scale,
                              const PhaseCutOptions& opts) {
  VertexCertificate cert;
  const Index n = M.rows();
  Vec seed = phases_of(eig_hermitian(U).eigenvectors.col(n - 1));
  if (opts.polish_phases) seed = phases_of(opts.polish_phases(seed));
  GreedyPhaseResult polish = greedy_phase(M, std::move(seed), 300, 1e-14);
  const Vec& u = polish.u;
  const Vec mu = M * u;
  RealVec w(n);
  for (Index i = 0; i < n; ++i) {
    // theta_i = Re(conj(u_i) (Mu)_i); imaginary residue means u is not
    // stationary and the certificate will simply fail the PSD test.
    w[i] = -std::real(std::conj(u[i]) * mu[i]);
  }
  Mat shifted = M;
  shifted.diagonal() += w.cast<cx>();
  const double lmin = lambda_min_hermitian(shifted);
  if (lmin >= -opts.cert_tol * std::max(scale, 1e-300)) {
    cert.accepted = true;
    cert.u = u;
    cert.objective = std::real(u.dot(mu));
    cert.gap = double(n) * std::max(-lmin, 0.0);
  }
  return cert;
}

}  // namespace

void bcd_step(PhaseCutState& state, const Mat& M, Index i) {
  Mat& U = state.U;
  const Vec m_col = M.col(i);
  Vec w = U * m_col - U.col(i) * M(i, i);  // U_{i^c,i^c} M_{i^c,i} on i^c
  const double gamma = (w.dot(m_col) - std::conj(w[i]) * M(i, i)).real();

  if (gamma > 0.0) {
    w *= -std::sqrt((1.0 - state.nu) / gamma);
    w[i] = cx(1.0, 0.0);
  } else {
    w.setZero();
    w[i] = cx(1.0, 0.0);
  }
  U.col(i) = w;
  U.row(i) = w.adjoint();
  U(i, i) = cx(1.0, 0.0);
}

PhaseCutState solve_phasecut(const Mat& M, const PhaseCutOptions& opts) {
  const Index n = M.rows();
  if (M.cols() != n) throw std::invalid_argument("solve_phasecut: M must be square");
  if (!(opts.nu > 0.0 && opts.nu < 1.0))
    throw std::invalid_argument("solve_phasecut: nu must lie in (0, 1)");
  const double scale = spectral_norm_hermitian(M);
  if (opts.validate_input) {
    if (!M.allFinite()) throw std::invalid_argument("solve_phasecut: non-finite M");
    if (lambda_min_hermitian(M) < -1e-8 * scale)
      throw std::invalid_argument("solve_phasecut: M is not PSD within tolerance");
  }

  PhaseCutState state;
  state.U = Mat::Identity(n, n);
  state.nu = opts.nu;
  state.objective = trace_product(state.U, M);

  constexpr int kCertInterval = 10;
  constexpr int kStageSweepCap = 40;
  auto certify = [&]() {
    const VertexCertificate cert = try_certify(M, state.U, scale, opts);
    if (!cert.accepted) return false;
    state.U = cert.u * cert.u.adjoint();
    state.U.diagonal().setOnes();
    state.objective = cert.objective;
    state.dual_gap = cert.gap;
    state.converged = true;
    state.certified = true;
    return true;
  };

  int stage_sweeps = 0;
  for (state.sweep = 0; state.sweep < opts.max_sweeps;) {
    for (Index i = 0; i < n; ++i) bcd_step(state, M, i);
    state.U.diagonal().setOnes();
    ++state.sweep;
    ++stage_sweeps;

    const double objective = trace_product(state.U, M);
    const double decrease = state.objective - objective;
    state.objective = objective;
    // The fixed-nu limit is itself O(nu)-accurate, so on the way down a
    // stage only needs to stall at the nu scale; the floor runs to tol.
    const bool at_floor = !opts.continuation || state.nu <= opts.nu_floor;
    const double stall =
        at_floor ? opts.tol : std::max(opts.tol, 0.05 * state.nu);
    const bool stalled = decrease <= stall * (1.0 + std::abs(objective)) ||
                         (!at_floor && stage_sweeps >= kStageSweepCap);
    if (stalled || state.sweep % kCertInterval == 0) {
      if (certify()) return state;
    }
    if (stalled) {
      if (!at_floor) {
        state.nu = std::max(0.5 * state.nu, opts.nu_floor);
        stage_sweeps = 0;
        continue;
      }
      state.converged = true;
      break;
    }
  }

  state.dual_gap = state.objective - double(n) * lambda_min_hermitian(M);
  return state;
}

PhaseCutState solve_phasecut_mod(const Mat& M, const Mat& B, double gamma_pen,
                                 const PhaseCutOptions& opts) {
  if (B.rows() != M.rows() || B.cols() != M.cols())
    throw std::invalid_argument("solve_phasecut_mod: shape mismatch");
  if (gamma_pen < 0.0) {
    const double nb = spectral_norm_hermitian(B);
    gamma_pen = nb > 0.0 ? 1e-2 * spectral_norm_hermitian(M) / nb : 0.0;
  }
  if (gamma_pen == 0.0) return solve_phasecut(M, opts);
  return solve_phasecut(hermitize(M + gamma_pen * B), opts);
}

double dual_bound(const Mat& M, const RealVec& w) {
  const Index n = M.rows();
  if (w.size() != n) throw std::invalid_argument("dual_bound: length mismatch");
  Mat shifted = M;
  shifted.diagonal() += w.cast<cx>();
  return double(n) * lambda_min_hermitian(shifted) - w.sum();
}

namespace {

/// Root of sum_k [sigma/(g_k + mu) + t_k/(g_k + mu)^2] = 1 on
/// mu > -min(g); the left side is strictly decreasing with a pole at
/// -min(g), so a bracketed bisection always lands.
double pair_trace_multiplier(const Eigen::Vector2d& g, const Eigen::Vector2d& t, double sigma) {
  const double g_min = g.minCoeff();
  auto phi = [&](double mu) {
    double s = 0.0;
    for (int k = 0; k < 2; ++k) {
      const double den = g[k] + mu;
      s += sigma / den + t[k] / (den * den);
    }
    return s;
  };
  double dist = std::max(sigma, 1e-12);
  while (dist > 1e-300 && phi(-g_min + dist) < 1.0) dist *= 0.25;
  double lo = -g_min + dist;
  double hi = std::max(1.0, -g_min + 1.0);
  while (phi(hi) >= 1.0) hi = 2.0 * hi + 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (phi(mid) >= 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

namespace {

/// min v'Gv + 2v'c over ||v|| = 1 for 2x2 symmetric G: the classical
/// trust-region secular equation, hard case included.
Eigen::Vector2d unit_pair_minimizer(const Eigen::Matrix2d& G, const Eigen::Vector2d& c) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eg(G);
  const Eigen::Vector2d g = eg.eigenvalues();
  const Eigen::Matrix2d Q = eg.eigenvectors();
  const Eigen::Vector2d ct = Q.transpose() * c;
  const double cn = ct.norm();
  if (cn <= 1e-300) return Q.col(0);  // pure quadratic: bottom eigenvector

  auto psi = [&](double mu) {
    double s = 0.0;
    for (int k = 0; k < 2; ++k) {
      const double den = g[k] + mu;
      s += (ct[k] * ct[k]) / (den * den);
    }
    return s;
  };
  // Root of psi(mu) = 1 right of the pole at -g_min, unless the hard
  // case puts the whole solution mass on the second component.
  double dist = std::max(cn, 1e-12);
  while (dist > 1e-280 && psi(-g[0] + dist) < 1.0) dist *= 0.25;
  if (psi(-g[0] + dist) < 1.0) {
    // Hard case: v1 free at mu = -g1.
    const double v2 = (g[1] > g[0]) ? -ct[1] / (g[1] - g[0]) : 0.0;
    const double v1 = std::sqrt(std::max(0.0, 1.0 - v2 * v2));
    return Q * Eigen::Vector2d(v1, v2);
  }
  double lo = -g[0] + dist;
  double hi = std::max(1.0, -g[0] + 1.0) + cn;
  while (psi(hi) >= 1.0) hi = 2.0 * hi + 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (psi(mid) >= 1.0 ? lo : hi) = mid;
  }
  const double mu = 0.5 * (lo + hi);
  Eigen::Vector2d vt;
  for (int k = 0; k < 2; ++k) vt[k] = -ct[k] / (g[k] + mu);
  const double norm = vt.norm();
  return Q * (norm > 0.0 ? Eigen::Vector2d(vt / norm) : Eigen::Vector2d(1.0, 0.0));
}

/// Cyclic pair-coordinate descent on v'M2 v over unit pairs.
RealVec greedy_pairs_real(const RealMat& M2, RealVec v, int max_sweeps, double tol) {
  const Index n = M2.rows() / 2;
  RealVec z = M2 * v;
  double objective = v.dot(z);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    const double start = objective;
    for (Index i = 0; i < n; ++i) {
      const Index a = i, b = n + i;
      Eigen::Matrix2d G;
      G << M2(a, a), M2(a, b), M2(b, a), M2(b, b);
      const Eigen::Vector2d vp(v[a], v[b]);
      const Eigen::Vector2d c(z[a] - G(0, 0) * vp[0] - G(0, 1) * vp[1],
                              z[b] - G(1, 0) * vp[0] - G(1, 1) * vp[1]);
      const Eigen::Vector2d vnew = unit_pair_minimizer(G, c);
      const Eigen::Vector2d dv = vnew - vp;
      if (dv.squaredNorm() > 0.0) {
        z += M2.col(a) * dv[0] + M2.col(b) * dv[1];
        v[a] = vnew[0];
        v[b] = vnew[1];
      }
    }
    objective = v.dot(z);
    if (start - objective <= tol * (1.0 + std::abs(objective))) break;
  }
  return v;
}

struct RealVertexCertificate {
  bool accepted = false;
  RealVec v;
  double objective = 0.0;
  double gap = 0.0;
};

RealVec pair_phases_of(RealVec v) {
  const Index n = v.size() / 2;
  for (Index i = 0; i < n; ++i) {
    const double norm = std::hypot(v[i], v[n + i]);
    v[i] = norm > 0.0 ? v[i] / norm : 1.0;
    v[n + i] = norm > 0.0 ? v[n + i] / norm : 0.0;
  }
  return v;
}

RealVertexCertificate try_certify_real(const RealMat& M2, const RealMat& V, double scale,
                                       const PhaseCutOptions& opts) {
  RealVertexCertificate cert;
  const Index m = M2.rows();
  const Index n = m / 2;
  Eigen::SelfAdjointEigenSolver<RealMat> es(V);
  RealVec v0 = pair_phases_of(es.eigenvectors().col(m - 1));
  if (opts.polish_pairs) v0 = pair_phases_of(opts.polish_pairs(v0));
  const RealVec v = greedy_pairs_real(M2, v0, 300, 1e-14);
  const RealVec mv = M2 * v;
  RealMat shifted = M2;
  for (Index i = 0; i < n; ++i) {
    // At a pair-stationary v, (M2 v)_pair = -mu_i v_pair; shifting both
    // diagonal entries by mu_i puts v in the kernel.
    const double mu = -(v[i] * mv[i] + v[n + i] * mv[n + i]);
    shifted(i, i) += mu;
    shifted(n + i, n + i) += mu;
  }
  Eigen::SelfAdjointEigenSolver<RealMat> esh(shifted, Eigen::EigenvaluesOnly);
  const double lmin = esh.eigenvalues().minCoeff();
  if (lmin >= -opts.cert_tol * std::max(scale, 1e-300)) {
    cert.accepted = true;
    cert.v = v;
    cert.objective = v.dot(mv);
    cert.gap = double(n) * std::max(-lmin, 0.0);
  }
  return cert;
}

}  // namespace

void bcd_step_real(RealPhaseCutState& state, const RealMat& M2, Index i) {
  RealMat& V = state.V;
  const Index n = V.rows() / 2;
  const Index pair[2] = {i, n + i};

  Eigen::Matrix2d G;
  G << M2(pair[0], pair[0]), M2(pair[0], pair[1]), M2(pair[1], pair[0]), M2(pair[1], pair[1]);

  RealMat Mp(2 * n, 2);
  Mp.col(0) = M2.col(pair[0]);
  Mp.col(1) = M2.col(pair[1]);
  RealMat Yp(2 * n, 2);
  Yp.col(0) = V.col(pair[0]);
  Yp.col(1) = V.col(pair[1]);

  // W = V_RR M2_RP on the complement rows; the pair rows are zeroed.
  RealMat W = V * Mp - Yp * G;
  W.row(pair[0]).setZero();
  W.row(pair[1]).setZero();

  Eigen::Matrix2d T = Mp.transpose() * W;  // C' B C
  T = 0.5 * (T + T.transpose());

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eg(G);
  const Eigen::Vector2d g = eg.eigenvalues();
  const Eigen::Matrix2d Q = eg.eigenvectors();
  const Eigen::Vector2d t = (Q.transpose() * T * Q).diagonal().cwiseMax(0.0);

  const double mu = pair_trace_multiplier(g, t, state.sigma);
  Eigen::Vector2d inv_gm;
  for (int k = 0; k < 2; ++k) inv_gm[k] = 1.0 / std::max(g[k] + mu, 1e-300);
  const Eigen::Matrix2d Einv = Q * inv_gm.asDiagonal() * Q.transpose();
  const Eigen::Matrix2d S = state.sigma * Einv;
  Eigen::Matrix2d D = S + Einv * T * Einv;
  D = 0.5 * (D + D.transpose());

  RealMat Ynew = -W * Einv;  // pair rows are zero and get overwritten below
  Ynew(pair[0], 0) = D(0, 0);
  Ynew(pair[1], 0) = D(1, 0);
  Ynew(pair[0], 1) = D(0, 1);
  Ynew(pair[1], 1) = D(1, 1);

  V.col(pair[0]) = Ynew.col(0);
  V.col(pair[1]) = Ynew.col(1);
  V.row(pair[0]) = Ynew.col(0).transpose();
  V.row(pair[1]) = Ynew.col(1).transpose();
}

RealPhaseCutState solve_phasecut_real(const RealMat& M2, const PhaseCutOptions& opts) {
  const Index m = M2.rows();
  if (m % 2 != 0 || M2.cols() != m)
    throw std::invalid_argument("solve_phasecut_real: M2 must be 2n x 2n");
  if (!(opts.nu > 0.0 && opts.nu < 1.0))
    throw std::invalid_argument("solve_phasecut_real: nu must lie in (0, 1)");
  const Index n = m / 2;
  Eigen::SelfAdjointEigenSolver<RealMat> es(M2, Eigen::EigenvaluesOnly);
  const double scale = es.eigenvalues().cwiseAbs().maxCoeff();
  if (opts.validate_input) {
    if (!M2.allFinite()) throw std::invalid_argument("solve_phasecut_real: non-finite M2");
    if (es.eigenvalues().minCoeff() < -1e-8 * scale)
      throw std::invalid_argument("solve_phasecut_real: M2 is not PSD within tolerance");
  }

  RealPhaseCutState state;
  state.V = 0.5 * RealMat::Identity(m, m);
  state.sigma = opts.nu * std::max(scale, 1e-300);
  const double sigma_floor = opts.nu_floor * std::max(scale, 1e-300);
  state.objective = (state.V.cwiseProduct(M2)).sum();

  constexpr int kCertInterval = 10;
  constexpr int kStageSweepCap = 40;
  auto certify = [&]() {
    const RealVertexCertificate cert = try_certify_real(M2, state.V, scale, opts);
    if (!cert.accepted) return false;
    state.V = cert.v * cert.v.transpose();
    state.objective = cert.objective;
    state.dual_gap = cert.gap;
    state.converged = true;
    state.certified = true;
    return true;
  };

  int stage_sweeps = 0;
  for (state.sweep = 0; state.sweep < opts.max_sweeps;) {
    for (Index i = 0; i < n; ++i) bcd_step_real(state, M2, i);
    ++state.sweep;
    ++stage_sweeps;

    const double objective = (state.V.cwiseProduct(M2)).sum();
    const double decrease = state.objective - objective;
    state.objective = objective;
    const bool at_floor = !opts.continuation || state.sigma <= sigma_floor;
    const double stall =
        at_floor ? opts.tol
                 : std::max(opts.tol, 0.05 * state.sigma / std::max(scale, 1e-300));
    const bool stalled = decrease <= stall * (1.0 + std::abs(objective)) ||
                         (!at_floor && stage_sweeps >= kStageSweepCap);
    if (stalled || state.sweep % kCertInterval == 0) {
      if (certify()) return state;
    }
    if (stalled) {
      if (!at_floor) {
        state.sigma = std::max(0.5 * state.sigma, sigma_floor);
        stage_sweeps = 0;
        continue;
      }
      state.converged = true;
      break;
    }
  }
  return state;
}

namespace {

Vec coordinate_phases(const Vec& v) {
  Vec u(v.size());
  for (Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    u[i] = (a > 0.0) ? v[i] / a : cx(1.0, 0.0);
  }
  return u;
}

}  // namespace

Vec round_spectral(const Mat& U) {
  const EigDecomposition eig = eig_hermitian(U);
  return coordinate_phases(eig.eigenvectors.col(U.rows() - 1));
}

RealVec spectral_uncertainty(const Mat& U) {
  const EigDecomposition eig = eig_hermitian(U);
  const Index n = U.rows();
  const double lead = std::max(eig.eigenvalues[n - 1], 0.0);
  const Vec v = eig.eigenvectors.col(n - 1) * std::sqrt(lead);
  return (U.diagonal() - v.cwiseAbs2().cast<cx>()).real();
}

Vec spectral_init(const Mat& M) {
  const EigDecomposition eig = eig_hermitian(M);
  return coordinate_phases(eig.eigenvectors.col(0));
}

cx arcsin_kernel(cx w) {
  double r = std::abs(w);
  if (r > 1.0 + 1e-9) throw std::domain_error("arcsin_kernel: |w| > 1");
  r = std::min(r, 1.0);
  if (r == 0.0) return {0.0, 0.0};

  // Composite Simpson on [0, pi]; the integrand is smooth for r <= 1.
  constexpr int kPanels = 512;
  const double h = std::numbers::pi / kPanels;
  auto f = [r](double t) { return std::cos(t) * std::asin(r * std::cos(t)); };
  double sum = f(0.0) + f(std::numbers::pi);
  for (int k = 1; k < kPanels; ++k) sum += f(k * h) * (k % 2 ? 4.0 : 2.0);
  const double integral = sum * h / 3.0;
  return 0.5 * integral * (w / std::abs(w));
}

Mat arcsin_kernel_matrix(const Mat& U) {
  Mat F(U.rows(), U.cols());
  for (Index j = 0; j < U.cols(); ++j)
    for (Index i = 0; i < U.rows(); ++i) F(i, j) = arcsin_kernel(U(i, j));
  return F;
}

RoundingReport round_randomized(const Mat& U, const Mat& M, int samples, std::uint64_t seed) {
  const Index n = U.rows();
  if (samples < 1) throw std::invalid_argument("round_randomized: samples must be >= 1");
  const EigDecomposition eig = eig_hermitian(U);

  RoundingReport report;
  report.sdp_value = trace_product(U, M);
  report.expected_value = trace_product(arcsin_kernel_matrix(U), M);
  const double lead = eig.eigenvalues[n - 1];
  const double second = n > 1 ? eig.eigenvalues[n - 2] : 0.0;
  report.leading_ratio = lead / std::max(second, 1e-16 * std::max(lead, 1.0));

  RealVec clipped = eig.eigenvalues.cwiseMax(0.0);
  for (Index k = 0; k < n; ++k)  // drop roundoff directions of near-low-rank U
    if (clipped[k] < 1e-14 * std::max(lead, 0.0)) clipped[k] = 0.0;
  const Mat factor = eig.eigenvectors * clipped.cwiseSqrt().asDiagonal();
  Rng rng(seed);
  double best = std::numeric_limits<double>::infinity();
  double total = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Vec z = coordinate_phases(factor * rng.complex_normal_vector(n));
    const double value = z.dot(M * z).real();
    total += value;
    if (value < best) {
      best = value;
      report.u = z;
    }
  }
  report.qp_value = best;
  report.sample_mean = total / samples;
  return report;
}

Mat reduce_structure(const Mat& M, const RealMat& P) {
  if (P.rows() != M.rows()) throw std::invalid_argument("reduce_structure: shape mismatch");
  for (Index i = 0; i < P.rows(); ++i) {
    int ones = 0;
    for (Index j = 0; j < P.cols(); ++j) {
      const double v = P(i, j);
      if (v == 1.0) ++ones;
      else if (v != 0.0)
        throw std::invalid_argument("reduce_structure: P entries must be 0 or 1");
    }
    if (ones != 1)
      throw std::invalid_argument("reduce_structure: P needs exactly one 1 per row");
  }
  return hermitize(P.cast<cx>().adjoint() * M * P.cast<cx>());
}

Mat reduce_structure(const Mat& M, const std::vector<Index>& assign, Index q) {
  if (Index(assign.size()) != M.rows())
    throw std::invalid_argument("reduce_structure: assignment length mismatch");
  RealMat P = RealMat::Zero(M.rows(), q);
  for (Index i = 0; i < M.rows(); ++i) {
    if (assign[i] < 0 || assign[i] >= q)
      throw std::invalid_argument("reduce_structure: assignment out of range");
    P(i, assign[i]) = 1.0;
  }
  return reduce_structure(M, P);
}

Vec lift_reduced(const Vec& v, const std::vector<Index>& assign) {
  Vec u(Index(assign.size()));
  for (Index i = 0; i < u.size(); ++i) u[i] = v[assign[i]];
  return u;
}

}  // namespace phasecut
