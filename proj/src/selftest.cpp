#include "phasecut/selftest.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "phasecut/greedy.hpp"
#include "phasecut/linalg.hpp"
#include "phasecut/metrics.hpp"
#include "phasecut/operators.hpp"
#include "phasecut/phasecut_sdp.hpp"
#include "phasecut/phaselift.hpp"
#include "phasecut/rng.hpp"

namespace phasecut::selftest {

namespace {

struct Check {
  bool ok = true;
  int instances = 0;
  std::string detail;

  void fail(const std::string& msg) {
    if (ok) detail = msg;
    ok = false;
  }
  void expect(bool cond, const std::string& msg) {
    ++instances;
    if (!cond) fail(msg);
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

Mat random_matrix(Rng& rng, Index rows, Index cols) {
  Mat A(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) A(i, j) = rng.complex_normal();
  return A;
}

Mat random_psd(Rng& rng, Index n, Index rank) {
  const Mat G = random_matrix(rng, n, rank);
  return hermitize(G * G.adjoint());
}

/// Random PSD matrix with unit diagonal (feasible point of the SDP).
Mat random_feasible_u(Rng& rng, Index n) {
  Mat S = random_psd(rng, n, n) + 0.05 * Mat::Identity(n, n);
  RealVec d = S.diagonal().real().cwiseSqrt().cwiseInverse();
  return hermitize(d.cast<cx>().asDiagonal() * S * d.cast<cx>().asDiagonal());
}

double trace_product(const Mat& U, const Mat& M) {
  return U.cwiseProduct(M.conjugate()).sum().real();
}

// --- Suite 1: trace-norm distance oracle ---------------------------------

SuiteResult suite_d1_oracle(std::uint64_t seed) {
  Check c;
  Rng rng(seed);
  for (int it = 0; it < 120; ++it) {
    const Index n = 2 + Index(rng.uniform() * 11);  // 2..12
    const Index p = 1 + Index(rng.uniform() * double(n));
    Mat A = random_matrix(rng, n, p);
    if (it % 5 == 0 && p > 1) A.col(p - 1) = A.col(0);  // rank-deficient case
    const Mat V = random_psd(rng, n, 1 + Index(rng.uniform() * double(n)));

    const double lhs = dist_to_F_oracle(V, A);
    const Mat proj = Mat::Identity(n, n) - A * pseudoinverse(A);
    const double rhs = trace_product(V, hermitize(proj));
    const double scale = std::max(1.0, V.cwiseAbs().maxCoeff() * double(n));
    c.expect(std::abs(lhs - rhs) <= 1e-8 * scale,
             "d1 oracle mismatch: " + fmt(lhs) + " vs " + fmt(rhs));
  }
  return {"d1_distance_oracle", c.ok, c.instances, c.detail};
}

// --- Suite 2: block determinant and block minimizer ----------------------

SuiteResult suite_block_identities(std::uint64_t seed) {
  Check c;
  Rng rng(seed);

  for (int it = 0; it < 120; ++it) {
    const Index n = 3 + Index(rng.uniform() * 8.0);  // 3..10
    const Mat U = random_psd(rng, n, n) + 0.2 * Mat::Identity(n, n);
    const Mat B = U.topLeftCorner(n - 1, n - 1);
    const Vec x = U.topRightCorner(n - 1, 1);
    const cx y = U(n - 1, n - 1);
    const cx lhs = U.determinant();
    const cx rhs = B.determinant() * (y - (x.adjoint() * B.inverse() * x)(0, 0));
    c.expect(std::abs(lhs - rhs) <= 1e-8 * std::abs(lhs),
             "block determinant mismatch at n=" + fmt(double(n)));
  }

  // Lemma-style closed form for min c'x - sigma log(1 - x'B^{-1}x):
  // the minimizer is t* B c with t* = -(sqrt(sigma^2+gamma)-sigma)/gamma,
  // checked against a dense line search and full-dimension stationarity.
  for (int it = 0; it < 120; ++it) {
    const Index m = 4;
    RealMat G(m, m);
    for (Index j = 0; j < m; ++j)
      for (Index i = 0; i < m; ++i) G(i, j) = rng.normal();
    const RealMat B = G * G.transpose() + 0.3 * RealMat::Identity(m, m);
    RealVec cvec(m);
    for (Index i = 0; i < m; ++i) cvec[i] = rng.normal();
    const double sigma = 0.02 + rng.uniform();
    const double gamma = cvec.dot(B * cvec);

    const double t_closed = -(std::sqrt(sigma * sigma + gamma) - sigma) / gamma;
    const RealVec x_closed = t_closed * (B * cvec);

    // Dense line search over the feasible segment along B c.
    auto f = [&](double t) { return t * gamma - sigma * std::log(1.0 - t * t * gamma); };
    const double t_max = 1.0 / std::sqrt(gamma);
    double t_best = 0.0, f_best = f(0.0);
    const int grid = 20001;
    for (int g = 1; g < grid; ++g) {
      const double t = -t_max + 2.0 * t_max * double(g) / double(grid) * 0.999999;
      const double v = f(t);
      if (v < f_best) {
        f_best = v;
        t_best = t;
      }
    }
    for (int refine = 0; refine < 60; ++refine) {  // golden polish
      const double h = 2.0 * t_max / double(grid) * std::pow(0.8, refine);
      for (double cand : {t_best - h, t_best + h})
        if (std::abs(cand) < t_max && f(cand) < f_best) {
          f_best = f(cand);
          t_best = cand;
        }
    }
    const RealVec x_oracle = t_best * (B * cvec);
    c.expect((x_closed - x_oracle).norm() <= 1e-6 * (1.0 + x_closed.norm()),
             "block minimizer mismatch: |dx|=" + fmt((x_closed - x_oracle).norm()));

    const double slack = 1.0 - x_closed.dot(B.inverse() * x_closed);
    const RealVec grad = cvec + (2.0 * sigma / slack) * (B.inverse() * x_closed);
    c.expect(grad.norm() <= 1e-6 * (1.0 + cvec.norm()), "block minimizer not stationary");
  }

  // The BCD pivot minimizes the linear term over its fixed Schur slice.
  for (int it = 0; it < 100; ++it) {
    const Index n = 3 + Index(rng.uniform() * 6.0);
    const Mat M = random_psd(rng, n, n);
    PhaseCutState state;
    state.U = Mat::Identity(n, n);
    state.nu = 0.05 + 0.5 * rng.uniform();
    for (Index i = 0; i < n; ++i) bcd_step(state, M, i);
    const Index i = Index(rng.uniform() * double(n));
    bcd_step(state, M, i);

    // Rebuild the blocks around pivot i.
    std::vector<Index> rest;
    for (Index k = 0; k < n; ++k)
      if (k != i) rest.push_back(k);
    Mat B(n - 1, n - 1);
    Vec cvec(n - 1), x_upd(n - 1);
    for (Index a = 0; a < n - 1; ++a) {
      cvec[a] = M(rest[a], i);
      x_upd[a] = state.U(rest[a], i);
      for (Index b = 0; b < n - 1; ++b) B(a, b) = state.U(rest[a], rest[b]);
    }
    const double gamma = (cvec.adjoint() * B * cvec)(0, 0).real();
    if (gamma <= 1e-12) continue;
    const double schur = 1.0 - (x_upd.adjoint() * B.inverse() * x_upd)(0, 0).real();
    c.expect(std::abs(schur - state.nu) <= 1e-6, "pivot Schur complement != nu");

    const double updated_value = 2.0 * (x_upd.adjoint() * cvec)(0, 0).real();
    for (int s = 0; s < 10; ++s) {  // random feasible competitors on the slice
      Vec dir(n - 1);
      for (Index a = 0; a < n - 1; ++a) dir[a] = rng.complex_normal();
      const double q = (dir.adjoint() * B.inverse() * dir)(0, 0).real();
      if (q <= 0.0) continue;
      const Vec x_cand = dir * std::sqrt((1.0 - state.nu) / q);
      const double value = 2.0 * (x_cand.adjoint() * cvec)(0, 0).real();
      c.expect(value >= updated_value - 1e-8 * (1.0 + std::abs(updated_value)),
               "pivot is not the slice minimizer");
    }
  }
  return {"block_determinant_and_minimizer", c.ok, c.instances, c.detail};
}

// --- Suite 3: BCD descent invariants --------------------------------------

SuiteResult suite_bcd_descent(std::uint64_t seed) {
  Check c;
  Rng rng(seed);
  for (int it = 0; it < 110; ++it) {
    const Index n = 3 + Index(rng.uniform() * 14.0);  // 3..16
    const Mat M = random_psd(rng, n, 1 + Index(rng.uniform() * double(n)));
    const double scale = spectral_norm_hermitian(M);

    PhaseCutState state;
    state.U = Mat::Identity(n, n);
    state.nu = 1e-2;
    double objective = trace_product(state.U, M);
    for (int sweep = 0; sweep < 12; ++sweep) {
      for (Index i = 0; i < n; ++i) bcd_step(state, M, i);
      const double next = trace_product(state.U, M);
      c.expect(next <= objective + 1e-9 * double(n) * std::max(scale, 1.0),
               "sweep increased Tr(UM): " + fmt(objective) + " -> " + fmt(next));
      objective = next;
    }
    c.expect((state.U.diagonal().array() - 1.0).abs().maxCoeff() <= 1e-12,
             "diag(U) drifted from 1");
    c.expect(lambda_min_hermitian(state.U) >= -1e-8 * double(n), "U lost semidefiniteness");
  }
  return {"bcd_descent", c.ok, c.instances, c.detail};
}

// --- Suite 4: weak duality -------------------------------------------------

SuiteResult suite_weak_duality(std::uint64_t seed) {
  Check c;
  Rng rng(seed);
  for (int it = 0; it < 120; ++it) {
    const Index n = 2 + Index(rng.uniform() * 15.0);
    const Mat M = random_psd(rng, n, n);
    RealVec w(n);
    for (Index i = 0; i < n; ++i) w[i] = rng.normal();
    const Mat U = random_feasible_u(rng, n);
    const double primal = trace_product(U, M);
    const double dual = dual_bound(M, w);
    const double scale = std::max(1.0, std::abs(primal));
    c.expect(dual <= primal + 1e-8 * scale,
             "weak duality violated: " + fmt(dual) + " > " + fmt(primal));
  }

  // Exact instances certify optimality at w = 0.
  for (int it = 0; it < 30; ++it) {
    const Index p = 4, J = 3;
    auto e = make_random_filters(p, J, rng.integer());
    const Vec x = rng.complex_normal_vector(p);
    const RealVec b = e.apply(x).cwiseAbs();
    const Mat M = build_M(e, b);
    const double scale = std::max(1.0, spectral_norm_hermitian(M) * double(e.n));
    c.expect(std::abs(dual_bound(M, RealVec::Zero(e.n))) <= 1e-6 * scale,
             "exact instance: n lambda_min(M) not ~ 0");
  }
  return {"weak_duality", c.ok, c.instances, c.detail};
}

// --- Suite 5: rounding sandwich and arcsin kernel -------------------------

/// Complete elliptic integrals by the arithmetic-geometric mean, used
/// as an independent closed form for the kernel integral.
void elliptic_ke(double m, double& K, double& E) {
  double a = 1.0, b = std::sqrt(1.0 - m), csum = 0.5 * m, pow2 = 1.0;
  for (int it = 0; it < 60 && std::abs(a - b) > 1e-16; ++it) {
    const double an = 0.5 * (a + b);
    const double bn = std::sqrt(a * b);
    const double cn = 0.5 * (a - b);
    pow2 *= 2.0;
    csum += pow2 * 0.5 * cn * cn;
    a = an;
    b = bn;
  }
  K = std::numbers::pi / (2.0 * a);
  E = K * (1.0 - csum);
}

SuiteResult suite_rounding_sandwich(std::uint64_t seed) {
  Check c;
  Rng rng(seed);

  c.expect(std::abs(arcsin_kernel(cx(0, 0))) <= 1e-12, "F(0) != 0");
  c.expect(std::abs(arcsin_kernel(cx(1, 0)) - cx(1, 0)) <= 1e-9, "F(1) != 1");

  for (int g = 1; g <= 40; ++g) {  // quadrature vs elliptic closed form
    const double r = double(g) / 40.0 * 0.999;
    double K, E;
    elliptic_ke(r * r, K, E);
    const double closed = (E - (1.0 - r * r) * K) / r;
    const double quad = arcsin_kernel(cx(r, 0)).real();
    c.expect(std::abs(quad - closed) <= 1e-9, "kernel quadrature vs elliptic at r=" + fmt(r));
  }

  {  // Monte-Carlo check of E[z_i conj(z_j)] = F(U_ij)
    const Index n = 4;
    const Mat U = random_feasible_u(rng, n);
    const EigDecomposition eig = eig_hermitian(U);
    const Mat factor = eig.eigenvectors * eig.eigenvalues.cwiseMax(0.0).cwiseSqrt().asDiagonal();
    Mat acc = Mat::Zero(n, n);
    const int samples = 400000;
    for (int s = 0; s < samples; ++s) {
      Vec z = factor * rng.complex_normal_vector(n);
      for (Index i = 0; i < n; ++i) {
        const double a = std::abs(z[i]);
        z[i] = a > 0 ? z[i] / a : cx(1, 0);
      }
      acc += z * z.adjoint();
    }
    acc /= double(samples);
    const Mat F = arcsin_kernel_matrix(U);
    c.expect((acc - F).cwiseAbs().maxCoeff() <= 5e-3,
             "Monte-Carlo kernel mismatch: " + fmt((acc - F).cwiseAbs().maxCoeff()));
  }

  for (int it = 0; it < 100; ++it) {  // sandwich on random feasible points
    const Index n = 3 + Index(rng.uniform() * 8.0);
    const Mat M = random_psd(rng, n, n);
    const Mat U = random_feasible_u(rng, n);
    const RoundingReport report = round_randomized(U, M, 200, rng.integer());
    const double lower = dual_bound(M, RealVec::Zero(n));  // n lambda_min <= SDP(M) <= QP
    const double scale = std::max(1.0, spectral_norm_hermitian(M) * double(n));
    c.expect(lower <= report.qp_value + 1e-8 * scale, "sampled QP value beats the SDP bound");
    c.expect(report.qp_value <= report.sample_mean + 1e-12 * scale, "min above mean");
    // The sample mean concentrates around Tr(M F(U)).
    c.expect(std::abs(report.sample_mean - report.expected_value) <= 0.5 * scale,
             "sample mean far from Tr(M F(U)): " +
                 fmt(std::abs(report.sample_mean - report.expected_value)));
  }

  for (int it = 0; it < 12; ++it) {  // solver outputs satisfy the full sandwich
    const Index p = 4, J = 3;
    auto e = make_random_filters(p, J, rng.integer());
    const Vec x = rng.complex_normal_vector(p);
    const RealVec b = e.apply(x).cwiseAbs();
    const Mat M = build_M(e, b);
    PhaseCutOptions opts;
    opts.continuation = true;
    const PhaseCutState state = solve_phasecut(M, opts);
    const RoundingReport report = round_randomized(state.U, M, 64, rng.integer());
    const double scale = std::max(1.0, spectral_norm_hermitian(M) * double(e.n));
    c.expect(report.sdp_value <= report.qp_value + 1e-6 * scale, "SDP above QP after solve");
    c.expect(report.sdp_value <= report.expected_value + 1e-6 * scale,
             "SDP above Tr(M F(U)) after solve");
  }
  return {"rounding_sandwich", c.ok, c.instances, c.detail};
}

// --- Suite 6: lift bijection ----------------------------------------------

SuiteResult suite_phi_bijection(std::uint64_t seed) {
  Check c;
  Rng rng(seed);
  for (int it = 0; it < 100; ++it) {
    const Index p = 2 + Index(rng.uniform() * 5.0);  // 2..6
    const Index n = p + 2 + Index(rng.uniform() * 6.0);
    const Mat A = random_matrix(rng, n, p);
    auto e = make_dense(A);
    Vec x = rng.complex_normal_vector(p);
    RealVec b = e.apply(x).cwiseAbs();
    if (b.minCoeff() < 1e-3) continue;  // stay away from the b > 0 boundary

    // Feasible lifted points: xx* plus a PSD-preserving step inside the
    // null space of the constraint map D -> diag(A D A*).
    Mat X = x * x.adjoint();
    {
      const Index dim = p * p;  // real parametrization of Hermitian p x p
      RealMat C(2 * n, dim);
      Index col = 0;
      auto basis_response = [&](const Mat& H) {
        const Vec d = (A * H).cwiseProduct(A.conjugate()).rowwise().sum();
        for (Index i = 0; i < n; ++i) {
          C(i, col) = d[i].real();
          C(n + i, col) = d[i].imag();
        }
        ++col;
      };
      for (Index i = 0; i < p; ++i) {
        Mat H = Mat::Zero(p, p);
        H(i, i) = 1.0;
        basis_response(H);
      }
      for (Index i = 0; i < p; ++i)
        for (Index j = i + 1; j < p; ++j) {
          Mat H = Mat::Zero(p, p);
          H(i, j) = H(j, i) = 1.0;
          basis_response(H);
          H(i, j) = cx(0, 1);
          H(j, i) = cx(0, -1);
          basis_response(H);
        }
      const Eigen::FullPivLU<RealMat> lu(C);
      const RealMat kernel = lu.kernel();
      if (kernel.cols() > 0 && it % 2 == 0) {
        RealVec coeff(kernel.cols());
        for (Index k = 0; k < kernel.cols(); ++k) coeff[k] = rng.normal();
        const RealVec delta = kernel * coeff;
        Mat D = Mat::Zero(p, p);
        Index idx = 0;
        for (Index i = 0; i < p; ++i) D(i, i) = delta[idx++];
        for (Index i = 0; i < p; ++i)
          for (Index j = i + 1; j < p; ++j) {
            D(i, j) += delta[idx];
            D(j, i) += delta[idx++];
            D(i, j) += cx(0, 1) * delta[idx];
            D(j, i) += cx(0, -1) * delta[idx++];
          }
        const double lm = lambda_min_hermitian(X + D);
        if (lm < 0.0) {
          // Shrink the step until X + t D stays PSD.
          double t = 1.0;
          while (t > 1e-4 && lambda_min_hermitian(X + t * D) < 0.0) t *= 0.5;
          D *= (t * 0.5);
        }
        X = hermitize(X + D);
        if (lambda_min_hermitian(X) < -1e-12) X = psd_project(X);
      }
    }

    const Mat M = build_M(e, b);
    const Mat B = build_B(e, b);
    const Mat U = phi_map(X, e, b);
    const double scale = std::max(1.0, X.cwiseAbs().maxCoeff());

    c.expect((U.diagonal().array() - 1.0).abs().maxCoeff() <= 1e-7,
             "Phi(X) lost the unit diagonal");
    c.expect(std::abs(trace_product(U, M)) <= 1e-7 * scale * double(n), "Tr(M Phi(X)) != 0");
    c.expect(lambda_min_hermitian(U) >= -1e-8 * double(n) * scale, "Phi(X) not PSD");
    c.expect(std::abs(trace_product(U, B) - X.trace().real()) <=
                 1e-8 * std::max(1.0, std::abs(X.trace().real())) * double(n),
             "Tr(B Phi(X)) != Tr(X)");

    const Mat X_back = phi_inverse(U, e, b);
    c.expect((X_back - X).cwiseAbs().maxCoeff() <= 1e-8 * scale * double(n),
             "phi_inverse(phi_map(X)) != X");

    // Transport back: a feasible U maps to a feasible lifted point.
    const Mat X2 = phi_inverse(U, e, b);
    const RealVec diag_axa = (A * X2).cwiseProduct(A.conjugate()).rowwise().sum().real();
    c.expect((diag_axa - b.cwiseAbs2()).cwiseAbs().maxCoeff() <=
                 1e-7 * std::max(1.0, b.cwiseAbs2().maxCoeff()),
             "transported point violates diag(AXA*) = b^2");
  }
  return {"phi_bijection", c.ok, c.instances, c.detail};
}

// --- Suite 7: real embedding and metric ------------------------------------

SuiteResult suite_t_embedding_metric(std::uint64_t seed) {
  Check c;
  Rng rng(seed);
  for (int it = 0; it < 110; ++it) {
    const Index n = 2 + Index(rng.uniform() * 7.0);
    const Mat Z = hermitize(random_matrix(rng, n, n));
    const Mat Y = hermitize(random_matrix(rng, n, n));
    const RealMat TZ = realify(Z), TY = realify(Y);

    const double lhs = (TZ * TY).trace();
    const double rhs = 2.0 * (Z * Y).trace().real();
    c.expect(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)),
             "Tr(T(Z)T(Y)) != 2 Tr(ZY)");

    Eigen::SelfAdjointEigenSolver<RealMat> est(TZ);
    const RealVec ez = eig_hermitian(Z).eigenvalues;
    for (Index k = 0; k < n; ++k) {
      c.expect(std::abs(est.eigenvalues()[2 * k] - ez[k]) <= 1e-10 * std::max(1.0, std::abs(ez[k])),
               "T(Z) eigenvalue multiplicity broken");
      c.expect(std::abs(est.eigenvalues()[2 * k + 1] - ez[k]) <=
                   1e-10 * std::max(1.0, std::abs(ez[k])),
               "T(Z) eigenvalue multiplicity broken");
    }

    const Mat P = random_psd(rng, n, n);
    c.expect(Eigen::SelfAdjointEigenSolver<RealMat>(realify(P), Eigen::EigenvaluesOnly)
                     .eigenvalues()
                     .minCoeff() >= -1e-10 * std::max(1.0, spectral_norm_hermitian(P)),
             "T(PSD) lost semidefiniteness");
  }

  for (int it = 0; it < 120; ++it) {  // closed-form phase alignment vs grid
    const Index p = 2 + Index(rng.uniform() * 9.0);
    const Vec x = rng.complex_normal_vector(p);
    const Vec xt = rng.complex_normal_vector(p);
    const double closed = error_signal(x, xt);
    double grid = std::numeric_limits<double>::infinity();
    for (int g = 0; g < 10000; ++g) {
      const double t = 2.0 * std::numbers::pi * double(g) / 10000.0;
      grid = std::min(grid, (x - std::polar(1.0, t) * xt).norm() / x.norm());
    }
    c.expect(closed <= grid + 1e-12, "closed form worse than the grid");
    c.expect(grid - closed <= 1e-6, "closed form differs from the grid minimum");
  }
  return {"t_embedding_and_metric", c.ok, c.instances, c.detail};
}

// --- Suite 8: greedy / alternating-projection fixed points -----------------

SuiteResult suite_fixed_point(std::uint64_t seed) {
  Check c;
  Rng rng(seed);
  for (int it = 0; it < 100; ++it) {
    const Index p = 2 + Index(rng.uniform() * 6.0);
    const Index n = p + 2 + Index(rng.uniform() * 8.0);
    auto e = std::make_shared<MeasurementEnsemble>(make_gaussian(n, p, rng.integer()));
    const Vec x = rng.complex_normal_vector(p);
    RealVec b = e->apply(x).cwiseAbs();
    if (b.minCoeff() < 1e-3 * b.maxCoeff()) continue;  // want solidly positive b

    const Mat M = build_M(*e, b);
    GreedyPhaseResult res = greedy_phase(M, rng.unit_phase_vector(n), 20000, 1e-15);

    // First-order fixed-point residual of the greedy iteration itself.
    const Vec z = M * res.u;
    double fp = 0.0;
    for (Index i = 0; i < n; ++i) {
      const cx coupling = z[i] - M(i, i) * res.u[i];
      const double mag = std::abs(coupling);
      if (mag > 1e-12) fp = std::max(fp, std::abs(res.u[i] + coupling / mag));
    }
    if (fp > 1e-9) continue;  // not yet stationary; the property is about fixed points

    PhaseProblem problem = make_problem(e, b);
    const Vec y = b.cast<cx>().cwiseProduct(res.u);
    const Vec proj = project_onto_range(problem, y);
    Vec y_next(n);
    for (Index i = 0; i < n; ++i) {
      const double a = std::abs(proj[i]);
      y_next[i] = a > 0 ? b[i] * proj[i] / a : y[i];
    }
    c.expect((y_next - y).norm() <= 1e-8 * b.norm(),
             "greedy fixed point moved under a GS step: " + fmt((y_next - y).norm()));
  }
  return {"greedy_gs_fixed_point", c.ok, c.instances, c.detail};
}

}  // namespace

std::vector<SuiteResult> run_property_suites(std::uint64_t seed) {
  return {
      suite_d1_oracle(fanout_seed(seed, "d1", 0)),
      suite_block_identities(fanout_seed(seed, "block", 0)),
      suite_bcd_descent(fanout_seed(seed, "bcd", 0)),
      suite_weak_duality(fanout_seed(seed, "dual", 0)),
      suite_rounding_sandwich(fanout_seed(seed, "round", 0)),
      suite_phi_bijection(fanout_seed(seed, "phi", 0)),
      suite_t_embedding_metric(fanout_seed(seed, "t-embed", 0)),
      suite_fixed_point(fanout_seed(seed, "fixed", 0)),
  };
}

bool all_passed(const std::vector<SuiteResult>& results) {
  for (const auto& r : results)
    if (!r.passed) return false;
  return true;
}

}  // namespace phasecut::selftest
