#include <doctest.h>

#include "phasecut/greedy.hpp"
#include "phasecut/linalg.hpp"
#include "phasecut/metrics.hpp"
#include "phasecut/operators.hpp"
#include "phasecut/phasecut_sdp.hpp"
#include "phasecut/rng.hpp"

using namespace phasecut;

TEST_CASE("bcd_step") {
  SUBCASE("hand-evaluated 2x2 pivot") {
    Mat M(2, 2);
    M << 1.0, -1.0, -1.0, 1.0;
    PhaseCutState state;
    state.U = Mat::Identity(2, 2);
    state.nu = 0.01;
    bcd_step(state, M, 1);
    CHECK(state.U(0, 1).real() == doctest::Approx(std::sqrt(0.99)));
    CHECK(state.U(0, 1).imag() == doctest::Approx(0.0));
    CHECK(state.U(1, 0) == std::conj(state.U(0, 1)));
    CHECK(state.U(0, 0).real() == doctest::Approx(1.0));
    CHECK(state.U(1, 1).real() == doctest::Approx(1.0));
  }
  SUBCASE("diagonal M takes the gamma = 0 branch") {
    Mat M = Mat::Zero(3, 3);
    M.diagonal() << 1.0, 2.0, 3.0;
    PhaseCutState state;
    state.U = Mat::Identity(3, 3);
    state.nu = 0.01;
    for (Index i = 0; i < 3; ++i) bcd_step(state, M, i);
    CHECK((state.U - Mat::Identity(3, 3)).norm() == 0.0);
  }
}

TEST_CASE("solve_phasecut") {
  SUBCASE("M = 0 returns a feasible point with objective zero") {
    const PhaseCutState state = solve_phasecut(Mat::Zero(4, 4));
    CHECK(state.objective == doctest::Approx(0.0));
    CHECK((state.U.diagonal().array() - 1.0).abs().maxCoeff() == 0.0);
    CHECK(lambda_min_hermitian(state.U) >= -1e-10);
  }
  SUBCASE("exact instances reach a near-zero objective") {
    Rng rng(43);
    auto e = make_random_filters(12, 4, 8);
    const Vec x = rng.complex_normal_vector(12);
    const RealVec b = e.apply(x).cwiseAbs();
    const Mat M = build_M(e, b);
    PhaseCutOptions opts;
    opts.continuation = true;
    const PhaseCutState state = solve_phasecut(M, opts);
    CHECK(state.objective <= 1e-6 * spectral_norm_hermitian(M) * double(e.n));
    CHECK(state.dual_gap >= -1e-8);
  }
  SUBCASE("rejects a matrix with a genuinely negative eigenvalue") {
    Mat M = Mat::Identity(3, 3);
    M(0, 0) = -1.0;
    CHECK_THROWS_AS(solve_phasecut(M), std::invalid_argument);
  }
  SUBCASE("rejects nu outside (0,1)") {
    PhaseCutOptions opts;
    opts.nu = 0.0;
    CHECK_THROWS_AS(solve_phasecut(Mat::Identity(2, 2), opts), std::invalid_argument);
  }
}

TEST_CASE("solve_phasecut_mod") {
  Rng rng(47);
  auto e = make_random_filters(10, 3, 9);
  const Vec x = rng.complex_normal_vector(10);
  const RealVec b = e.apply(x).cwiseAbs();
  const Mat M = build_M(e, b);
  const Mat B = build_B(e, b);

  SUBCASE("gamma = 0 matches plain phasecut") {
    PhaseCutOptions opts;
    opts.max_sweeps = 40;
    const PhaseCutState plain = solve_phasecut(M, opts);
    const PhaseCutState mod = solve_phasecut_mod(M, B, 0.0, opts);
    CHECK((plain.U - mod.U).norm() == 0.0);
  }
  SUBCASE("penalty keeps exact instances feasible") {
    PhaseCutOptions opts;
    opts.continuation = true;
    const PhaseCutState state = solve_phasecut_mod(M, B, -1.0, opts);
    const double tr_m = state.U.cwiseProduct(M.conjugate()).sum().real();
    CHECK(tr_m <= 1e-6 * spectral_norm_hermitian(M) * double(e.n));
  }
}

TEST_CASE("dual_bound") {
  SUBCASE("diag(0,1) with w = 0") {
    Mat M = Mat::Zero(2, 2);
    M(1, 1) = 1.0;
    CHECK(dual_bound(M, RealVec::Zero(2)) == doctest::Approx(0.0));
  }
  SUBCASE("never exceeds a feasible primal value") {
    Rng rng(53);
    for (int it = 0; it < 50; ++it) {
      const Index n = 2 + Index(rng.uniform() * 8.0);
      Mat G(n, n);
      for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < n; ++i) G(i, j) = rng.complex_normal();
      const Mat M = hermitize(G * G.adjoint());
      const Vec u = rng.unit_phase_vector(n);
      RealVec w(n);
      for (Index i = 0; i < n; ++i) w[i] = rng.normal();
      const double primal = (u.adjoint() * M * u)(0, 0).real();
      CHECK(dual_bound(M, w) <= primal + 1e-8 * std::max(1.0, std::abs(primal)));
    }
  }
}

TEST_CASE("rounding") {
  Rng rng(59);
  SUBCASE("identity U rounds to the all-ones phase") {
    const Vec u = round_spectral(Mat::Identity(3, 3));
    for (Index i = 0; i < 3; ++i) CHECK(std::abs(u[i] - cx(1, 0)) <= 1e-12);
  }
  SUBCASE("rank-one U recovers its phase vector up to a global phase") {
    const Vec truth = rng.unit_phase_vector(6);
    const Mat U = truth * truth.adjoint();
    const Vec u = round_spectral(U);
    const cx align = u.dot(truth) / std::abs(u.dot(truth));
    CHECK((truth - align * u).norm() <= 1e-10);
    const RealVec unc = spectral_uncertainty(U);
    CHECK(unc.cwiseAbs().maxCoeff() <= 1e-10);
  }
  SUBCASE("spectral_init picks the bottom eigenvector") {
    Mat M = Mat::Zero(2, 2);
    M(1, 1) = 1.0;
    const Vec u = spectral_init(M);
    CHECK(std::abs(u[0] - cx(1, 0)) <= 1e-12);  // e1 direction, padded with phase 1
    CHECK(std::abs(u[1] - cx(1, 0)) <= 1e-12);
  }
  SUBCASE("randomized rounding on a rank-one matrix reproduces it") {
    const Vec truth = rng.unit_phase_vector(5);
    const Mat U = truth * truth.adjoint();
    const Mat M = Mat::Identity(5, 5);
    const RoundingReport report = round_randomized(U, M, 3, 99);
    const cx align = report.u.dot(truth) / std::abs(report.u.dot(truth));
    CHECK((truth - align * report.u).norm() <= 1e-8);
    CHECK(report.qp_value == doctest::Approx(report.sdp_value).epsilon(1e-8));
    CHECK(report.leading_ratio >= 1e10);
  }
  SUBCASE("single-sample determinism") {
    const Mat U = Mat::Identity(4, 4);
    const Mat M = Mat::Identity(4, 4);
    const RoundingReport a = round_randomized(U, M, 1, 1234);
    const RoundingReport b = round_randomized(U, M, 1, 1234);
    CHECK((a.u - b.u).norm() == 0.0);
  }
}

TEST_CASE("arcsin kernel") {
  CHECK(std::abs(arcsin_kernel(cx(0, 0))) == 0.0);
  CHECK(arcsin_kernel(cx(1, 0)).real() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(arcsin_kernel(cx(1, 0)).imag() == doctest::Approx(0.0));
  SUBCASE("phase is carried through") {
    const cx w = std::polar(0.5, 1.2);
    const cx F = arcsin_kernel(w);
    CHECK(std::arg(F) == doctest::Approx(1.2));
  }
  SUBCASE("rejects |w| > 1") {
    CHECK_THROWS_AS(arcsin_kernel(cx(1.1, 0)), std::domain_error);
  }
}

TEST_CASE("reduce_structure") {
  Rng rng(61);
  Mat G(6, 6);
  for (Index j = 0; j < 6; ++j)
    for (Index i = 0; i < 6; ++i) G(i, j) = rng.complex_normal();
  const Mat M = hermitize(G * G.adjoint());

  SUBCASE("identity P leaves M unchanged") {
    CHECK((reduce_structure(M, RealMat::Identity(6, 6)) - M).norm() <= 1e-12 * M.norm());
  }
  SUBCASE("duplicate-all pattern sums every entry") {
    const Mat R = reduce_structure(M, std::vector<Index>(6, 0), 1);
    CHECK(R(0, 0).real() == doctest::Approx(M.sum().real()).epsilon(1e-10));
  }
  SUBCASE("mirror-symmetric instances solve equally in reduced form") {
    // Force a two-fold symmetry: entries depend only on {i, 5-i} classes.
    std::vector<Index> assign{0, 1, 2, 2, 1, 0};
    const Mat S = reduce_structure(M, assign, 3);
    PhaseCutOptions opts;
    opts.continuation = true;
    const PhaseCutState reduced = solve_phasecut(psd_project(S), opts);
    const Vec v = round_spectral(reduced.U);
    const Vec lifted = lift_reduced(v, assign);
    CHECK(lifted.size() == 6);
    for (Index i = 0; i < 6; ++i) CHECK(std::abs(std::abs(lifted[i]) - 1.0) <= 1e-10);
  }
  SUBCASE("rejects non-one-hot patterns") {
    RealMat P = RealMat::Zero(6, 2);
    P(0, 0) = P(0, 1) = 1.0;
    for (Index i = 1; i < 6; ++i) P(i, 0) = 1.0;
    CHECK_THROWS_AS(reduce_structure(M, P), std::invalid_argument);
    RealMat Q = RealMat::Zero(6, 2);
    Q(0, 0) = 0.5;
    CHECK_THROWS_AS(reduce_structure(M, Q), std::invalid_argument);
  }
}

TEST_CASE("phasecut recovers small exact instances end to end") {
  Rng rng(67);
  auto e = std::make_shared<MeasurementEnsemble>(make_random_filters(8, 4, 10));
  const Vec x = rng.complex_normal_vector(8);
  const RealVec b = e->apply(x).cwiseAbs();
  PhaseProblem problem = make_problem(e, b, false, x);
  const Mat M = build_M(*e, b);
  PhaseCutOptions opts;
  opts.continuation = true;
  const PhaseCutState state = solve_phasecut(M, opts);
  const Vec u = round_spectral(state.U);
  const Vec x_tilde = e->apply_pinv(b.cast<cx>().cwiseProduct(u));
  const Vec x_hat = refine(problem, x_tilde, 500);
  CHECK(error_signal(x, x_hat) <= 1e-6);
}
