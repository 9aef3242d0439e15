#include <doctest.h>

#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

#include "phasecut/linalg.hpp"
#include "phasecut/operators.hpp"
#include "phasecut/rng.hpp"

using namespace phasecut;

TEST_CASE("oversampled Fourier ensemble") {
  SUBCASE("single basis vectors give unit-modulus rows") {
    auto e = make_oversampled_fourier(2, 2);
    for (Index m = 0; m < 2; ++m) {
      Vec x = Vec::Zero(2);
      x[m] = 1.0;
      const RealVec mags = e.apply(x).cwiseAbs();
      for (Index k = 0; k < e.n; ++k) CHECK(mags[k] == doctest::Approx(1.0));
    }
  }
  SUBCASE("dense and FFT paths agree") {
    auto e = make_oversampled_fourier(16, 4);
    Rng rng(2);
    const Vec x = rng.complex_normal_vector(16);
    CHECK((e.apply(x) - e.apply_dense(x)).norm() <= 1e-10 * e.apply_dense(x).norm());
    const Vec y = rng.complex_normal_vector(e.n);
    CHECK((e.apply_pinv(y) - e.apply_pinv_dense(y)).norm() <=
          1e-10 * std::max(1.0, e.apply_pinv_dense(y).norm()));
  }
  SUBCASE("conjugate-reflection twin has identical magnitudes") {
    auto e = make_oversampled_fourier(8, 4);
    Rng rng(3);
    const Vec x = rng.complex_normal_vector(8);
    Vec twin(8);
    for (Index m = 0; m < 8; ++m) twin[m] = std::conj(x[8 - 1 - m]);
    const RealVec bx = e.apply(x).cwiseAbs();
    const RealVec bt = e.apply(twin).cwiseAbs();
    CHECK((bx - bt).norm() <= 1e-10 * bx.norm());
  }
}

TEST_CASE("random filters ensemble") {
  SUBCASE("unit filter reduces to the plain DFT") {
    const Index p = 8;
    auto e = make_filters(p, {Vec::Ones(p)});
    Rng rng(5);
    const Vec x = rng.complex_normal_vector(p);
    Vec dft(p);
    for (Index k = 0; k < p; ++k) {
      cx acc = 0.0;
      for (Index m = 0; m < p; ++m)
        acc += x[m] * std::polar(1.0, -2.0 * std::numbers::pi * double(k * m) / double(p));
      dft[k] = acc;
    }
    CHECK((e.apply(x) - dft).norm() <= 1e-9 * dft.norm());
  }
  SUBCASE("injectivity across seeds") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      auto e = make_random_filters(64, 4, seed);
      CHECK(e.sigma_min > 1e-6);
    }
  }
  SUBCASE("determinism under a fixed seed") {
    auto a = make_random_filters(16, 3, 42);
    auto b = make_random_filters(16, 3, 42);
    CHECK((a.A - b.A).norm() == 0.0);
  }
  SUBCASE("fast paths match dense") {
    auto e = make_random_filters(16, 4, 9);
    Rng rng(10);
    const Vec x = rng.complex_normal_vector(16);
    CHECK((e.apply(x) - e.apply_dense(x)).norm() <= 1e-10 * e.apply_dense(x).norm());
    const Vec y = rng.complex_normal_vector(e.n);
    CHECK((e.apply_pinv(y) - e.apply_pinv_dense(y)).norm() <=
          1e-10 * std::max(1.0, e.apply_pinv_dense(y).norm()));
  }
}

TEST_CASE("Cauchy wavelet ensemble") {
  SUBCASE("constant signals land in the low-pass band") {
    auto e = make_cauchy_wavelet(32, 4, 5);
    const Vec x = Vec::Ones(32);
    const Vec y = e.apply(x);
    const double band_energy = y.head(3 * 32).squaredNorm();
    const double lowpass_energy = y.tail(32).squaredNorm();
    CHECK(band_energy <= 1e-16 * lowpass_energy);
  }
  SUBCASE("band profile peaks where the derivative of w^d e^{-w} vanishes") {
    // d/dw [w^d e^{-w}] = 0 at w = d; on the dyadic grid the first band
    // response is maximal at the bin nearest to w = d / 2.
    const int d = 5;
    auto e = make_cauchy_wavelet(64, 3, d);
    const Vec g = e.fast->spectra[0];
    Index argmax = 0;
    for (Index k = 1; k < 33; ++k)
      if (g[k].real() > g[argmax].real()) argmax = k;
    const double peak_omega = 2.0 * std::numbers::pi * double(argmax) / 64.0;
    CHECK(std::abs(peak_omega - double(d) / 2.0) <= 2.0 * std::numbers::pi / 64.0);
  }
  SUBCASE("reconstruction through the pseudoinverse") {
    auto e = make_cauchy_wavelet(64, 4, 5);
    Rng rng(12);
    const Vec x = rng.complex_normal_vector(64);
    CHECK((e.apply_pinv(e.apply(x)) - x).norm() <= 1e-6 * x.norm());
  }
  SUBCASE("fast paths match dense") {
    auto e = make_cauchy_wavelet(32, 4, 5);
    Rng rng(13);
    const Vec x = rng.complex_normal_vector(32);
    CHECK((e.apply(x) - e.apply_dense(x)).norm() <= 1e-10 * std::max(1.0, e.apply_dense(x).norm()));
    const Vec y = rng.complex_normal_vector(e.n);
    CHECK((e.apply_pinv(y) - e.apply_pinv_dense(y)).norm() <=
          1e-10 * std::max(1.0, e.apply_pinv_dense(y).norm()));
  }
}

TEST_CASE("gaussian ensemble") {
  SUBCASE("E|A_ij|^2 is close to one") {
    auto e = make_gaussian(100, 100, 21);
    CHECK(e.A.cwiseAbs2().mean() == doctest::Approx(1.0).epsilon(0.1));
  }
  SUBCASE("deterministic under seed") {
    auto a = make_gaussian(5, 3, 77);
    auto b = make_gaussian(5, 3, 77);
    CHECK((a.A - b.A).norm() == 0.0);
  }
}

TEST_CASE("ensemble caches and descriptors") {
  auto e = make_random_filters(12, 3, 4);
  SUBCASE("projector is an orthogonal projector") {
    CHECK((e.projector * e.projector - e.projector).norm() <= 1e-8);
    CHECK((e.projector.adjoint() - e.projector).norm() <= 1e-8);
  }
  SUBCASE("pinv is a left inverse for injective A") {
    CHECK((e.pinv * e.A - Mat::Identity(12, 12)).norm() <= 1e-8);
  }
  SUBCASE("descriptor round-trips to the same matrix") {
    auto back = ensemble_from_descriptor(e.descriptor());
    CHECK((back.A - e.A).norm() == 0.0);
  }
  SUBCASE("dense ensembles refuse to serialize") {
    auto d = make_dense(Mat::Identity(3, 3));
    CHECK_THROWS_AS(d.descriptor(), std::invalid_argument);
  }
}

TEST_CASE("build_M") {
  SUBCASE("square invertible A gives M = 0") {
    auto e = make_dense(Mat::Identity(4, 4) * cx(0.0, 2.0));
    const RealVec b = RealVec::Ones(4);
    CHECK(build_M(e, b).norm() <= 1e-12);
  }
  SUBCASE("A = e1 gives M = diag(0, 1)") {
    Mat A = Mat::Zero(2, 1);
    A(0, 0) = 1.0;
    const Mat M = build_M(make_dense(A), RealVec::Ones(2));
    CHECK(M(0, 0).real() == doctest::Approx(0.0));
    CHECK(M(1, 1).real() == doctest::Approx(1.0));
    CHECK(std::abs(M(0, 1)) <= 1e-14);
  }
  SUBCASE("truth phases annihilate M on exact instances") {
    auto e = make_random_filters(8, 3, 6);
    Rng rng(6);
    const Vec x = rng.complex_normal_vector(8);
    const Vec ax = e.apply(x);
    const RealVec b = ax.cwiseAbs();
    const Mat M = build_M(e, b);
    Vec u(e.n);
    for (Index i = 0; i < e.n; ++i)
      u[i] = std::abs(ax[i]) > 0 ? ax[i] / std::abs(ax[i]) : cx(1, 0);
    CHECK(std::abs((u.adjoint() * M * u)(0, 0)) <= 1e-8 * spectral_norm_hermitian(M) * double(e.n));
    CHECK(lambda_min_hermitian(M) >= -1e-8 * spectral_norm_hermitian(M));
  }
  SUBCASE("fast M-product agrees with the dense matrix") {
    auto e = make_cauchy_wavelet(16, 3, 5);
    Rng rng(8);
    const RealVec b = RealVec::Ones(e.n) + rng.normal_vector(e.n).cwiseAbs();
    const Mat M = build_M(e, b);
    const Vec v = rng.complex_normal_vector(e.n);
    CHECK((apply_M(e, b, v) - M * v).norm() <= 1e-10 * std::max(1.0, (M * v).norm()));
  }
}

TEST_CASE("build_B") {
  SUBCASE("unitary A with unit b gives the identity") {
    auto e = make_dense(Mat::Identity(3, 3));
    CHECK((build_B(e, RealVec::Ones(3)) - Mat::Identity(3, 3)).norm() <= 1e-10);
  }
  SUBCASE("A = 2I gives B = I/4") {
    auto e = make_dense(Mat::Identity(3, 3) * 2.0);
    CHECK((build_B(e, RealVec::Ones(3)) - 0.25 * Mat::Identity(3, 3)).norm() <= 1e-10);
  }
}

TEST_CASE("realify_problem") {
  auto e = make_random_filters(6, 3, 14);
  Rng rng(14);
  SUBCASE("real A has a zero imaginary block") {
    auto d = make_dense(Mat::Identity(4, 4));
    const auto r = realify_problem(d, RealVec::Ones(4));
    CHECK(r.A2.bottomRows(4).norm() == 0.0);
  }
  SUBCASE("true real signals achieve v' M2 v = 0") {
    const Vec x = rng.normal_vector(6).cast<cx>();
    const Vec ax = e.apply(x);
    const RealVec b = ax.cwiseAbs();
    const auto r = realify_problem(e, b);
    RealVec v(2 * e.n);
    for (Index i = 0; i < e.n; ++i) {
      const double a = std::abs(ax[i]);
      const cx u = a > 0 ? ax[i] / a : cx(1, 0);
      v[i] = u.real();
      v[e.n + i] = u.imag();
    }
    const double quad = v.dot(r.M2 * v);
    CHECK(std::abs(quad) <= 1e-8 * r.M2.norm() * double(e.n));
  }
  SUBCASE("M2 is PSD") {
    const RealVec b = rng.normal_vector(e.n).cwiseAbs();
    const auto r = realify_problem(e, b);
    Eigen::SelfAdjointEigenSolver<RealMat> es(r.M2, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() >= -1e-8 * es.eigenvalues().cwiseAbs().maxCoeff());
  }
}

TEST_CASE("apply shape checks and zero behavior") {
  auto e = make_oversampled_fourier(4, 2);
  CHECK(e.apply(Vec::Zero(4)).norm() == 0.0);
  CHECK_THROWS_AS(e.apply(Vec::Zero(5)), std::invalid_argument);
  CHECK_THROWS_AS(e.apply_pinv(Vec::Zero(3)), std::invalid_argument);
  Rng rng(15);
  const Vec x = rng.complex_normal_vector(4);
  CHECK((e.apply_pinv(e.apply(x)) - x).norm() <= 1e-8 * x.norm());
}
