#include <doctest.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "phasecut/experiments.hpp"
#include "phasecut/metrics.hpp"
#include "phasecut/operators.hpp"
#include "phasecut/rng.hpp"
#include "phasecut/signals.hpp"

using namespace phasecut;

TEST_CASE("gen_signal") {
  SUBCASE("gaussian class is reproducible with unit variance") {
    const Vec a = gen_signal({SignalClass::gaussian, 128, 5});
    const Vec b = gen_signal({SignalClass::gaussian, 128, 5});
    CHECK((a - b).norm() == 0.0);
    CHECK(a.cwiseAbs2().mean() == doctest::Approx(1.0).epsilon(0.2));
  }
  SUBCASE("sinusoids occupy exactly the drawn number of DFT bins") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Index p = 64;
      const Vec x = gen_signal({SignalClass::sinusoids, p, seed});
      Fft fft(p);
      const Vec spectrum = fft.forward(x);
      int support = 0;
      for (Index k = 0; k < p; ++k)
        if (std::abs(spectrum[k]) > 1e-6 * spectrum.cwiseAbs().maxCoeff()) ++support;
      CHECK(support >= 4);
      CHECK(support <= 8);
    }
  }
  SUBCASE("scanlines are piecewise smooth relative to noise") {
    double tv_scan = 0.0, tv_gauss = 0.0, e_scan = 0.0, e_gauss = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Vec s = gen_signal({SignalClass::scanline, 128, seed});
      const Vec g = gen_signal({SignalClass::gaussian, 128, seed});
      for (Index m = 1; m < 128; ++m) {
        tv_scan += std::abs(s[m] - s[m - 1]);
        tv_gauss += std::abs(g[m] - g[m - 1]);
      }
      e_scan += s.norm();
      e_gauss += g.norm();
    }
    CHECK(tv_scan / e_scan <= 0.5 * tv_gauss / e_gauss);
  }
}

TEST_CASE("add_noise") {
  Rng rng(7);
  const RealVec b = rng.normal_vector(50).cwiseAbs() + RealVec::Ones(50);
  SUBCASE("zero level is the identity") {
    CHECK((add_noise(b, 0.0, 3) - b).norm() == 0.0);
  }
  SUBCASE("relative norm of the perturbation matches the level") {
    // Use a level small enough that clipping never engages.
    const RealVec noisy = add_noise(b, 1e-3, 3);
    CHECK((noisy - b).norm() / b.norm() == doctest::Approx(1e-3).epsilon(1e-10));
  }
  SUBCASE("deterministic under seed and nonnegative") {
    const RealVec a = add_noise(b, 0.5, 11);
    CHECK((a - add_noise(b, 0.5, 11)).norm() == 0.0);
    CHECK(a.minCoeff() >= 0.0);
  }
}

TEST_CASE("error metrics") {
  Rng rng(11);
  const Vec x = rng.complex_normal_vector(12);
  SUBCASE("global phase invariance") {
    const Vec y = std::polar(1.0, 0.77) * x;
    CHECK(error_signal(x, y) <= 1e-12);
  }
  SUBCASE("orthogonal vectors score sqrt(2)") {
    Vec a = Vec::Zero(2), b = Vec::Zero(2);
    a[0] = 1.0;
    b[1] = 1.0;
    CHECK(error_signal(a, b) == doctest::Approx(std::sqrt(2.0)));
  }
  SUBCASE("error_modulus ignores the global phase and the Fourier twin") {
    auto e = make_oversampled_fourier(8, 4);
    CHECK(error_modulus(e, x.head(8), Vec(std::polar(1.0, 1.3) * x.head(8))) <= 1e-12);
    Vec twin(8);
    for (Index m = 0; m < 8; ++m) twin[m] = std::conj(x[8 - 1 - m]);
    CHECK(error_modulus(e, x.head(8), twin) <= 1e-10);
    CHECK(error_signal(x.head(8), twin) > 0.1);  // generically far in signal space
  }
  SUBCASE("x = 0 is rejected") {
    CHECK_THROWS_AS(error_signal(Vec::Zero(3), x.head(3)), std::domain_error);
  }
}

TEST_CASE("run_trial plumbing") {
  HarnessConfig cfg;
  cfg.p = 10;
  cfg.J = 3;
  cfg.trials = 1;
  cfg.solver.max_sweeps = 200;
  cfg.lift.K = 2;
  cfg.lift.inner_iters = 150;
  auto e = std::make_shared<MeasurementEnsemble>(make_random_filters(10, 3, 23));
  Rng rng(23);
  const Vec x = rng.complex_normal_vector(10);
  const RealVec b = e->apply(x).cwiseAbs();
  PhaseProblem problem = make_problem(e, b, false, x);

  for (Method m : {Method::gs, Method::greedy_phase, Method::phasecut, Method::phasecutmod,
                   Method::phaselift, Method::weak_phaselift, Method::real_sdp}) {
    const TrialResult row = run_trial(m, problem, cfg, 5);
    INFO(to_string(m));
    CHECK(row.error.empty());
    CHECK(std::isfinite(row.eps_signal));
    CHECK(std::isfinite(row.eps_modulus));
    CHECK(row.wall_ms >= 0.0);
  }
}

TEST_CASE("recovery table on a tiny configuration") {
  TableConfig config;
  config.harness.p = 8;
  config.harness.J = 3;
  config.harness.trials = 4;
  config.harness.master_seed = 99;
  config.harness.solver.max_sweeps = 300;
  config.methods = {Method::phasecut};
  config.operators = {OperatorKind::random_filters};
  config.classes = {SignalClass::gaussian};

  const auto cells = run_recovery_table(config);
  REQUIRE(cells.size() == 1);
  CHECK(cells[0].trials == 4);
  CHECK(cells[0].recovery_rate >= 0.75);  // tiny exact instances recover

  SUBCASE("reports are bit-reproducible under the same seed") {
    const auto again = run_recovery_table(config);
    REQUIRE(again[0].rows.size() == cells[0].rows.size());
    for (std::size_t i = 0; i < cells[0].rows.size(); ++i) {
      CHECK(again[0].rows[i].eps_signal == cells[0].rows[i].eps_signal);
      CHECK(again[0].rows[i].eps_modulus == cells[0].rows[i].eps_modulus);
      CHECK(again[0].rows[i].seed == cells[0].rows[i].seed);
    }
  }
  SUBCASE("refinement does not worsen the modulus error on exact data") {
    for (const TrialResult& row : cells[0].rows)
      CHECK(row.eps_modulus <= row.eps_modulus_pre_refine + 1e-9);
  }
  SUBCASE("csv writer emits the per-trial schema") {
    std::ostringstream os;
    write_trials_csv(os, cells[0].rows);
    const std::string text = os.str();
    CHECK(text.find("method,operator,class,seed,eps_signal,eps_modulus,recovered,iterations,"
                    "wall_ms") == 0);
  }
  SUBCASE("json summary carries the aggregate fields") {
    const nlohmann::json j = cell_summary_json(cells[0]);
    CHECK(j.at("recovery_rate").get<double>() == doctest::Approx(cells[0].recovery_rate));
    CHECK(j.contains("mean_modulus_error"));
  }
}

TEST_CASE("crossing_point interpolation") {
  std::vector<Index> n{10, 20, 30, 40};
  SUBCASE("interpolates the upward crossing") {
    std::vector<double> rates{0.0, 0.25, 0.75, 1.0};
    CHECK(crossing_point(n, rates) == doctest::Approx(25.0));
  }
  SUBCASE("starts recovered") {
    std::vector<double> rates{0.8, 0.9, 1.0, 1.0};
    CHECK(crossing_point(n, rates) == doctest::Approx(10.0));
  }
  SUBCASE("never crosses") {
    std::vector<double> rates{0.0, 0.1, 0.2, 0.3};
    CHECK(std::isnan(crossing_point(n, rates)));
  }
}

TEST_CASE("parallel_for covers every index exactly once") {
  std::vector<int> hits(257, 0);
  parallel_for(4, 257, [&](int i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
}
