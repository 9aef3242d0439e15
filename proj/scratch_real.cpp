// scratch: pair-block real solver on wavelet instances
#include <chrono>
#include <cstdio>

#include "phasecut/experiments.hpp"
#include "phasecut/greedy.hpp"
#include "phasecut/linalg.hpp"
#include "phasecut/metrics.hpp"
#include "phasecut/operators.hpp"
#include "phasecut/phasecut_sdp.hpp"
#include "phasecut/phaselift.hpp"
#include "phasecut/rng.hpp"
#include "phasecut/signals.hpp"

using namespace phasecut;

int main(int argc, char** argv) {
  const Index p = argc > 1 ? atol(argv[1]) : 16;
  const int max_sweeps = argc > 2 ? atoi(argv[2]) : 1500;
  const int trials = argc > 3 ? atoi(argv[3]) : 3;

  setvbuf(stdout, nullptr, _IOLBF, 0);
  auto shared = std::make_shared<MeasurementEnsemble>(make_cauchy_wavelet(p, 4, 5));
  std::printf("wavelet p=%ld n=%ld\n", (long)p, (long)shared->n);

  for (int t = 0; t < trials; ++t) {
    const Vec sig = gen_signal({SignalClass::gaussian, p, std::uint64_t(900 + t)});
    const Vec x = sig.real().cast<cx>();
    const RealVec b = shared->apply(x).cwiseAbs();
    PhaseProblem problem = make_problem(shared, b, true, x);
    const RealifiedProblem& real = *problem.realified;
    const double scale = real.M2.norm() * double(2 * shared->n);

    PhaseCutOptions opts;
    opts.continuation = true;
    opts.max_sweeps = max_sweeps;
    const auto t0 = std::chrono::steady_clock::now();
    const RealPhaseCutState state = solve_phasecut_real(real.M2, opts);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    // invariants
    double pair_violation = 0.0;
    for (Index i = 0; i < shared->n; ++i)
      pair_violation = std::max(
          pair_violation, std::abs(state.V(i, i) + state.V(shared->n + i, shared->n + i) - 1.0));
    Eigen::SelfAdjointEigenSolver<RealMat> es(state.V, Eigen::EigenvaluesOnly);

    HarnessConfig cfg;
    const TrialResult row = run_trial(Method::phasecut, problem, cfg, 1000 + t);
    std::printf(
        "t%d: sweeps=%4d conv=%d obj=%.3e tgt=%.3e ratio=%.2e pair=%.1e lmin=%.1e | trial eps=%.2e "
        "ratio=%.2e rec=%d  %.1fs\n",
        t, state.sweep, int(state.converged), state.objective, 1e-6 * scale,
        leading_ratio(state.V), pair_violation, es.eigenvalues().minCoeff(), row.eps_signal,
        row.leading_ratio, int(row.recovered), secs);
  }
  return 0;
}
