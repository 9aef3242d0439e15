// scratch: criterion-2 configuration probe (wavelet, real signals)
#include <chrono>
#include <cstdio>

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
  const int max_sweeps = argc > 2 ? atoi(argv[2]) : 3000;
  const int trials = argc > 3 ? atoi(argv[3]) : 3;
  const double floor_nu = argc > 4 ? atof(argv[4]) : 1e-6;

  auto shared = std::make_shared<MeasurementEnsemble>(make_cauchy_wavelet(p, 4, 5));
  std::printf("wavelet p=%ld n=%ld sigma_min/max=%.3e\n", (long)p, (long)shared->n,
              shared->sigma_min / shared->sigma_max);

  for (int t = 0; t < trials; ++t) {
    const Vec sig = gen_signal({SignalClass::gaussian, p, std::uint64_t(900 + t)});
    const Vec x = sig.real().cast<cx>();
    const RealVec b = shared->apply(x).cwiseAbs();
    const Mat M = build_M(*shared, b);
    const double scale = spectral_norm_hermitian(M) * double(shared->n);

    PhaseCutOptions opts;
    opts.continuation = true;
    opts.max_sweeps = max_sweeps;
    opts.nu_floor = floor_nu;
    const auto t0 = std::chrono::steady_clock::now();
    const PhaseCutState state = solve_phasecut(M, opts);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    PhaseProblem problem = make_problem(shared, b, true, x);
    const Vec u = round_spectral(state.U);
    const Vec xt = shared->apply_pinv(b.cast<cx>().cwiseProduct(u));
    const double eps0 = error_signal(x, xt);
    const double eps1 = error_signal(x, refine(problem, xt, 2000));
    std::printf(
        "trial %d: sweeps=%4d conv=%d nu=%.1e obj=%.3e tgt=%.3e ratio=%.2e eps=%.2e->%.2e %.1fs\n",
        t, state.sweep, int(state.converged), state.nu, state.objective, 1e-6 * scale,
        leading_ratio(state.U), eps0, eps1, secs);
  }
  return 0;
}
