// scratch: continuation schedule tuning for the pair solver
#include <chrono>
#include <cstdio>

#include "phasecut/linalg.hpp"
#include "phasecut/operators.hpp"
#include "phasecut/phasecut_sdp.hpp"
#include "phasecut/phaselift.hpp"
#include "phasecut/rng.hpp"
#include "phasecut/signals.hpp"

using namespace phasecut;

int main(int argc, char** argv) {
  const Index p = argc > 1 ? atol(argv[1]) : 16;
  const double stall_factor = argc > 2 ? atof(argv[2]) : 0.05;
  const double stage_factor = argc > 3 ? atof(argv[3]) : 0.5;
  const double floor_hat = argc > 4 ? atof(argv[4]) : 1e-7;
  const int max_sweeps = argc > 5 ? atoi(argv[5]) : 6000;

  auto e = make_cauchy_wavelet(p, 4, 5);
  const Vec sig = gen_signal({SignalClass::gaussian, p, 901});
  const Vec x = sig.real().cast<cx>();
  const RealVec b = e.apply(x).cwiseAbs();
  const RealifiedProblem real = realify_problem(e, b);
  const double scale = spectral_norm_hermitian(real.M2.cast<cx>());

  RealPhaseCutState state;
  state.V = 0.5 * RealMat::Identity(2 * e.n, 2 * e.n);
  state.sigma = 1e-2 * scale;
  const double sigma_floor = floor_hat * scale;
  double prev = (state.V.cwiseProduct(real.M2)).sum();
  int stage_sweeps = 0;
  const auto t0 = std::chrono::steady_clock::now();

  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    for (Index i = 0; i < e.n; ++i) bcd_step_real(state, real.M2, i);
    ++stage_sweeps;
    const double obj = (state.V.cwiseProduct(real.M2)).sum();
    const double dec = prev - obj;
    prev = obj;
    const bool at_floor = state.sigma <= sigma_floor;
    const double stall = at_floor ? 1e-8 : std::max(1e-8, stall_factor * state.sigma / scale);
    if (dec <= stall * (1.0 + std::abs(obj))) {
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::printf("stage sigma=%.2e done after %4d sweeps (total %4d) obj=%.3e ratio=%.2e %.1fs\n",
                  state.sigma / scale, stage_sweeps, sweep, obj, leading_ratio(state.V), secs);
      if (at_floor) break;
      state.sigma = std::max(stage_factor * state.sigma, sigma_floor);
      stage_sweeps = 0;
    }
  }
  return 0;
}
