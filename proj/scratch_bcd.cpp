// scratch: BCD convergence diagnosis (not part of the build)
#include <chrono>
#include <cstdio>

#include "phasecut/greedy.hpp"
#include "phasecut/linalg.hpp"
#include "phasecut/metrics.hpp"
#include "phasecut/operators.hpp"
#include "phasecut/phasecut_sdp.hpp"
#include "phasecut/phaselift.hpp"
#include "phasecut/rng.hpp"

using namespace phasecut;

int main(int argc, char** argv) {
  const Index p = argc > 1 ? atol(argv[1]) : 12;
  const int J = argc > 2 ? atoi(argv[2]) : 4;
  const int max_sweeps = argc > 3 ? atoi(argv[3]) : 500;
  Rng rng(2024);

  auto e = make_random_filters(p, J, 8);
  const Vec x = rng.complex_normal_vector(p);
  const RealVec b = e.apply(x).cwiseAbs();
  const Mat M = build_M(e, b);
  const double scale = spectral_norm_hermitian(M) * double(e.n);
  std::printf("n=%ld scale=%.3e\n", (long)e.n, scale);

  PhaseCutState state;
  state.U = Mat::Identity(e.n, e.n);
  state.nu = 1e-2;
  double prev = 0.0;
  const auto t0 = std::chrono::steady_clock::now();
  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    for (Index i = 0; i < e.n; ++i) bcd_step(state, M, i);
    state.U.diagonal().setOnes();
    const double obj = state.U.cwiseProduct(M.conjugate()).sum().real();
    const double dec = prev - obj;
    if (sweep <= 10 || sweep % 25 == 0)
      std::printf("sweep %4d nu=%.1e obj=%.6e rel_dec=%.2e ratio=%.2e\n", sweep, state.nu, obj,
                  dec / (1.0 + std::abs(obj)), leading_ratio(state.U));
    if (dec <= 1e-8 * (1.0 + std::abs(obj)) && sweep > 1) {
      if (state.nu > 1e-6) {
        state.nu = std::max(state.nu * 0.5, 1e-6);
      } else {
        std::printf("stalled at sweep %d, obj=%.6e (target %.3e)\n", sweep, obj, 1e-6 * scale);
        break;
      }
    }
    prev = obj;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("final obj=%.6e target=%.3e ratio=%.3e time=%.2fs\n", prev, 1e-6 * scale,
              leading_ratio(state.U), secs);

  const Vec u = round_spectral(state.U);
  PhaseProblem problem = make_problem(std::make_shared<MeasurementEnsemble>(std::move(e)), b,
                                      false, x);
  const Vec xt = problem.ensemble->apply_pinv(b.cast<cx>().cwiseProduct(u));
  std::printf("eps before refine=%.3e after=%.3e\n", error_signal(x, xt),
              error_signal(x, refine(problem, xt, 2000)));
  return 0;
}
