// scratch: solver-level timing and quality across sizes
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
  const int trials = argc > 3 ? atoi(argv[3]) : 3;
  const int max_sweeps = argc > 4 ? atoi(argv[4]) : 500;

  for (int t = 0; t < trials; ++t) {
    Rng rng(100 + t);
    auto e = std::make_shared<MeasurementEnsemble>(make_random_filters(p, J, 40 + t));
    const Vec x = rng.complex_normal_vector(p);
    const RealVec b = e->apply(x).cwiseAbs();
    const Mat M = build_M(*e, b);
    const double scale = spectral_norm_hermitian(M) * double(e->n);

    PhaseCutOptions opts;
    opts.continuation = true;
    opts.max_sweeps = max_sweeps;
    const auto t0 = std::chrono::steady_clock::now();
    const PhaseCutState state = solve_phasecut(M, opts);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    PhaseProblem problem = make_problem(e, b, false, x);
    const Vec u = round_spectral(state.U);
    const Vec xt = e->apply_pinv(b.cast<cx>().cwiseProduct(u));
    const double eps0 = error_signal(x, xt);
    const double eps1 = error_signal(x, refine(problem, xt, 2000));
    std::printf(
        "trial %d: sweeps=%3d conv=%d obj=%.3e target=%.3e ratio=%.2e eps=%.2e->%.2e  %.2fs\n",
        t, state.sweep, int(state.converged), state.objective, 1e-6 * scale,
        leading_ratio(state.U), eps0, eps1, secs);
  }
  return 0;
}
