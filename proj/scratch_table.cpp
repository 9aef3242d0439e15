// scratch: harness-level timing for one table cell
#include <chrono>
#include <cstdio>
#include <cstring>

#include "phasecut/experiments.hpp"

using namespace phasecut;

int main(int argc, char** argv) {
  setvbuf(stdout, nullptr, _IOLBF, 0);
  const char* method = argc > 1 ? argv[1] : "phasecut";
  const char* op = argc > 2 ? argv[2] : "filters";
  const char* cls = argc > 3 ? argv[3] : "gaussian";
  const long p = argc > 4 ? atol(argv[4]) : 64;
  const int trials = argc > 5 ? atoi(argv[5]) : 5;
  const bool real = argc > 6 && std::strcmp(argv[6], "real") == 0;

  TableConfig config;
  config.harness.p = p;
  config.harness.J = 4;
  config.harness.trials = trials;
  config.harness.real_signals = real;
  config.harness.master_seed = 7;
  config.methods = {method_from_string(method)};
  config.operators = {operator_kind_from_string(op)};
  config.classes = {signal_class_from_string(cls)};

  const auto t0 = std::chrono::steady_clock::now();
  const auto cells = run_recovery_table(config);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  for (const auto& cell : cells) {
    std::printf("%s/%s/%s: rate=%.2f rank1=%.2f mean_sig=%.3e mean_mod=%.3e  (%.1fs total)\n",
                to_string(cell.method), to_string(cell.op), to_string(cell.signal_class),
                cell.recovery_rate, cell.rank_one_rate, cell.mean_signal_error,
                cell.mean_modulus_error, secs);
    for (const auto& r : cell.rows)
      std::printf("  seed=%llu eps=%.2e ratio=%.2e rec=%d conv=%d it=%d %.0fms%s%s\n",
                  (unsigned long long)r.seed, r.eps_signal, r.leading_ratio, int(r.recovered),
                  int(r.converged), r.iterations, r.wall_ms, r.error.empty() ? "" : " ERR:",
                  r.error.c_str());
  }
  return 0;
}
