#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "phasecut/operators.hpp"
#include "phasecut/signals.hpp"
#include "phasecut/types.hpp"

namespace phasecut {

enum class Method { gs, greedy_phase, phasecut, phasecutmod, phaselift, weak_phaselift, real_sdp };

const char* to_string(Method m);
Method method_from_string(const std::string& name);

/// PhaseCut solver knobs exposed through the CLI/config.
struct SolverConfig {
  double nu = 1e-2;
  int max_sweeps = 500;
  double tol = 1e-8;
  double gamma_pen = -1.0;  // < 0: 1e-2 ||M||/||B||
  int samples = 20;         // randomized-rounding draws; 0 = spectral only
  bool continuation = true;
};

/// PhaseLift solver knobs.
struct LiftConfig {
  double lambda = -1.0;  // < 0: 1e-3 ||b^2||
  double eta = -1.0;     // < 0: 1e-2 Tr(X)/p per round
  int K = 10;
  int inner_iters = 1000;
};

struct HarnessConfig {
  Index p = 64;
  int J = 4;
  int d = 5;
  int trials = 20;
  double noise = 0.0;
  bool real_signals = false;
  std::uint64_t master_seed = 7;
  int workers = 0;  // 0 = hardware concurrency
  double recovery_threshold = 1e-2;
  int gs_iters = 2000;
  int refine_iters = 2000;
  SolverConfig solver;
  LiftConfig lift;
};

struct TrialResult {
  Method method = Method::gs;
  OperatorKind op = OperatorKind::dense;
  SignalClass signal_class = SignalClass::gaussian;
  std::uint64_t seed = 0;
  double eps_signal = 0.0;
  double eps_modulus = 0.0;
  double eps_modulus_pre_refine = 0.0;  // before the greedy polish (SDP methods)
  bool recovered = false;
  bool converged = false;
  int iterations = 0;
  double wall_ms = 0.0;
  double leading_ratio = 0.0;  // of the relaxation matrix, when one exists
  double objective = 0.0;
  std::string error;  // non-empty when the solver failed on this trial
};

struct CellSummary {
  Method method = Method::gs;
  OperatorKind op = OperatorKind::dense;
  SignalClass signal_class = SignalClass::gaussian;
  int trials = 0;
  double recovery_rate = 0.0;
  double mean_signal_error = 0.0;   // over non-recovered trials
  double mean_modulus_error = 0.0;  // over non-recovered trials
  double rank_one_rate = 0.0;       // leading ratio >= 1e3
  std::vector<TrialResult> rows;
};

/// Solves one instance with the given method; SDP methods are rounded
/// and then refined by Gerchberg-Saxton before scoring.
TrialResult run_trial(Method method, const PhaseProblem& problem, const HarnessConfig& cfg,
                      std::uint64_t seed);

struct TableConfig {
  HarnessConfig harness;
  std::vector<Method> methods{Method::gs, Method::phasecut};
  std::vector<OperatorKind> operators{OperatorKind::random_filters};
  std::vector<SignalClass> classes{SignalClass::gaussian, SignalClass::sinusoids,
                                   SignalClass::scanline};
};

std::vector<CellSummary> run_recovery_table(const TableConfig& config);

struct NoiseSweepConfig {
  HarnessConfig harness;
  Method method = Method::phasecut;
  OperatorKind op = OperatorKind::random_filters;
  SignalClass signal_class = SignalClass::gaussian;
  std::vector<double> levels{1e-3, 1e-2, 5e-2, 1e-1};
  bool sparse_measurements = false;  // null out all but the last 4 bins of block 1
};

struct NoiseSweepResult {
  std::vector<double> levels;
  std::vector<double> mean_eps_signal;
  std::vector<double> mean_eps_modulus;
  double slope_signal = 0.0;       // least-squares fit of eps ~ k * level
  double slope_modulus = 0.0;
  double loglog_slope_signal = 0.0;
  double loglog_slope_modulus = 0.0;
  std::vector<TrialResult> rows;
};

NoiseSweepResult run_noise_sweep(const NoiseSweepConfig& config);

struct TransitionConfig {
  HarnessConfig harness;
  std::vector<Method> methods{Method::phaselift, Method::weak_phaselift};
  std::vector<double> ratios{1.6, 2.0, 2.4, 2.8, 3.2, 3.8, 4.2, 4.6, 5.0, 5.6};
  SignalClass signal_class = SignalClass::gaussian;
};

struct TransitionCurve {
  Method method = Method::phaselift;
  std::vector<Index> n_values;
  std::vector<double> recovery_rate;
  std::vector<double> rank_one_rate;
  double recovery_crossing = 0.0;  // n at the 50% upward crossing (NaN if none)
  double rank_one_crossing = 0.0;
  std::vector<TrialResult> rows;
};

std::vector<TransitionCurve> run_transition_sweep(const TransitionConfig& config);

// Report persistence.
void write_trials_csv(std::ostream& out, const std::vector<TrialResult>& rows);
void write_two_column_csv(std::ostream& out, const std::string& xname, const std::string& yname,
                          const std::vector<double>& x, const std::vector<double>& y);
nlohmann::json cell_summary_json(const CellSummary& cell);

/// 50% upward crossing by linear interpolation over (n, rate) pairs.
double crossing_point(const std::vector<Index>& n_values, const std::vector<double>& rates,
                      double level = 0.5);

/// Runs fn(0..count-1) on a small worker pool (sequential when
/// workers <= 1). Results must be written to disjoint slots.
void parallel_for(int workers, int count, const std::function<void(int)>& fn);

}  // namespace phasecut
