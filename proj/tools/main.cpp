// Command-line front end: instance generation, single solves, the
// recovery tables, the noise and transition sweeps, and the randomized
// property suites.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "phasecut/experiments.hpp"
#include "phasecut/greedy.hpp"
#include "phasecut/metrics.hpp"
#include "phasecut/operators.hpp"
#include "phasecut/rng.hpp"
#include "phasecut/selftest.hpp"
#include "phasecut/signals.hpp"

namespace {

using namespace phasecut;

constexpr int kExitOk = 0;
constexpr int kExitBadConfig = 1;
constexpr int kExitSelftestFailure = 2;

struct CommonFlags {
  long p = 64;
  int J = 4;
  int d = 5;
  int trials = 20;
  double noise = 0.0;
  bool real_signals = false;
  std::uint64_t seed = 7;
  int workers = 0;
  std::string out_dir = "reports";
  // solver section
  double nu = 1e-2;
  int max_sweeps = 500;
  double tol = 1e-8;
  double gamma_pen = -1.0;
  int samples = 20;
  bool continuation = true;
  // lift section
  double lift_lambda = -1.0;
  double lift_eta = -1.0;
  int lift_K = 10;
  int lift_inner = 1000;
};

void attach_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--p", flags.p, "signal length");
  cmd->add_option("--J", flags.J, "oversampling / filter count");
  cmd->add_option("--d", flags.d, "Cauchy wavelet exponent");
  cmd->add_option("--trials", flags.trials, "trials per cell");
  cmd->add_option("--noise", flags.noise, "relative noise level on b");
  cmd->add_flag("--real", flags.real_signals, "treat signals as real valued");
  cmd->add_option("--seed", flags.seed, "master seed");
  cmd->add_option("--workers", flags.workers, "worker threads (0 = auto)");
  cmd->add_option("--out", flags.out_dir, "report output directory");
  cmd->add_option("--nu", flags.nu, "barrier parameter")->group("solver");
  cmd->add_option("--max-sweeps", flags.max_sweeps, "BCD sweep limit")->group("solver");
  cmd->add_option("--tol", flags.tol, "relative stall tolerance")->group("solver");
  cmd->add_option("--gamma-pen", flags.gamma_pen, "trace penalty (auto if < 0)")->group("solver");
  cmd->add_option("--samples", flags.samples, "randomized rounding samples")->group("solver");
  cmd->add_option("--continuation,!--no-continuation", flags.continuation,
                  "halve nu on stalls")->group("solver");
  cmd->add_option("--lambda", flags.lift_lambda, "lift penalty (auto if < 0)")->group("lift");
  cmd->add_option("--eta", flags.lift_eta, "reweighting shift (auto if < 0)")->group("lift");
  cmd->add_option("--K", flags.lift_K, "reweighting rounds")->group("lift");
  cmd->add_option("--inner-iters", flags.lift_inner, "gradient iterations per round")
      ->group("lift");
}

HarnessConfig to_harness(const CommonFlags& flags) {
  HarnessConfig cfg;
  cfg.p = flags.p;
  cfg.J = flags.J;
  cfg.d = flags.d;
  cfg.trials = flags.trials;
  cfg.noise = flags.noise;
  cfg.real_signals = flags.real_signals;
  cfg.master_seed = flags.seed;
  cfg.workers = flags.workers;
  cfg.solver.nu = flags.nu;
  cfg.solver.max_sweeps = flags.max_sweeps;
  cfg.solver.tol = flags.tol;
  cfg.solver.gamma_pen = flags.gamma_pen;
  cfg.solver.samples = flags.samples;
  cfg.solver.continuation = flags.continuation;
  cfg.lift.lambda = flags.lift_lambda;
  cfg.lift.eta = flags.lift_eta;
  cfg.lift.K = flags.lift_K;
  cfg.lift.inner_iters = flags.lift_inner;
  return cfg;
}

std::ofstream open_report(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  std::ofstream out(std::filesystem::path(dir) / name);
  if (!out) throw std::runtime_error("cannot open report file: " + name);
  return out;
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> items;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) items.push_back(item);
  return items;
}

int cmd_gen(const CommonFlags& flags, const std::string& op, const std::string& sclass,
            const std::string& out_file) {
  nlohmann::json desc;
  if (!op.empty()) {
    const OperatorKind kind = operator_kind_from_string(op);
    switch (kind) {
      case OperatorKind::oversampled_fourier:
        desc["ensemble"] = make_oversampled_fourier(flags.p, flags.J).descriptor();
        break;
      case OperatorKind::random_filters:
        desc["ensemble"] = make_random_filters(flags.p, flags.J, flags.seed).descriptor();
        break;
      case OperatorKind::cauchy_wavelet:
        desc["ensemble"] = make_cauchy_wavelet(flags.p, flags.J, flags.d).descriptor();
        break;
      case OperatorKind::gaussian:
        desc["ensemble"] = make_gaussian(Index(flags.J) * flags.p, flags.p, flags.seed)
                               .descriptor();
        break;
      default:
        std::cerr << "gen: unsupported operator kind\n";
        return kExitBadConfig;
    }
  }
  if (!sclass.empty()) {
    desc["signal"] = {{"class", sclass}, {"p", flags.p}, {"seed", flags.seed}};
  }
  if (out_file.empty()) {
    std::cout << desc.dump(2) << "\n";
  } else {
    std::ofstream out(out_file);
    out << desc.dump(2) << "\n";
  }
  return kExitOk;
}

int cmd_solve(const CommonFlags& flags, const std::string& method_name, const std::string& op) {
  const HarnessConfig cfg = to_harness(flags);
  const Method method = method_from_string(method_name);
  const OperatorKind kind = operator_kind_from_string(op);
  const std::uint64_t seed = fanout_seed(cfg.master_seed, "solve", 0);

  std::shared_ptr<const MeasurementEnsemble> ensemble;
  switch (kind) {
    case OperatorKind::oversampled_fourier:
      ensemble = std::make_shared<MeasurementEnsemble>(make_oversampled_fourier(cfg.p, cfg.J));
      break;
    case OperatorKind::random_filters:
      ensemble = std::make_shared<MeasurementEnsemble>(
          make_random_filters(cfg.p, cfg.J, fanout_seed(seed, "operator", 0)));
      break;
    case OperatorKind::cauchy_wavelet:
      ensemble = std::make_shared<MeasurementEnsemble>(make_cauchy_wavelet(cfg.p, cfg.J, cfg.d));
      break;
    case OperatorKind::gaussian:
      ensemble = std::make_shared<MeasurementEnsemble>(
          make_gaussian(Index(cfg.J) * cfg.p, cfg.p, fanout_seed(seed, "operator", 0)));
      break;
    default:
      std::cerr << "solve: unsupported operator kind\n";
      return kExitBadConfig;
  }

  Vec x = gen_signal({SignalClass::gaussian, cfg.p, fanout_seed(seed, "signal", 0)});
  if (cfg.real_signals) x = x.real().cast<cx>();
  RealVec b = ensemble->apply(x).cwiseAbs();
  if (cfg.noise > 0.0) b = add_noise(b, cfg.noise, fanout_seed(seed, "noise", 0));

  const PhaseProblem problem = make_problem(ensemble, b, cfg.real_signals, x);
  const TrialResult row = run_trial(method, problem, cfg, seed);

  nlohmann::json out{{"method", to_string(row.method)},
                     {"operator", to_string(row.op)},
                     {"seed", row.seed},
                     {"eps_signal", row.eps_signal},
                     {"eps_modulus", row.eps_modulus},
                     {"recovered", row.recovered},
                     {"converged", row.converged},
                     {"iterations", row.iterations},
                     {"leading_ratio", row.leading_ratio},
                     {"objective", row.objective},
                     {"wall_ms", row.wall_ms}};
  if (!row.error.empty()) out["error"] = row.error;
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_table(const CommonFlags& flags, const std::string& methods, const std::string& operators,
              const std::string& classes) {
  TableConfig config;
  config.harness = to_harness(flags);
  config.methods.clear();
  for (const auto& m : split_list(methods)) config.methods.push_back(method_from_string(m));
  config.operators.clear();
  for (const auto& o : split_list(operators))
    config.operators.push_back(operator_kind_from_string(o));
  config.classes.clear();
  for (const auto& s : split_list(classes)) config.classes.push_back(signal_class_from_string(s));

  const std::vector<CellSummary> cells = run_recovery_table(config);

  std::vector<TrialResult> all_rows;
  nlohmann::json summary = nlohmann::json::array();
  for (const CellSummary& cell : cells) {
    summary.push_back(cell_summary_json(cell));
    all_rows.insert(all_rows.end(), cell.rows.begin(), cell.rows.end());
    std::cout << to_string(cell.method) << " / " << to_string(cell.op) << " / "
              << to_string(cell.signal_class) << ": recovery " << cell.recovery_rate
              << ", mean eps_signal " << cell.mean_signal_error << ", mean eps_modulus "
              << cell.mean_modulus_error << "\n";
  }

  auto csv = open_report(flags.out_dir, "table_trials.csv");
  write_trials_csv(csv, all_rows);
  auto json_out = open_report(flags.out_dir, "table_summary.json");
  json_out << summary.dump(2) << "\n";
  return kExitOk;
}

int cmd_noise_sweep(const CommonFlags& flags, const std::string& method, const std::string& op,
                    const std::string& levels_csv, bool sparse) {
  NoiseSweepConfig config;
  config.harness = to_harness(flags);
  config.method = method_from_string(method);
  config.op = operator_kind_from_string(op);
  config.sparse_measurements = sparse;
  if (!levels_csv.empty()) {
    config.levels.clear();
    for (const auto& level : split_list(levels_csv)) config.levels.push_back(std::stod(level));
  }

  const NoiseSweepResult result = run_noise_sweep(config);
  std::cout << "fitted eps_signal ~ " << result.slope_signal
            << " x noise (loglog slope " << result.loglog_slope_signal << ")\n"
            << "fitted eps_modulus ~ " << result.slope_modulus
            << " x noise (loglog slope " << result.loglog_slope_modulus << ")\n";

  auto sig = open_report(flags.out_dir, "noise_eps_signal.csv");
  write_two_column_csv(sig, "noise_level", "mean_eps_signal", result.levels,
                       result.mean_eps_signal);
  auto mod = open_report(flags.out_dir, "noise_eps_modulus.csv");
  write_two_column_csv(mod, "noise_level", "mean_eps_modulus", result.levels,
                       result.mean_eps_modulus);
  auto csv = open_report(flags.out_dir, "noise_trials.csv");
  write_trials_csv(csv, result.rows);
  auto json_out = open_report(flags.out_dir, "noise_summary.json");
  json_out << nlohmann::json{{"levels", result.levels},
                             {"mean_eps_signal", result.mean_eps_signal},
                             {"mean_eps_modulus", result.mean_eps_modulus},
                             {"slope_signal", result.slope_signal},
                             {"slope_modulus", result.slope_modulus},
                             {"loglog_slope_signal", result.loglog_slope_signal},
                             {"loglog_slope_modulus", result.loglog_slope_modulus}}
                   .dump(2)
            << "\n";
  return kExitOk;
}

int cmd_transition_sweep(const CommonFlags& flags, const std::string& methods,
                         const std::string& ratios_csv) {
  TransitionConfig config;
  config.harness = to_harness(flags);
  if (!methods.empty()) {
    config.methods.clear();
    for (const auto& m : split_list(methods)) config.methods.push_back(method_from_string(m));
  }
  if (!ratios_csv.empty()) {
    config.ratios.clear();
    for (const auto& r : split_list(ratios_csv)) config.ratios.push_back(std::stod(r));
  }

  const std::vector<TransitionCurve> curves = run_transition_sweep(config);
  nlohmann::json summary = nlohmann::json::array();
  for (const TransitionCurve& curve : curves) {
    std::cout << to_string(curve.method) << ": 50% recovery crossing at n ~ "
              << curve.recovery_crossing << ", rank-one crossing at n ~ "
              << curve.rank_one_crossing << "\n";
    std::vector<double> ns(curve.n_values.begin(), curve.n_values.end());
    auto rec = open_report(flags.out_dir,
                           std::string("transition_recovery_") + to_string(curve.method) + ".csv");
    write_two_column_csv(rec, "n", "recovery_rate", ns, curve.recovery_rate);
    auto rank = open_report(flags.out_dir,
                            std::string("transition_rankone_") + to_string(curve.method) + ".csv");
    write_two_column_csv(rank, "n", "rank_one_rate", ns, curve.rank_one_rate);
    auto csv = open_report(flags.out_dir,
                           std::string("transition_trials_") + to_string(curve.method) + ".csv");
    write_trials_csv(csv, curve.rows);
    summary.push_back({{"method", to_string(curve.method)},
                       {"recovery_crossing", curve.recovery_crossing},
                       {"rank_one_crossing", curve.rank_one_crossing}});
  }
  auto json_out = open_report(flags.out_dir, "transition_summary.json");
  json_out << summary.dump(2) << "\n";
  return kExitOk;
}

int cmd_selftest(std::uint64_t seed) {
  const auto results = selftest::run_property_suites(seed);
  for (const auto& r : results) {
    std::cout << (r.passed ? "PASS" : "FAIL") << "  " << r.name << " (" << r.instances
              << " checks)";
    if (!r.passed) std::cout << "  [" << r.detail << "]";
    std::cout << "\n";
  }
  return selftest::all_passed(results) ? kExitOk : kExitSelftestFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase retrieval via the complex MaxCut relaxation: solvers and benchmarks"};
  app.require_subcommand(1);
  app.set_config("--config")->expected(1)->description("INI config file; flags override it");

  CommonFlags flags;

  auto* gen = app.add_subcommand("gen", "emit signal/ensemble descriptors");
  std::string gen_op, gen_class, gen_out;
  attach_common(gen, flags);
  gen->add_option("--operator", gen_op, "operator kind to describe");
  gen->add_option("--class", gen_class, "signal class to describe");
  gen->add_option("--out-file", gen_out, "write JSON here instead of stdout");

  auto* solve = app.add_subcommand("solve", "solve one instance");
  std::string solve_method = "phasecut", solve_op = "filters";
  attach_common(solve, flags);
  solve->add_option("--method", solve_method, "solution method");
  solve->add_option("--operator", solve_op, "operator kind");

  auto* table = app.add_subcommand("table", "recovery-rate tables");
  std::string table_methods = "gs,phasecut", table_ops = "filters",
              table_classes = "gaussian,sinusoids,scanline";
  attach_common(table, flags);
  table->add_option("--methods", table_methods, "comma-separated methods");
  table->add_option("--operators", table_ops, "comma-separated operator kinds");
  table->add_option("--classes", table_classes, "comma-separated signal classes");

  auto* noise = app.add_subcommand("noise-sweep", "reconstruction error vs noise level");
  std::string noise_method = "phasecut", noise_op = "filters", noise_levels;
  bool noise_sparse = false;
  attach_common(noise, flags);
  noise->add_option("--method", noise_method, "solution method");
  noise->add_option("--operator", noise_op, "operator kind");
  noise->add_option("--levels", noise_levels, "comma-separated noise levels");
  noise->add_flag("--sparse", noise_sparse, "force near-sparse measurements");

  auto* transition = app.add_subcommand("transition-sweep",
                                        "recovery/rank-one rates vs measurement count");
  std::string trans_methods = "phaselift,weak_phaselift", trans_ratios;
  attach_common(transition, flags);
  transition->add_option("--methods", trans_methods, "comma-separated methods");
  transition->add_option("--ratios", trans_ratios, "comma-separated n/p ratios");

  auto* selftest_cmd = app.add_subcommand("selftest", "randomized property suites");
  std::uint64_t selftest_seed = 0xACCE97;
  selftest_cmd->add_option("--seed", selftest_seed, "suite seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadConfig;
  }

  try {
    if (gen->parsed()) return cmd_gen(flags, gen_op, gen_class, gen_out);
    if (solve->parsed()) return cmd_solve(flags, solve_method, solve_op);
    if (table->parsed()) return cmd_table(flags, table_methods, table_ops, table_classes);
    if (noise->parsed())
      return cmd_noise_sweep(flags, noise_method, noise_op, noise_levels, noise_sparse);
    if (transition->parsed()) return cmd_transition_sweep(flags, trans_methods, trans_ratios);
    if (selftest_cmd->parsed()) return cmd_selftest(selftest_seed);
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitBadConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadConfig;
  }
  return kExitBadConfig;
}
