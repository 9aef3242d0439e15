#include "phasecut/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "phasecut/greedy.hpp"
#include "phasecut/linalg.hpp"
#include "phasecut/metrics.hpp"
#include "phasecut/phasecut_sdp.hpp"
#include "phasecut/phaselift.hpp"
#include "phasecut/rng.hpp"

namespace phasecut {

const char* to_string(Method m) {
  switch (m) {
    case Method::gs: return "gs";
    case Method::greedy_phase: return "greedy_phase";
    case Method::phasecut: return "phasecut";
    case Method::phasecutmod: return "phasecutmod";
    case Method::phaselift: return "phaselift";
    case Method::weak_phaselift: return "weak_phaselift";
    case Method::real_sdp: return "real_sdp";
  }
  return "unknown";
}

Method method_from_string(const std::string& name) {
  if (name == "gs") return Method::gs;
  if (name == "greedy_phase") return Method::greedy_phase;
  if (name == "phasecut") return Method::phasecut;
  if (name == "phasecutmod") return Method::phasecutmod;
  if (name == "phaselift") return Method::phaselift;
  if (name == "weak_phaselift") return Method::weak_phaselift;
  if (name == "real_sdp") return Method::real_sdp;
  throw std::invalid_argument("unknown method: " + name);
}

void parallel_for(int workers, int count, const std::function<void(int)>& fn) {
  if (workers <= 0) workers = int(std::thread::hardware_concurrency());
  workers = std::max(1, std::min(workers, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  for (auto& t : pool) t.join();
}

namespace {

bool is_sdp_method(Method m) {
  return m == Method::phasecut || m == Method::phasecutmod || m == Method::phaselift ||
         m == Method::weak_phaselift || m == Method::real_sdp;
}

/// x from a phase vector u: the least-squares signal for y = diag(b) u.
Vec signal_from_phases(const PhaseProblem& problem, const Vec& u) {
  const Vec y = problem.b.cast<cx>().cwiseProduct(u);
  return problem.ensemble->apply_pinv(y);
}

/// Real signal from a pair-constrained relaxation matrix: leading
/// eigenvector, per-pair phase normalization, least squares through A2.
Vec signal_from_real_V(const RealifiedProblem& real, const RealMat& V) {
  Eigen::SelfAdjointEigenSolver<RealMat> es(V);
  const Index two_n = V.rows();
  const Index n = two_n / 2;
  const RealVec w =
      es.eigenvectors().col(two_n - 1) * std::sqrt(std::max(es.eigenvalues()[two_n - 1], 0.0));
  RealVec v(two_n);
  for (Index i = 0; i < n; ++i) {
    const double norm = std::hypot(w[i], w[n + i]);
    v[i] = norm > 0.0 ? w[i] / norm : 1.0;
    v[n + i] = norm > 0.0 ? w[n + i] / norm : 0.0;
  }
  const RealVec x2 = real.A2_pinv * real.b2.cwiseProduct(v);
  return x2.cast<cx>();
}

PhaseCutOptions to_options(const SolverConfig& cfg) {
  PhaseCutOptions opts;
  opts.nu = cfg.nu;
  opts.max_sweeps = cfg.max_sweeps;
  opts.tol = cfg.tol;
  opts.continuation = cfg.continuation;
  return opts;
}

/// Candidate polish for the solver's vertex certificate: a short
/// alternating-projection run through the measurement operator.
PhaseCutOptions with_polish(PhaseCutOptions opts, const PhaseProblem& problem, int iters) {
  const PhaseProblem* prob = &problem;
  opts.polish_phases = [prob, iters](const Vec& u) {
    const Vec x = prob->ensemble->apply_pinv(prob->b.cast<cx>().cwiseProduct(u));
    const Vec ax = prob->ensemble->apply(refine(*prob, x, iters));
    Vec out(ax.size());
    for (Index i = 0; i < ax.size(); ++i) {
      const double a = std::abs(ax[i]);
      out[i] = a > 0.0 ? ax[i] / a : u[i];
    }
    return out;
  };
  opts.polish_pairs = [prob, iters](const RealVec& v) {
    const RealifiedProblem& real = *prob->realified;
    const Index n = prob->ensemble->n;
    const RealVec x2 = real.A2_pinv * real.b2.cwiseProduct(v);
    const Vec ax = prob->ensemble->apply(refine(*prob, x2.cast<cx>(), iters));
    RealVec out(2 * n);
    for (Index i = 0; i < n; ++i) {
      const double a = std::abs(ax[i]);
      out[i] = a > 0.0 ? ax[i].real() / a : v[i];
      out[n + i] = a > 0.0 ? ax[i].imag() / a : v[n + i];
    }
    return out;
  };
  return opts;
}

/// Solves, rounds and scores one instance.
void solve_dispatch(Method method, const PhaseProblem& problem, const HarnessConfig& cfg,
                    std::uint64_t seed, TrialResult& row) {
  const MeasurementEnsemble& e = *problem.ensemble;
  Rng rng(fanout_seed(seed, "init", 0));
  Vec x_tilde;

  switch (method) {
    case Method::gs: {
      const Vec y0 = problem.b.cast<cx>().cwiseProduct(rng.unit_phase_vector(e.n));
      GsResult res = gerchberg_saxton(problem, y0, cfg.gs_iters);
      x_tilde = res.x;
      row.iterations = res.trace.iterations;
      row.converged = res.trace.converged;
      row.objective = res.trace.final_residual;
      break;
    }
    case Method::greedy_phase: {
      const Mat M = build_M(e, problem.b);
      GreedyPhaseResult res = greedy_phase(M, rng.unit_phase_vector(e.n), cfg.gs_iters);
      x_tilde = signal_from_phases(problem, res.u);
      row.iterations = res.trace.iterations;
      row.converged = res.trace.converged;
      row.objective = res.trace.final_residual;
      break;
    }
    case Method::phasecut:
    case Method::phasecutmod: {
      if (problem.real_signal) {
        // Real pipeline: pair-constrained solver on M2 (optionally with
        // the B2 trace penalty), then per-pair phase extraction.
        const RealifiedProblem& real = *problem.realified;
        RealMat M2 = real.M2;
        if (method == Method::phasecutmod) {
          double gamma = cfg.solver.gamma_pen;
          if (gamma < 0.0) {
            const double nb = real.B2.norm();
            gamma = nb > 0.0 ? 1e-2 * real.M2.norm() / nb : 0.0;
          }
          M2 = RealMat(M2 + gamma * real.B2);
        }
        const RealPhaseCutState state =
            solve_phasecut_real(M2, with_polish(to_options(cfg.solver), problem, 200));
        x_tilde = signal_from_real_V(real, state.V);
        row.iterations = state.sweep;
        row.converged = state.converged;
        row.objective = state.objective;
        row.leading_ratio = leading_ratio(state.V);
        break;
      }
      const Mat M = build_M(e, problem.b);
      const PhaseCutOptions opts = with_polish(to_options(cfg.solver), problem, 200);
      PhaseCutState state;
      if (method == Method::phasecutmod)
        state = solve_phasecut_mod(M, build_B(e, problem.b), cfg.solver.gamma_pen, opts);
      else
        state = solve_phasecut(M, opts);

      Vec u = round_spectral(state.U);
      double best = u.dot(M * u).real();
      if (cfg.solver.samples > 0) {
        const RoundingReport report =
            round_randomized(state.U, M, cfg.solver.samples, fanout_seed(seed, "round", 0));
        if (report.qp_value < best) {
          best = report.qp_value;
          u = report.u;
        }
      }
      x_tilde = signal_from_phases(problem, u);
      row.iterations = state.sweep;
      row.converged = state.converged;
      row.objective = state.objective;
      row.leading_ratio = leading_ratio(state.U);
      break;
    }
    case Method::phaselift:
    case Method::weak_phaselift: {
      LiftState state;
      if (method == Method::phaselift)
        state = phaselift_reweighted(problem, cfg.lift.K, cfg.lift.eta, cfg.lift.lambda,
                                     cfg.lift.inner_iters);
      else
        state = weak_phaselift(problem, cfg.lift.inner_iters);
      x_tilde = extract_signal(state.X);
      row.iterations = int(state.objective_history.size());
      row.converged = state.converged;
      row.objective = state.residual;
      row.leading_ratio = leading_ratio(state.X);
      break;
    }
    case Method::real_sdp: {
      const RealifiedProblem real =
          problem.realified ? *problem.realified : realify_problem(e, problem.b);
      RealSdpResult res = solve_real_sdp(real.M2, cfg.lift.inner_iters);
      x_tilde = signal_from_real_V(real, res.V);
      row.iterations = res.iterations;
      row.converged = res.converged;
      row.objective = res.objective;
      row.leading_ratio = leading_ratio(res.V);
      break;
    }
  }

  if (problem.truth) {
    row.eps_modulus_pre_refine = error_modulus(e, *problem.truth, x_tilde);
  }
  if (is_sdp_method(method)) x_tilde = refine(problem, x_tilde, cfg.refine_iters);
  if (problem.truth) {
    row.eps_signal = error_signal(*problem.truth, x_tilde);
    row.eps_modulus = error_modulus(e, *problem.truth, x_tilde);
    row.recovered = row.eps_signal < cfg.recovery_threshold;
  } else {
    row.eps_signal = row.eps_modulus = std::numeric_limits<double>::quiet_NaN();
  }
  if (!is_sdp_method(method)) row.eps_modulus_pre_refine = row.eps_modulus;
}

}  // namespace

TrialResult run_trial(Method method, const PhaseProblem& problem, const HarnessConfig& cfg,
                      std::uint64_t seed) {
  TrialResult row;
  row.method = method;
  row.op = problem.ensemble->kind;
  row.seed = seed;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    solve_dispatch(method, problem, cfg, seed, row);
  } catch (const std::exception& ex) {
    row.error = ex.what();  // recorded per-trial, not fatal
    row.eps_signal = row.eps_modulus = std::numeric_limits<double>::quiet_NaN();
  }
  row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
  return row;
}

namespace {

struct TrialSetup {
  PhaseProblem problem;
  std::uint64_t seed;
};

/// Builds the trial instance for a cell: fresh operator draw (where
/// randomized), fresh signal, magnitudes plus optional noise.
TrialSetup make_trial(OperatorKind op, SignalClass sclass, const HarnessConfig& cfg, int trial,
                      const std::string& cell_id) {
  const std::uint64_t seed = fanout_seed(cfg.master_seed, cell_id, std::uint64_t(trial));
  std::shared_ptr<const MeasurementEnsemble> ensemble;
  switch (op) {
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
    case OperatorKind::dense:
      throw std::invalid_argument("table cells need a generative operator kind");
  }

  Vec x = gen_signal({sclass, cfg.p, fanout_seed(seed, "signal", 0)});
  if (cfg.real_signals) x = x.real().cast<cx>();
  RealVec b = ensemble->apply(x).cwiseAbs();
  if (cfg.noise > 0.0) b = add_noise(b, cfg.noise, fanout_seed(seed, "noise", 0));
  return {make_problem(std::move(ensemble), std::move(b), cfg.real_signals, std::move(x)), seed};
}

CellSummary summarize_cell(Method method, OperatorKind op, SignalClass sclass,
                           std::vector<TrialResult> rows) {
  CellSummary cell;
  cell.method = method;
  cell.op = op;
  cell.signal_class = sclass;
  cell.trials = int(rows.size());
  int recovered = 0, rank_one = 0, failed = 0;
  double sig_sum = 0.0, mod_sum = 0.0;
  int miss = 0;
  for (const TrialResult& r : rows) {
    if (!r.error.empty()) {
      ++failed;
      continue;
    }
    if (r.recovered) {
      ++recovered;
    } else {
      ++miss;
      sig_sum += r.eps_signal;
      mod_sum += r.eps_modulus;
    }
    if (r.leading_ratio >= 1e3) ++rank_one;
  }
  const int scored = int(rows.size()) - failed;
  cell.recovery_rate = scored > 0 ? double(recovered) / scored : 0.0;
  cell.mean_signal_error = miss > 0 ? sig_sum / miss : 0.0;
  cell.mean_modulus_error = miss > 0 ? mod_sum / miss : 0.0;
  cell.rank_one_rate = scored > 0 ? double(rank_one) / scored : 0.0;
  cell.rows = std::move(rows);
  return cell;
}

}  // namespace

std::vector<CellSummary> run_recovery_table(const TableConfig& config) {
  std::vector<CellSummary> cells;
  for (Method method : config.methods) {
    for (OperatorKind op : config.operators) {
      for (SignalClass sclass : config.classes) {
        const std::string cell_id = std::string(to_string(method)) + "/" + to_string(op) + "/" +
                                    to_string(sclass);
        std::vector<TrialResult> rows(config.harness.trials);
        parallel_for(config.harness.workers, config.harness.trials, [&](int t) {
          TrialSetup setup = make_trial(op, sclass, config.harness, t, cell_id);
          rows[t] = run_trial(method, setup.problem, config.harness, setup.seed);
          rows[t].signal_class = sclass;
        });
        cells.push_back(summarize_cell(method, op, sclass, std::move(rows)));
      }
    }
  }
  return cells;
}

namespace {

/// Least-squares slope of y ~ k x through the origin.
double fit_through_origin(const std::vector<double>& x, const std::vector<double>& y) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += x[i] * y[i];
    den += x[i] * x[i];
  }
  return den > 0.0 ? num / den : 0.0;
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= 0.0 || y[i] <= 0.0) continue;
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  const double den = m * sxx - sx * sx;
  return den != 0.0 ? (m * sxy - sx * sy) / den : 0.0;
}

/// Signal with (Ax)_k = 0 for all but the last four bins of the first
/// filter block (the sparse-measurement stress case).
Vec sparse_measurement_signal(const MeasurementEnsemble& e, std::uint64_t seed) {
  if (e.kind != OperatorKind::random_filters || !e.fast)
    throw std::invalid_argument("sparse_measurements requires the random_filters operator");
  const Index p = e.p;
  Rng rng(seed);
  Vec spectrum = Vec::Zero(p);
  for (Index k = p - 4; k < p; ++k) spectrum[k] = rng.complex_normal();
  const Vec xh = e.fast->fft_p->inverse(spectrum) / double(p);
  Vec x(p);
  for (Index m = 0; m < p; ++m) {
    const cx h = e.fast->filters[0][m];
    x[m] = std::abs(h) > 1e-12 ? xh[m] / h : cx(0.0, 0.0);
  }
  return x;
}

}  // namespace

NoiseSweepResult run_noise_sweep(const NoiseSweepConfig& config) {
  NoiseSweepResult result;
  result.levels = config.levels;
  const HarnessConfig& cfg = config.harness;

  for (double level : config.levels) {
    const std::string cell_id = std::string("noise/") + to_string(config.method) + "/" +
                                to_string(config.op) + "/" + std::to_string(level);
    std::vector<TrialResult> rows(cfg.trials);
    parallel_for(cfg.workers, cfg.trials, [&](int t) {
      const std::uint64_t seed = fanout_seed(cfg.master_seed, cell_id, std::uint64_t(t));
      std::shared_ptr<const MeasurementEnsemble> ensemble;
      Vec x;
      if (config.sparse_measurements) {
        auto e = std::make_shared<MeasurementEnsemble>(
            make_random_filters(cfg.p, cfg.J, fanout_seed(seed, "operator", 0)));
        x = sparse_measurement_signal(*e, fanout_seed(seed, "signal", 0));
        ensemble = std::move(e);
      } else {
        switch (config.op) {
          case OperatorKind::random_filters:
            ensemble = std::make_shared<MeasurementEnsemble>(
                make_random_filters(cfg.p, cfg.J, fanout_seed(seed, "operator", 0)));
            break;
          case OperatorKind::cauchy_wavelet:
            ensemble =
                std::make_shared<MeasurementEnsemble>(make_cauchy_wavelet(cfg.p, cfg.J, cfg.d));
            break;
          case OperatorKind::oversampled_fourier:
            ensemble =
                std::make_shared<MeasurementEnsemble>(make_oversampled_fourier(cfg.p, cfg.J));
            break;
          case OperatorKind::gaussian:
            ensemble = std::make_shared<MeasurementEnsemble>(
                make_gaussian(Index(cfg.J) * cfg.p, cfg.p, fanout_seed(seed, "operator", 0)));
            break;
          default:
            throw std::invalid_argument("noise sweep: unsupported operator");
        }
        x = gen_signal({config.signal_class, cfg.p, fanout_seed(seed, "signal", 0)});
        if (cfg.real_signals) x = x.real().cast<cx>();
      }
      RealVec b = ensemble->apply(x).cwiseAbs();
      b = add_noise(b, level, fanout_seed(seed, "noise", 0));
      PhaseProblem problem = make_problem(std::move(ensemble), std::move(b), cfg.real_signals, x);
      rows[t] = run_trial(config.method, problem, cfg, seed);
      rows[t].signal_class = config.signal_class;
    });

    double sig = 0.0, mod = 0.0;
    int scored = 0;
    for (const TrialResult& r : rows) {
      if (!r.error.empty()) continue;
      sig += r.eps_signal;
      mod += r.eps_modulus;
      ++scored;
    }
    result.mean_eps_signal.push_back(scored ? sig / scored : 0.0);
    result.mean_eps_modulus.push_back(scored ? mod / scored : 0.0);
    result.rows.insert(result.rows.end(), rows.begin(), rows.end());
  }

  result.slope_signal = fit_through_origin(result.levels, result.mean_eps_signal);
  result.slope_modulus = fit_through_origin(result.levels, result.mean_eps_modulus);
  result.loglog_slope_signal = fit_loglog_slope(result.levels, result.mean_eps_signal);
  result.loglog_slope_modulus = fit_loglog_slope(result.levels, result.mean_eps_modulus);
  return result;
}

double crossing_point(const std::vector<Index>& n_values, const std::vector<double>& rates,
                      double level) {
  for (std::size_t i = 0; i < rates.size(); ++i) {
    if (rates[i] >= level) {
      if (i == 0) return double(n_values[0]);
      const double r0 = rates[i - 1], r1 = rates[i];
      const double n0 = double(n_values[i - 1]), n1 = double(n_values[i]);
      return r1 > r0 ? n0 + (level - r0) * (n1 - n0) / (r1 - r0) : n1;
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

std::vector<TransitionCurve> run_transition_sweep(const TransitionConfig& config) {
  const HarnessConfig& cfg = config.harness;
  std::vector<TransitionCurve> curves;

  for (Method method : config.methods) {
    TransitionCurve curve;
    curve.method = method;
    for (double ratio : config.ratios) {
      const Index n = Index(std::lround(ratio * double(cfg.p)));
      const std::string cell_id = std::string("transition/") + to_string(method) + "/n" +
                                  std::to_string(n);
      std::vector<TrialResult> rows(cfg.trials);
      parallel_for(cfg.workers, cfg.trials, [&](int t) {
        const std::uint64_t seed = fanout_seed(cfg.master_seed, cell_id, std::uint64_t(t));
        auto ensemble = std::make_shared<MeasurementEnsemble>(
            make_gaussian(n, cfg.p, fanout_seed(seed, "operator", 0)));
        const Vec x = gen_signal({config.signal_class, cfg.p, fanout_seed(seed, "signal", 0)});
        RealVec b = ensemble->apply(x).cwiseAbs();
        PhaseProblem problem = make_problem(std::move(ensemble), std::move(b), false, x);
        rows[t] = run_trial(method, problem, cfg, seed);
        rows[t].signal_class = config.signal_class;
      });

      int recovered = 0, rank_one = 0, scored = 0;
      for (const TrialResult& r : rows) {
        if (!r.error.empty()) continue;
        ++scored;
        if (r.recovered) ++recovered;
        if (r.leading_ratio >= 1e3) ++rank_one;
      }
      curve.n_values.push_back(n);
      curve.recovery_rate.push_back(scored ? double(recovered) / scored : 0.0);
      curve.rank_one_rate.push_back(scored ? double(rank_one) / scored : 0.0);
      curve.rows.insert(curve.rows.end(), rows.begin(), rows.end());
    }
    curve.recovery_crossing = crossing_point(curve.n_values, curve.recovery_rate);
    curve.rank_one_crossing = crossing_point(curve.n_values, curve.rank_one_rate);
    curves.push_back(std::move(curve));
  }
  return curves;
}

void write_trials_csv(std::ostream& out, const std::vector<TrialResult>& rows) {
  out << "method,operator,class,seed,eps_signal,eps_modulus,recovered,iterations,wall_ms\n";
  for (const TrialResult& r : rows) {
    out << to_string(r.method) << ',' << to_string(r.op) << ',' << to_string(r.signal_class)
        << ',' << r.seed << ',' << r.eps_signal << ',' << r.eps_modulus << ','
        << (r.recovered ? 1 : 0) << ',' << r.iterations << ',' << r.wall_ms << '\n';
  }
}

void write_two_column_csv(std::ostream& out, const std::string& xname, const std::string& yname,
                          const std::vector<double>& x, const std::vector<double>& y) {
  out << xname << ',' << yname << '\n';
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) out << x[i] << ',' << y[i] << '\n';
}

nlohmann::json cell_summary_json(const CellSummary& cell) {
  return nlohmann::json{{"method", to_string(cell.method)},
                        {"operator", to_string(cell.op)},
                        {"class", to_string(cell.signal_class)},
                        {"trials", cell.trials},
                        {"recovery_rate", cell.recovery_rate},
                        {"mean_signal_error", cell.mean_signal_error},
                        {"mean_modulus_error", cell.mean_modulus_error},
                        {"rank_one_rate", cell.rank_one_rate}};
}

}  // namespace phasecut
