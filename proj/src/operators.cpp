#include "phasecut/operators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/SVD>
#include <nlohmann/json.hpp>

#include "phasecut/linalg.hpp"
#include "phasecut/rng.hpp"

namespace phasecut {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Shared constructor tail: SVD-based caches and conditioning record.
void finalize(MeasurementEnsemble& e) {
  e.n = e.A.rows();
  e.p = e.A.cols();
  Eigen::BDCSVD<Mat> svd(e.A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVec& s = svd.singularValues();
  e.sigma_max = s.size() ? s[0] : 0.0;
  e.sigma_min = s.size() ? s[s.size() - 1] : 0.0;
  const double cutoff = 1e-12 * e.sigma_max;
  RealVec inv = RealVec::Zero(s.size());
  for (Index i = 0; i < s.size(); ++i)
    if (s[i] > cutoff && s[i] > 0.0) inv[i] = 1.0 / s[i];
  e.pinv = svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
  e.projector = hermitize(e.A * e.pinv);
}

Vec pointwise(const Vec& a, const Vec& b) { return a.cwiseProduct(b); }

}  // namespace

const char* to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::oversampled_fourier: return "fourier";
    case OperatorKind::random_filters: return "filters";
    case OperatorKind::cauchy_wavelet: return "wavelet";
    case OperatorKind::dense: return "dense";
    case OperatorKind::gaussian: return "gaussian";
  }
  return "unknown";
}

OperatorKind operator_kind_from_string(const std::string& name) {
  if (name == "fourier") return OperatorKind::oversampled_fourier;
  if (name == "filters") return OperatorKind::random_filters;
  if (name == "wavelet") return OperatorKind::cauchy_wavelet;
  if (name == "dense") return OperatorKind::dense;
  if (name == "gaussian") return OperatorKind::gaussian;
  throw std::invalid_argument("unknown operator kind: " + name);
}

Vec MeasurementEnsemble::apply(const Vec& x) const {
  if (x.size() != p) throw std::invalid_argument("apply: shape mismatch");
  if (!fast) return A * x;
  switch (fast->kind) {
    case OperatorKind::oversampled_fourier: {
      Vec padded = Vec::Zero(n);
      padded.segment(1, p) = x;
      return fast->fft_n->forward(padded);
    }
    case OperatorKind::random_filters: {
      Vec y(n);
      for (int j = 0; j < fast->J; ++j)
        y.segment(Index(j) * p, p) = fast->fft_p->forward(pointwise(x, fast->filters[j]));
      return y;
    }
    case OperatorKind::cauchy_wavelet: {
      const Vec xh = fast->fft_p->forward(x);
      Vec y(n);
      for (int j = 0; j < fast->J; ++j)
        y.segment(Index(j) * p, p) = fast->fft_p->inverse(pointwise(xh, fast->spectra[j])) / double(p);
      return y;
    }
    default: return A * x;
  }
}

Vec MeasurementEnsemble::apply_pinv(const Vec& y) const {
  if (y.size() != n) throw std::invalid_argument("apply_pinv: shape mismatch");
  if (!fast) return pinv * y;
  switch (fast->kind) {
    case OperatorKind::oversampled_fourier: {
      // A*A = n I, so A+ = A*/n.
      return fast->fft_n->inverse(y).segment(1, p) / double(n);
    }
    case OperatorKind::random_filters: {
      // A*A = p diag(sum_j |h^j|^2) in the signal domain.
      Vec t = Vec::Zero(p);
      for (int j = 0; j < fast->J; ++j)
        t += pointwise(fast->filters[j].conjugate(), fast->fft_p->inverse(y.segment(Index(j) * p, p)));
      return pointwise(t, fast->gram_inv.cast<cx>());
    }
    case OperatorKind::cauchy_wavelet: {
      // A*A = F^{-1} diag(sum_j |g_j|^2) F in the DFT domain.
      Vec t = Vec::Zero(p);
      for (int j = 0; j < fast->J; ++j)
        t += pointwise(fast->spectra[j].conjugate(), fast->fft_p->forward(y.segment(Index(j) * p, p)));
      t = pointwise(t, fast->gram_inv.cast<cx>());
      return fast->fft_p->inverse(t) / double(p);
    }
    default: return pinv * y;
  }
}

Vec MeasurementEnsemble::apply_projector(const Vec& y) const {
  if (!fast) return projector * y;
  return apply(apply_pinv(y));
}

nlohmann::json MeasurementEnsemble::descriptor() const {
  if (kind == OperatorKind::dense)
    throw std::invalid_argument("descriptor: dense ensembles are not serializable");
  nlohmann::json j{{"kind", to_string(kind)}, {"p", p}, {"J", J}};
  if (kind == OperatorKind::cauchy_wavelet) j["d"] = d;
  if (kind == OperatorKind::random_filters || kind == OperatorKind::gaussian) j["seed"] = seed;
  if (kind == OperatorKind::gaussian) j["n"] = n;
  return j;
}

MeasurementEnsemble make_oversampled_fourier(Index p, int J) {
  if (p < 2 || J < 2) throw std::invalid_argument("make_oversampled_fourier: need p >= 2, J >= 2");
  const Index n = Index(J) * p;
  MeasurementEnsemble e;
  e.kind = OperatorKind::oversampled_fourier;
  e.J = J;
  e.A = Mat(n, p);
  for (Index k = 0; k < n; ++k)
    for (Index m = 0; m < p; ++m)
      e.A(k, m) = std::polar(1.0, -kTwoPi * double(k) * double(m + 1) / double(n));
  auto fast = std::make_shared<FastPath>();
  fast->kind = e.kind;
  fast->n = n;
  fast->p = p;
  fast->J = J;
  fast->fft_n = std::make_unique<Fft>(n);
  e.fast = std::move(fast);
  finalize(e);
  return e;
}

MeasurementEnsemble make_filters(Index p, std::vector<Vec> filters) {
  if (p < 2 || filters.empty()) throw std::invalid_argument("make_filters: need p >= 2, J >= 1");
  const int J = static_cast<int>(filters.size());
  for (const Vec& h : filters)
    if (h.size() != p) throw std::invalid_argument("make_filters: filter length mismatch");
  const Index n = Index(J) * p;

  MeasurementEnsemble e;
  e.kind = OperatorKind::random_filters;
  e.J = J;
  e.A = Mat(n, p);
  for (int j = 0; j < J; ++j)
    for (Index k = 0; k < p; ++k)
      for (Index m = 0; m < p; ++m)
        e.A(Index(j) * p + k, m) =
            filters[j][m] * std::polar(1.0, -kTwoPi * double(k) * double(m) / double(p));

  auto fast = std::make_shared<FastPath>();
  fast->kind = e.kind;
  fast->n = n;
  fast->p = p;
  fast->J = J;
  fast->filters = std::move(filters);
  RealVec gram = RealVec::Zero(p);
  for (const Vec& h : fast->filters) gram += h.cwiseAbs2();
  fast->gram_inv = (double(p) * gram).cwiseInverse();
  fast->fft_p = std::make_unique<Fft>(p);
  e.fast = std::move(fast);
  finalize(e);
  return e;
}

MeasurementEnsemble make_random_filters(Index p, int J, std::uint64_t seed) {
  if (p < 2 || J < 1) throw std::invalid_argument("make_random_filters: need p >= 2, J >= 1");
  Rng rng(seed);
  std::vector<Vec> filters;
  filters.reserve(J);
  for (int j = 0; j < J; ++j) filters.push_back(rng.complex_normal_vector(p));
  MeasurementEnsemble e = make_filters(p, std::move(filters));
  e.seed = seed;
  return e;
}

namespace {

double cauchy_hat(double w, int d) {
  // (w/d)^d e^{d-w} on w > 0: unit peak at w = d.
  if (w <= 0.0) return 0.0;
  return std::exp(double(d) * std::log(w / double(d)) + double(d) - w);
}

}  // namespace

MeasurementEnsemble make_cauchy_wavelet(Index p, int J, int d) {
  if (p < 4 || J < 2 || d < 1) throw std::invalid_argument("make_cauchy_wavelet: need p >= 4, J >= 2, d >= 1");
  // Signed DFT frequencies; the analytic bands live on w > 0 and the
  // symmetric Gaussian low-pass covers w ~ 0 and the negative axis.
  RealVec omega(p);
  for (Index k = 0; k < p; ++k) {
    const double kk = (k <= p / 2) ? double(k) : double(k) - double(p);
    omega[k] = kTwoPi * kk / double(p);
  }

  std::vector<Vec> spectra(J, Vec::Zero(p));
  RealVec band_energy = RealVec::Zero(p);
  for (int j = 1; j <= J - 1; ++j) {
    for (Index k = 0; k < p; ++k) {
      const double v = cauchy_hat(std::ldexp(omega[k], j), d);  // psi_hat(2^j w)
      spectra[j - 1][k] = v;
      band_energy[k] += v * v;
    }
  }

  // Grow the low-pass width until every DFT bin keeps at least 10% of
  // the best-covered bin's energy.
  double sigma = double(d) / std::ldexp(1.0, J);
  RealVec total(p);
  for (int step = 0; step < 64; ++step, sigma *= 1.2) {
    for (Index k = 0; k < p; ++k) {
      const double lp = std::exp(-omega[k] * omega[k] / (2.0 * sigma * sigma));
      total[k] = band_energy[k] + lp * lp;
    }
    if (total.minCoeff() >= 0.1 * total.maxCoeff()) break;
  }
  for (Index k = 0; k < p; ++k)
    spectra[J - 1][k] = std::exp(-omega[k] * omega[k] / (2.0 * sigma * sigma));

  MeasurementEnsemble e;
  e.kind = OperatorKind::cauchy_wavelet;
  e.J = J;
  e.d = d;

  // Circulant blocks: row k of block j is g_j[(k - m) mod p].
  Fft fft(p);
  e.A = Mat(Index(J) * p, p);
  for (int j = 0; j < J; ++j) {
    const Vec g = fft.inverse(spectra[j]) / double(p);
    for (Index k = 0; k < p; ++k)
      for (Index m = 0; m < p; ++m)
        e.A(Index(j) * p + k, m) = g[((k - m) % p + p) % p];
  }

  auto fast = std::make_shared<FastPath>();
  fast->kind = e.kind;
  fast->n = Index(J) * p;
  fast->p = p;
  fast->J = J;
  fast->spectra = std::move(spectra);
  RealVec gram = RealVec::Zero(p);
  for (const Vec& s : fast->spectra) gram += s.cwiseAbs2();
  fast->gram_inv = gram.cwiseInverse();
  fast->fft_p = std::make_unique<Fft>(p);
  e.fast = std::move(fast);
  finalize(e);

  if (e.sigma_min <= 1e-8 * e.sigma_max)
    throw std::runtime_error("make_cauchy_wavelet: filter bank is not a frame");
  return e;
}

MeasurementEnsemble make_gaussian(Index n, Index p, std::uint64_t seed) {
  if (n < 1 || p < 1) throw std::invalid_argument("make_gaussian: need n, p >= 1");
  Rng rng(seed);
  MeasurementEnsemble e;
  e.kind = OperatorKind::gaussian;
  e.seed = seed;
  e.A = Mat(n, p);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < p; ++j) e.A(i, j) = rng.complex_normal();
  finalize(e);
  return e;
}

MeasurementEnsemble make_dense(Mat A) {
  if (!A.allFinite()) throw std::invalid_argument("make_dense: non-finite entry");
  MeasurementEnsemble e;
  e.kind = OperatorKind::dense;
  e.A = std::move(A);
  finalize(e);
  return e;
}

MeasurementEnsemble ensemble_from_descriptor(const nlohmann::json& desc) {
  const OperatorKind kind = operator_kind_from_string(desc.at("kind").get<std::string>());
  const Index p = desc.at("p").get<Index>();
  switch (kind) {
    case OperatorKind::oversampled_fourier:
      return make_oversampled_fourier(p, desc.at("J").get<int>());
    case OperatorKind::random_filters:
      return make_random_filters(p, desc.at("J").get<int>(), desc.at("seed").get<std::uint64_t>());
    case OperatorKind::cauchy_wavelet:
      return make_cauchy_wavelet(p, desc.at("J").get<int>(), desc.value("d", 5));
    case OperatorKind::gaussian:
      return make_gaussian(desc.at("n").get<Index>(), p, desc.at("seed").get<std::uint64_t>());
    default:
      throw std::invalid_argument("ensemble_from_descriptor: unsupported kind");
  }
}

Mat build_M(const MeasurementEnsemble& e, const RealVec& b) {
  if (b.size() != e.n) throw std::invalid_argument("build_M: length mismatch");
  Mat M = Mat::Identity(e.n, e.n) - e.projector;
  M = b.cast<cx>().asDiagonal() * M * b.cast<cx>().asDiagonal();
  return hermitize(M);
}

Mat build_B(const MeasurementEnsemble& e, const RealVec& b) {
  if (b.size() != e.n) throw std::invalid_argument("build_B: length mismatch");
  Mat B = b.cast<cx>().asDiagonal() * e.pinv.adjoint() * e.pinv * b.cast<cx>().asDiagonal();
  return hermitize(B);
}

Vec apply_M(const MeasurementEnsemble& e, const RealVec& b, const Vec& v) {
  const Vec bv = v.cwiseProduct(b.cast<cx>());
  const Vec proj = e.apply_projector(bv);
  return (bv - proj).cwiseProduct(b.cast<cx>());
}

RealifiedProblem realify_problem(const MeasurementEnsemble& e, const RealVec& b) {
  if (b.size() != e.n) throw std::invalid_argument("realify_problem: length mismatch");
  RealifiedProblem r;
  r.A2.resize(2 * e.n, e.p);
  r.A2.topRows(e.n) = e.A.real();
  r.A2.bottomRows(e.n) = e.A.imag();
  r.b2.resize(2 * e.n);
  r.b2 << b, b;

  Eigen::BDCSVD<RealMat> svd(r.A2, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVec& s = svd.singularValues();
  const double cutoff = 1e-12 * (s.size() ? s[0] : 0.0);
  RealVec inv = RealVec::Zero(s.size());
  for (Index i = 0; i < s.size(); ++i)
    if (s[i] > cutoff && s[i] > 0.0) inv[i] = 1.0 / s[i];
  r.A2_pinv = svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();

  RealMat M2 = RealMat::Identity(2 * e.n, 2 * e.n) - r.A2 * r.A2_pinv;
  M2 = r.b2.asDiagonal() * M2 * r.b2.asDiagonal();
  r.M2 = 0.5 * (M2 + M2.transpose());
  RealMat B2 = r.b2.asDiagonal() * (r.A2_pinv.transpose() * r.A2_pinv) * r.b2.asDiagonal();
  r.B2 = 0.5 * (B2 + B2.transpose());
  return r;
}

PhaseProblem make_problem(std::shared_ptr<const MeasurementEnsemble> ensemble, RealVec b,
                          bool real_signal, std::optional<Vec> truth) {
  if (!ensemble) throw std::invalid_argument("make_problem: null ensemble");
  if (b.size() != ensemble->n) throw std::invalid_argument("make_problem: length mismatch");
  if (!b.allFinite() || b.minCoeff() < 0.0)
    throw std::invalid_argument("make_problem: b must be finite and nonnegative");
  PhaseProblem problem;
  problem.ensemble = std::move(ensemble);
  problem.b = std::move(b);
  problem.real_signal = real_signal;
  if (truth) {
    problem.intrinsic_noise = (problem.ensemble->apply(*truth).cwiseAbs() - problem.b).norm();
    problem.truth = std::move(truth);
  }
  if (real_signal)
    problem.realified =
        std::make_shared<const RealifiedProblem>(realify_problem(*problem.ensemble, problem.b));
  return problem;
}

Vec project_onto_range(const PhaseProblem& problem, const Vec& y) {
  if (!problem.real_signal) return problem.ensemble->apply_projector(y);
  RealVec y2(2 * problem.ensemble->n);
  y2 << y.real(), y.imag();
  const RealVec x = problem.realified->A2_pinv * y2;
  return problem.ensemble->apply(x.cast<cx>());
}

}  // namespace phasecut
