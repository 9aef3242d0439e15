#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "phasecut/fft.hpp"
#include "phasecut/types.hpp"

namespace phasecut {

enum class OperatorKind { oversampled_fourier, random_filters, cauchy_wavelet, dense, gaussian };

const char* to_string(OperatorKind kind);
OperatorKind operator_kind_from_string(const std::string& name);

/// FFT execution state for the structured operators. Immutable after
/// construction; shared by const reference across threads.
struct FastPath {
  OperatorKind kind;
  Index n = 0, p = 0;
  int J = 0;
  std::vector<Vec> filters;  // random_filters: h^j in time (length p)
  std::vector<Vec> spectra;  // cauchy_wavelet: band spectra (length p)
  RealVec gram_inv;          // diagonal of (A*A)^{-1} in the DFT domain
  std::unique_ptr<Fft> fft_p;
  std::unique_ptr<Fft> fft_n;
};

/// A linear measurement operator A in C^{n x p} with cached
/// pseudoinverse and range projector. Immutable after construction.
struct MeasurementEnsemble {
  OperatorKind kind = OperatorKind::dense;
  Index n = 0, p = 0;
  Mat A;
  Mat pinv;       // A+ (p x n)
  Mat projector;  // AA+ (n x n), Hermitian idempotent
  double sigma_min = 0.0, sigma_max = 0.0;
  std::shared_ptr<const FastPath> fast;

  // Descriptor fields; regenerate the matrix, never store it.
  int J = 0;
  int d = 0;
  std::uint64_t seed = 0;

  Vec apply(const Vec& x) const;            // A x
  Vec apply_pinv(const Vec& y) const;       // A+ y
  Vec apply_projector(const Vec& y) const;  // AA+ y

  // Dense reference paths, used to validate the FFT routes.
  Vec apply_dense(const Vec& x) const { return A * x; }
  Vec apply_pinv_dense(const Vec& y) const { return pinv * y; }

  nlohmann::json descriptor() const;
};

/// Oversampled DFT over n = J p coefficients:
/// (Ax)_k = sum_{m=1..p} x_m exp(-i 2 pi k m / n).
MeasurementEnsemble make_oversampled_fourier(Index p, int J);

/// J blocks, block j holding the DFT of x multiplied pointwise by an
/// i.i.d. standard complex Gaussian filter h^j. Deterministic under seed.
MeasurementEnsemble make_random_filters(Index p, int J, std::uint64_t seed);

/// Same structure with caller-supplied filters (length p each).
MeasurementEnsemble make_filters(Index p, std::vector<Vec> filters);

/// Dyadic Cauchy wavelet filter bank: J-1 band-pass circular
/// convolutions built in the Fourier domain from psi_hat(w) =
/// (w/d)^d e^{d-w} on w > 0, plus a Gaussian low-pass sized to keep the
/// filter bank injective. Throws std::runtime_error on frame failure.
MeasurementEnsemble make_cauchy_wavelet(Index p, int J, int d = 5);

/// Dense i.i.d. complex Gaussian entries with E|A_ij|^2 = 1.
MeasurementEnsemble make_gaussian(Index n, Index p, std::uint64_t seed);

MeasurementEnsemble make_dense(Mat A);

MeasurementEnsemble ensemble_from_descriptor(const nlohmann::json& desc);

/// M = diag(b) (I - AA+) diag(b); Hermitian PSD.
Mat build_M(const MeasurementEnsemble& e, const RealVec& b);

/// B = diag(b) A+* A+ diag(b); Hermitian PSD.
Mat build_B(const MeasurementEnsemble& e, const RealVec& b);

/// Fast product M v = diag(b)(I - AA+)diag(b) v through the operator's
/// transform path (dense fallback otherwise).
Vec apply_M(const MeasurementEnsemble& e, const RealVec& b, const Vec& v);

/// Real-signal embedding: A2 = [Re A; Im A], B2 = diag(b; b),
/// M2 = B2 (I - A2 A2+) B2.
struct RealifiedProblem {
  RealMat A2;       // 2n x p
  RealMat A2_pinv;  // p x 2n
  RealVec b2;       // 2n
  RealMat M2;       // 2n x 2n symmetric PSD
  RealMat B2;       // diag(b2) A2+' A2+ diag(b2), the trace surrogate
};

RealifiedProblem realify_problem(const MeasurementEnsemble& e, const RealVec& b);

/// One phase-retrieval instance: operator, measured magnitudes, realness
/// flag and optional ground truth for scoring.
struct PhaseProblem {
  std::shared_ptr<const MeasurementEnsemble> ensemble;
  RealVec b;
  bool real_signal = false;
  std::optional<Vec> truth;
  double intrinsic_noise = 0.0;  // || |A truth| - b || when truth is known
  std::shared_ptr<const RealifiedProblem> realified;  // set when real_signal
};

PhaseProblem make_problem(std::shared_ptr<const MeasurementEnsemble> ensemble, RealVec b,
                          bool real_signal = false, std::optional<Vec> truth = std::nullopt);

/// Least-squares projection of y onto {Ax : x real} (real_signal
/// problems) or onto range(A) otherwise.
Vec project_onto_range(const PhaseProblem& problem, const Vec& y);

}  // namespace phasecut
