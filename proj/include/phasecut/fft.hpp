#pragma once

#include <memory>

#include "phasecut/types.hpp"

namespace phasecut {

/// Thin wrapper over FFTW double-precision 1-D transforms. Plans are
/// created once (FFTW planning is serialized internally); execution is
/// safe from multiple threads on distinct buffers. Transforms are
/// unnormalized: forward computes sum_m x_m e^{-i 2 pi k m / n}.
class Fft {
 public:
  explicit Fft(Index n);
  ~Fft();

  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  Index size() const { return n_; }

  Vec forward(const Vec& x) const;
  /// Unnormalized inverse (no 1/n factor).
  Vec inverse(const Vec& x) const;

 private:
  Index n_;
  void* plan_fwd_;
  void* plan_inv_;
};

}  // namespace phasecut
