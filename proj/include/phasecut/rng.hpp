#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "phasecut/types.hpp"

namespace phasecut {

/// Deterministic random stream. Gaussian variates use an explicit
/// Box-Muller transform so that sequences are identical across
/// standard-library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1).
  double uniform() {
    return std::generate_canonical<double, 53>(gen_);
  }

  /// Standard normal N(0, 1).
  double normal();

  /// Standard complex normal, E|z|^2 = 1 (real/imag parts N(0, 1/2)).
  cx complex_normal();

  /// Uniform point on the unit circle.
  cx unit_phase();

  Vec complex_normal_vector(Index n);
  RealVec normal_vector(Index n);
  Vec unit_phase_vector(Index n);

  std::uint64_t integer() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

/// Derives an independent per-trial seed from a master seed, a cell
/// identifier and a trial index. Stable across runs and platforms.
std::uint64_t fanout_seed(std::uint64_t master, std::string_view cell, std::uint64_t trial);

}  // namespace phasecut
