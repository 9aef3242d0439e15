#pragma once

#include <cstdint>
#include <string>

#include "phasecut/types.hpp"

namespace phasecut {

enum class SignalClass { gaussian, sinusoids, scanline };

const char* to_string(SignalClass c);
SignalClass signal_class_from_string(const std::string& name);

struct SignalSpec {
  SignalClass signal_class = SignalClass::gaussian;
  Index p = 128;
  std::uint64_t seed = 0;
};

/// Deterministic test signals: complex Gaussian white noise, sums of
/// 4..8 complex exponentials on distinct DFT frequencies, or rows of a
/// procedurally generated piecewise-smooth test image (two distinct
/// rows feeding the real and imaginary parts).
Vec gen_signal(const SignalSpec& spec);

/// b + g * (rel_level ||b|| / ||g||) with real Gaussian g; negative
/// magnitudes are clipped to zero.
RealVec add_noise(const RealVec& b, double rel_level, std::uint64_t seed);

}  // namespace phasecut
