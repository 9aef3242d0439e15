#include "phasecut/signals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "phasecut/rng.hpp"

namespace phasecut {

const char* to_string(SignalClass c) {
  switch (c) {
    case SignalClass::gaussian: return "gaussian";
    case SignalClass::sinusoids: return "sinusoids";
    case SignalClass::scanline: return "scanline";
  }
  return "unknown";
}

SignalClass signal_class_from_string(const std::string& name) {
  if (name == "gaussian") return SignalClass::gaussian;
  if (name == "sinusoids") return SignalClass::sinusoids;
  if (name == "scanline") return SignalClass::scanline;
  throw std::invalid_argument("unknown signal class: " + name);
}

namespace {

Vec gen_sinusoids(Index p, Rng& rng) {
  const int count = 4 + int(rng.uniform() * 5.0);  // uniform on {4..8}
  std::vector<Index> bins(p);
  for (Index k = 0; k < p; ++k) bins[k] = k;
  // Partial Fisher-Yates draw of distinct DFT frequencies.
  for (int i = 0; i < count; ++i) {
    const Index j = i + Index(rng.uniform() * double(p - i));
    std::swap(bins[i], bins[std::min(j, p - 1)]);
  }
  Vec x = Vec::Zero(p);
  for (int i = 0; i < count; ++i) {
    const cx amp = rng.complex_normal();
    const double w = 2.0 * std::numbers::pi * double(bins[i]) / double(p);
    for (Index m = 0; m < p; ++m) x[m] += amp * std::polar(1.0, w * double(m));
  }
  return x;
}

/// One row of a piecewise-smooth profile of given width: random steps,
/// ramps and smooth bumps, the ingredients of natural image scan-lines.
RealVec scanline_row(Index width, Rng& rng) {
  RealVec row = RealVec::Constant(width, rng.normal() * 0.2);
  const int pieces = 3 + int(rng.uniform() * 4.0);
  for (int s = 0; s < pieces; ++s) {
    const Index start = Index(rng.uniform() * double(width));
    const Index len = 4 + Index(rng.uniform() * double(width) / 2.0);
    const double level = rng.normal();
    const int shape = int(rng.uniform() * 3.0);
    for (Index i = start; i < std::min(width, start + len); ++i) {
      const double t = double(i - start) / double(len);
      double v = level;
      if (shape == 1) v = level * t;                                   // ramp
      if (shape == 2) v = level * std::exp(-12.0 * (t - 0.5) * (t - 0.5));  // bump
      row[i] += v;
    }
  }
  return row;
}

Vec gen_scanline(Index p, Rng& rng) {
  constexpr Index kImageWidth = 128;
  const RealVec re = scanline_row(kImageWidth, rng);
  const RealVec im = scanline_row(kImageWidth, rng);
  Vec x(p);
  for (Index m = 0; m < p; ++m) {
    // Linear resampling from the 128-wide image row to length p.
    const double pos = double(m) * double(kImageWidth - 1) / double(std::max<Index>(p - 1, 1));
    const Index lo = std::min(Index(pos), kImageWidth - 2);
    const double t = pos - double(lo);
    x[m] = cx((1.0 - t) * re[lo] + t * re[lo + 1], (1.0 - t) * im[lo] + t * im[lo + 1]);
  }
  return x;
}

}  // namespace

Vec gen_signal(const SignalSpec& spec) {
  if (spec.p < 1) throw std::invalid_argument("gen_signal: p must be >= 1");
  Rng rng(spec.seed);
  switch (spec.signal_class) {
    case SignalClass::gaussian: return rng.complex_normal_vector(spec.p);
    case SignalClass::sinusoids: return gen_sinusoids(spec.p, rng);
    case SignalClass::scanline: return gen_scanline(spec.p, rng);
  }
  throw std::invalid_argument("gen_signal: unknown class");
}

RealVec add_noise(const RealVec& b, double rel_level, std::uint64_t seed) {
  if (rel_level < 0.0) throw std::invalid_argument("add_noise: rel_level must be >= 0");
  if (rel_level == 0.0) return b;
  Rng rng(seed);
  RealVec g = rng.normal_vector(b.size());
  const double gn = g.norm();
  if (gn == 0.0) return b;
  return (b + g * (rel_level * b.norm() / gn)).cwiseMax(0.0);
}

}  // namespace phasecut
