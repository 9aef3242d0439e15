#include "phasecut/rng.hpp"

#include <cmath>
#include <numbers>

namespace phasecut {

double Rng::normal() {
  // Box-Muller; one fresh pair of uniforms per variate keeps the
  // stream position independent of call history.
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log1p(-u1));
  return r * std::cos(2.0 * std::numbers::pi * u2);
}

cx Rng::complex_normal() {
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-std::log1p(-u1));  // |z| with E|z|^2 = 1
  const double t = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(t), r * std::sin(t)};
}

cx Rng::unit_phase() {
  const double t = 2.0 * std::numbers::pi * uniform();
  return {std::cos(t), std::sin(t)};
}

Vec Rng::complex_normal_vector(Index n) {
  Vec v(n);
  for (Index i = 0; i < n; ++i) v[i] = complex_normal();
  return v;
}

RealVec Rng::normal_vector(Index n) {
  RealVec v(n);
  for (Index i = 0; i < n; ++i) v[i] = normal();
  return v;
}

Vec Rng::unit_phase_vector(Index n) {
  Vec v(n);
  for (Index i = 0; i < n; ++i) v[i] = unit_phase();
  return v;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t fanout_seed(std::uint64_t master, std::string_view cell, std::uint64_t trial) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a over the cell id
  for (unsigned char c : cell) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return splitmix64(splitmix64(master ^ h) ^ trial);
}

}  // namespace phasecut
