#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace phasecut::selftest {

struct SuiteResult {
  std::string name;
  bool passed = false;
  int instances = 0;
  std::string detail;  // first failure, or a summary statistic
};

/// Randomized property suites (>= 100 instances each, dims <= 16):
/// trace-distance oracle, block-determinant and block-minimizer closed
/// forms, BCD descent invariants, weak duality, the rounding sandwich
/// with a Monte-Carlo kernel check, the lift bijection, the real
/// embedding and metric identities, and the greedy/alternating
/// projection fixed-point correspondence.
std::vector<SuiteResult> run_property_suites(std::uint64_t seed = 0xACCE97);

bool all_passed(const std::vector<SuiteResult>& results);

}  // namespace phasecut::selftest
