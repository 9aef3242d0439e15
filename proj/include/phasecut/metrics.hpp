#pragma once

#include "phasecut/operators.hpp"
#include "phasecut/types.hpp"

namespace phasecut {

/// Relative distance up to a global phase:
/// min_{|c|=1} ||x - c xt|| / ||x||, with the closed-form optimum
/// c = phase(<xt, x>) (c = 1 when the inner product vanishes).
/// Throws std::domain_error when x = 0.
double error_signal(const Vec& x, const Vec& xt);

/// Relative error over measured amplitudes: || |Ax| - |A xt| || / ||Ax||.
/// Throws std::domain_error when Ax = 0.
double error_modulus(const MeasurementEnsemble& e, const Vec& x, const Vec& xt);

}  // namespace phasecut
