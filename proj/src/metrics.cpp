#include "phasecut/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace phasecut {

double error_signal(const Vec& x, const Vec& xt) {
  if (x.size() != xt.size()) throw std::invalid_argument("error_signal: length mismatch");
  const double nx = x.norm();
  if (nx == 0.0) throw std::domain_error("error_signal: x = 0");
  const cx inner = xt.dot(x);  // <xt, x> = xt* x
  const double a = std::abs(inner);
  const cx c = a > 0.0 ? inner / a : cx(1.0, 0.0);
  return (x - c * xt).norm() / nx;
}

double error_modulus(const MeasurementEnsemble& e, const Vec& x, const Vec& xt) {
  const Vec ax = e.apply(x);
  const double nax = ax.norm();
  if (nax == 0.0) throw std::domain_error("error_modulus: Ax = 0");
  const Vec axt = e.apply(xt);
  return (ax.cwiseAbs() - axt.cwiseAbs()).norm() / nax;
}

}  // namespace phasecut
