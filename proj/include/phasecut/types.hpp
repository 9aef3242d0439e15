#pragma once

#include <complex>

#include <Eigen/Dense>

namespace phasecut {

using cx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RealMat = Eigen::MatrixXd;
using RealVec = Eigen::VectorXd;
using Index = Eigen::Index;

}  // namespace phasecut
