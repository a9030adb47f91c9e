#pragma once

#include <complex>

#include <Eigen/Dense>

namespace bshift {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// e^{i theta}
inline Complex unit_circle(double theta) { return std::polar(1.0, theta); }

}  // namespace bshift
