#pragma once

#include <complex>
#include <Eigen/Dense>

namespace warpcore {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;

inline constexpr Complex I{0.0, 1.0};

/// Operator norm (largest singular value).
inline double op_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return a.jacobiSvd().singularValues()(0);
}

inline Matrix adjoint(const Matrix& a) { return a.adjoint(); }

}  // namespace warpcore
