#include "cfmimo/manifold.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cfmimo::manifold {

Eigen::MatrixXcd retract(const Eigen::MatrixXcd& X, const Eigen::MatrixXcd& Z) {
  Eigen::MatrixXcd Y = X + Z;
  for (Eigen::Index j = 0; j < Y.cols(); ++j) {
    for (Eigen::Index i = 0; i < Y.rows(); ++i) {
      const double m = std::abs(Y(i, j));
      if (m == 0.0) throw std::domain_error("retract: degenerate zero-magnitude entry");
      Y(i, j) /= m;
    }
  }
  return Y;
}

Eigen::MatrixXcd project_tangent(const Eigen::MatrixXcd& X, const Eigen::MatrixXcd& U) {
  const Eigen::ArrayXXd radial = (X.conjugate().array() * U.array()).real();
  return U.array() - radial * X.array();
}

double metric(const Eigen::MatrixXcd& U, const Eigen::MatrixXcd& V) {
  return (U.conjugate().array() * V.array()).real().sum();
}

Eigen::MatrixXcd random_point(int rows, int cols, Rng& rng) {
  Eigen::MatrixXcd X(rows, cols);
  const double two_pi = 2.0 * std::numbers::pi_v<double>;
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) X(i, j) = std::polar(1.0, rng.uniform(0.0, two_pi));
  return X;
}

}  // namespace cfmimo::manifold
