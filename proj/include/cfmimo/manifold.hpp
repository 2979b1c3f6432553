#pragma once

#include <Eigen/Dense>

#include "cfmimo/rng.hpp"

namespace cfmimo::manifold {

// Product of unit circles: every entry of a point has |X_{ik}| = 1.

// elementwise (X+Z)/|X+Z|; throws std::domain_error on a zero entry
Eigen::MatrixXcd retract(const Eigen::MatrixXcd& X, const Eigen::MatrixXcd& Z);

// elementwise U - Re(conj(X) o U) o X; idempotent, metric-orthogonal
Eigen::MatrixXcd project_tangent(const Eigen::MatrixXcd& X, const Eigen::MatrixXcd& U);

// Re(sum conj(U) o V), the real trace inner product
double metric(const Eigen::MatrixXcd& U, const Eigen::MatrixXcd& V);

// entries e^{j theta}, theta uniform on [0, 2pi)
Eigen::MatrixXcd random_point(int rows, int cols, Rng& rng);

}  // namespace cfmimo::manifold
