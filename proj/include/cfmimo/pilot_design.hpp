#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

#include "cfmimo/pilots.hpp"
#include "cfmimo/rng.hpp"

namespace cfmimo {

struct ArmijoConfig {
  double initial_step = 1.0;
  double contraction = 0.5;
  double sufficient_increase_coef = 1e-4;
  int m_max = 30;
};

struct OptimizerConfig {
  double eps = 1e-6; // stop when relative objective increase falls below
  int i_max = 500;
  ArmijoConfig armijo;
  double fd_step = 1e-6; // test-oracle step
};

// Wirtinger gradient 2 d/dF* of sum_k log2(1 + SINR_k); the ascent direction
// under the real trace metric.
Eigen::MatrixXcd euclidean_gradient(const Eigen::MatrixXcd& F, const Eigen::MatrixXd& beta,
                                    double rho);

// tangent projection of the euclidean gradient at F
Eigen::MatrixXcd riemannian_gradient(const Eigen::MatrixXcd& F, const Eigen::MatrixXd& beta,
                                     double rho);

struct ArmijoResult {
  double step = 0.0;
  bool found = false; // false flags stagnation after m_max backtracks
};

// Largest step initial_step * contraction^m (m = 0..m_max-1) with
// f(retract(F, step * dir)) >= f0 + sufficient_increase_coef * step * slope,
// where slope = metric(grad, dir).
ArmijoResult armijo_step(const Eigen::MatrixXcd& F, const Eigen::MatrixXcd& direction,
                         double f0, double slope,
                         const std::function<double(const Eigen::MatrixXcd&)>& objective,
                         const ArmijoConfig& cfg);

// conjugate direction safeguard: fall back to the gradient when the current
// direction is not an ascent direction
Eigen::MatrixXcd reset_if_not_ascent(const Eigen::MatrixXcd& grad, const Eigen::MatrixXcd& dir);

struct DesignResult {
  PilotMatrix pilots; // kind = UnimodularEntries
  std::vector<double> trace; // objective per accepted iterate, starting at the init
  bool converged = false;
  int iterations = 0;
};

// Riemannian conjugate-gradient ascent of the sum rate over the product of
// circles: Polak-Ribiere+ coefficient with projection transport, Armijo line
// search, gradient reset on non-ascent directions. `init` defaults to a
// uniform random phase matrix.
DesignResult optimize_pilots(const Eigen::MatrixXd& beta, double rho, int tau,
                             const OptimizerConfig& cfg, std::optional<Eigen::MatrixXcd> init,
                             Rng& rng);

// Central finite differences of an arbitrary real functional in the same
// Wirtinger convention as euclidean_gradient. Test oracle only.
Eigen::MatrixXcd fd_gradient(const std::function<double(const Eigen::MatrixXcd&)>& f,
                             const Eigen::MatrixXcd& F, double step);

// fd_gradient applied to the sum-rate objective; step must be in [1e-8, 1e-4]
Eigen::MatrixXcd fd_gradient_oracle(const Eigen::MatrixXcd& F, const Eigen::MatrixXd& beta,
                                    double rho, double step);

}  // namespace cfmimo
