#include "cfmimo/pilot_design.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cfmimo/manifold.hpp"
#include "cfmimo/metrics.hpp"

namespace cfmimo {

Eigen::MatrixXcd euclidean_gradient(const Eigen::MatrixXcd& F, const Eigen::MatrixXd& beta,
                                    double rho) {
  const auto K = F.cols();
  const auto L = beta.rows();
  const double tau = static_cast<double>(F.rows());
  const Eigen::MatrixXcd G = F.adjoint() * F; // G[k][m] = f_k^H f_m
  const Eigen::MatrixXd a = G.cwiseAbs2();
  const Eigen::MatrixXd delta = (rho * (beta * a.transpose())).array() + tau; // L x K
  const Eigen::MatrixXd gamma = tau * tau * rho * beta.array().square() / delta.array();
  const Eigen::VectorXd Gam = gamma.colwise().sum();
  const Eigen::MatrixXd T = (gamma.array() / beta.array()).matrix().transpose() * beta;
  const Eigen::VectorXd Bl = beta.rowwise().sum();
  Eigen::MatrixXd a_off = a;
  a_off.diagonal().setZero();
  const Eigen::VectorXd N = rho * Gam.array().square();
  const Eigen::VectorXd D1 = rho * (T.array().square() * a_off.array()).rowwise().sum();
  const Eigen::VectorXd D2 = rho * (gamma.transpose() * Bl);
  const Eigen::VectorXd D = D1 + D2 + Gam;
  const Eigen::ArrayXd sinr = N.array() / D.array();
  // chain through rate = log2(1+sinr), sinr = N/D
  const Eigen::ArrayXd w = 1.0 / (std::numbers::ln2_v<double> * (1.0 + sinr));
  const Eigen::ArrayXd u = w / D.array();
  const Eigen::ArrayXd v = w * N.array() / D.array().square();
  Eigen::MatrixXd t = T.array() * a.array();
  t.diagonal().setZero();
  // A[l][k] = d(sum rate)/d gamma[l][k]
  const Eigen::MatrixXd bt = beta * t.transpose(); // bt[l][k] = sum_k' beta[l][k'] t[k][k']
  Eigen::MatrixXd A(L, K);
  for (Eigen::Index k = 0; k < K; ++k) {
    A.col(k) = (2.0 * rho * Gam(k) * u(k) -
                v(k) * (2.0 * rho * bt.col(k).array() / beta.col(k).array() +
                        rho * Bl.array() + 1.0))
                   .matrix();
  }
  const Eigen::MatrixXd e = gamma.array() / delta.array();
  // M[k][m] = -rho sum_l A[l][k] e[l][k] beta[l][m]: gamma's dependence on the
  // Gram row of user k
  const Eigen::MatrixXd M = -rho * ((A.array() * e.array()).matrix().transpose() * beta);
  Eigen::MatrixXd C1 = (-rho) * (v.matrix() * Eigen::RowVectorXd::Ones(K)).array() *
                       T.array().square(); // direct |Gram|^2 term in D1
  C1.diagonal().setZero();
  const Eigen::MatrixXd Q = M + C1;
  const Eigen::MatrixXd C = 2.0 * (Q + Q.transpose());
  return F * (C.cast<std::complex<double>>().array() * G.array()).matrix();
}

Eigen::MatrixXcd riemannian_gradient(const Eigen::MatrixXcd& F, const Eigen::MatrixXd& beta,
                                     double rho) {
  return manifold::project_tangent(F, euclidean_gradient(F, beta, rho));
}

ArmijoResult armijo_step(const Eigen::MatrixXcd& F, const Eigen::MatrixXcd& direction,
                         double f0, double slope,
                         const std::function<double(const Eigen::MatrixXcd&)>& objective,
                         const ArmijoConfig& cfg) {
  double alpha = cfg.initial_step;
  for (int m = 0; m < cfg.m_max; ++m) {
    const double fn = objective(manifold::retract(F, alpha * direction));
    if (fn >= f0 + cfg.sufficient_increase_coef * alpha * slope) return {alpha, true};
    alpha *= cfg.contraction;
  }
  return {0.0, false};
}

Eigen::MatrixXcd reset_if_not_ascent(const Eigen::MatrixXcd& grad, const Eigen::MatrixXcd& dir) {
  if (manifold::metric(grad, dir) <= 0.0) return grad;
  return dir;
}

DesignResult optimize_pilots(const Eigen::MatrixXd& beta, double rho, int tau,
                             const OptimizerConfig& cfg, std::optional<Eigen::MatrixXcd> init,
                             Rng& rng) {
  if (tau < 1) throw std::invalid_argument("optimize_pilots: tau must be >= 1");
  if (cfg.eps <= 0 || cfg.i_max < 1 || cfg.armijo.contraction <= 0 ||
      cfg.armijo.contraction >= 1)
    throw std::invalid_argument("optimize_pilots: invalid optimizer config");
  const auto K = beta.cols();
  Eigen::MatrixXcd F =
      init ? std::move(*init) : manifold::random_point(tau, static_cast<int>(K), rng);
  if (F.rows() != tau || F.cols() != K)
    throw std::invalid_argument("optimize_pilots: init shape mismatch");
  const auto objective = [&beta, rho](const Eigen::MatrixXcd& X) {
    return sum_rate_bits(X, beta, rho);
  };

  DesignResult res;
  double f = objective(F);
  res.trace.push_back(f);
  Eigen::MatrixXcd G = riemannian_gradient(F, beta, rho);
  Eigen::MatrixXcd Xi = G;
  for (int i = 0; i < cfg.i_max; ++i) {
    Xi = reset_if_not_ascent(G, Xi);
    const double slope = manifold::metric(G, Xi);
    const double gg = manifold::metric(G, G);
    if (std::sqrt(gg) < 1e-14 * std::max(1.0, std::abs(f))) {
      res.converged = true;
      break;
    }
    const ArmijoResult ls = armijo_step(F, Xi, f, slope, objective, cfg.armijo);
    if (!ls.found) {
      res.converged = true; // no acceptable increase left at the smallest step
      break;
    }
    const Eigen::MatrixXcd Fn = manifold::retract(F, ls.step * Xi);
    const double fn = objective(Fn);
    const Eigen::MatrixXcd Gn = riemannian_gradient(Fn, beta, rho);
    const Eigen::MatrixXcd Xit = manifold::project_tangent(Fn, Xi);
    const double pr = std::max(0.0, manifold::metric(Gn, Gn - Xit) / gg);
    Xi = Gn + pr * Xit;
    const bool done = (fn - f) <= cfg.eps * std::max(1.0, std::abs(f));
    F = Fn;
    f = fn;
    G = Gn;
    res.trace.push_back(f);
    if (done) {
      res.converged = true;
      break;
    }
  }
  res.iterations = static_cast<int>(res.trace.size()) - 1;
  res.pilots.F = std::move(F);
  res.pilots.kind = PilotKind::UnimodularEntries;
  return res;
}

Eigen::MatrixXcd fd_gradient(const std::function<double(const Eigen::MatrixXcd&)>& f,
                             const Eigen::MatrixXcd& F, double step) {
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(F.rows(), F.cols());
  Eigen::MatrixXcd X = F;
  const std::complex<double> parts[2] = {{1.0, 0.0}, {0.0, 1.0}};
  for (Eigen::Index j = 0; j < F.cols(); ++j) {
    for (Eigen::Index i = 0; i < F.rows(); ++i) {
      for (const auto part : parts) {
        X(i, j) = F(i, j) + step * part;
        const double fp = f(X);
        X(i, j) = F(i, j) - step * part;
        const double fm = f(X);
        X(i, j) = F(i, j);
        g(i, j) += part * ((fp - fm) / (2.0 * step));
      }
    }
  }
  return g;
}

Eigen::MatrixXcd fd_gradient_oracle(const Eigen::MatrixXcd& F, const Eigen::MatrixXd& beta,
                                    double rho, double step) {
  if (step < 1e-8 || step > 1e-4)
    throw std::invalid_argument("fd_gradient_oracle: step outside [1e-8, 1e-4]");
  return fd_gradient(
      [&beta, rho](const Eigen::MatrixXcd& X) { return sum_rate_bits(X, beta, rho); }, F, step);
}

}  // namespace cfmimo
