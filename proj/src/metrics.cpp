#include "cfmimo/metrics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cfmimo {

Eigen::MatrixXcd pilot_gram(const Eigen::MatrixXcd& F) { return F.adjoint() * F; }

EstimationStats estimation_stats(const Eigen::MatrixXcd& F, const Eigen::MatrixXd& beta,
                                 double rho_p) {
  const auto tau = static_cast<double>(F.rows());
  if (beta.cols() != F.cols()) throw std::invalid_argument("estimation_stats: beta/F user mismatch");
  const Eigen::MatrixXd a = pilot_gram(F).cwiseAbs2(); // a[k][k'] = |f_k^H f_k'|^2
  // delta[l][k] = rho_p * sum_k' beta[l][k'] a[k][k'] + tau
  const Eigen::MatrixXd delta =
      (rho_p * (beta * a.transpose())).array() + tau;
  EstimationStats s;
  s.c = tau * std::sqrt(rho_p) * beta.array() / delta.array();
  s.gamma = tau * tau * rho_p * beta.array().square() / delta.array();
  s.err_var = beta - s.gamma;
  return s;
}

ChannelEstimate estimate_channels(const Eigen::MatrixXcd& g, const Eigen::MatrixXcd& F,
                                  const Eigen::MatrixXd& beta, double rho_p, Rng& rng) {
  const auto L = g.rows();
  const auto K = g.cols();
  const auto tau = F.rows();
  ChannelEstimate est;
  est.stats = estimation_stats(F, beta, rho_p);
  est.g_hat.resize(L, K);
  const double srho = std::sqrt(rho_p);
  Eigen::VectorXcd y(tau), n(tau);
  for (Eigen::Index l = 0; l < L; ++l) {
    for (Eigen::Index t = 0; t < tau; ++t) n(t) = rng.cgaussian();
    y = srho * (F * g.row(l).transpose()) + n;
    const Eigen::VectorXcd proj = F.adjoint() * y; // proj[k] = f_k^H y_l
    est.g_hat.row(l) =
        (proj.array() * est.stats.c.row(l).transpose().array()).matrix().transpose();
  }
  return est;
}

Eigen::VectorXd sinr_per_user(const Eigen::MatrixXcd& F, const Eigen::MatrixXd& beta,
                              double rho) {
  const auto K = F.cols();
  const Eigen::MatrixXd a = pilot_gram(F).cwiseAbs2();
  const EstimationStats st = estimation_stats(F, beta, rho);
  const Eigen::MatrixXd& gamma = st.gamma;
  const Eigen::VectorXd Gam = gamma.colwise().sum();              // K
  // T[k][k'] = sum_l gamma[l][k] beta[l][k'] / beta[l][k]
  const Eigen::MatrixXd R = gamma.array() / beta.array();
  const Eigen::MatrixXd T = R.transpose() * beta;
  const Eigen::VectorXd Bl = beta.rowwise().sum();                // L
  Eigen::VectorXd sinr(K);
  for (Eigen::Index k = 0; k < K; ++k) {
    const double num = rho * Gam(k) * Gam(k);
    double d1 = 0.0;
    for (Eigen::Index kp = 0; kp < K; ++kp) {
      if (kp == k) continue;
      d1 += T(k, kp) * T(k, kp) * a(k, kp);
    }
    const double d2 = gamma.col(k).dot(Bl);
    sinr(k) = num / (rho * d1 + rho * d2 + Gam(k));
  }
  return sinr;
}

double sum_rate_bits(const Eigen::MatrixXcd& F, const Eigen::MatrixXd& beta, double rho) {
  const Eigen::VectorXd s = sinr_per_user(F, beta, rho);
  double sum = 0.0;
  for (Eigen::Index k = 0; k < s.size(); ++k) sum += std::log1p(s(k));
  return sum / std::numbers::ln2_v<double>;
}

RateReport rates(const Eigen::MatrixXcd& F, const Eigen::MatrixXd& beta, const SystemConfig& cfg) {
  RateReport rep;
  rep.sinr = sinr_per_user(F, beta, sinr_rho(cfg));
  rep.rate_bits.resize(rep.sinr.size());
  for (Eigen::Index k = 0; k < rep.sinr.size(); ++k) {
    rep.rate_bits(k) = std::log1p(rep.sinr(k)) / std::numbers::ln2_v<double>;
  }
  const double overhead = 1.0 - static_cast<double>(cfg.tau) / cfg.coherence_T;
  rep.net_bps = cfg.bandwidth_Hz * overhead * cfg.duplex_factor * rep.rate_bits;
  return rep;
}

}  // namespace cfmimo
