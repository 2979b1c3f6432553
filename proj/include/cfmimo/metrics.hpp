#pragma once

#include <Eigen/Dense>

#include "cfmimo/rng.hpp"
#include "cfmimo/system_config.hpp"

namespace cfmimo {

// G[k][k'] = f_k^H f_k'
Eigen::MatrixXcd pilot_gram(const Eigen::MatrixXcd& F);

// Per-link MMSE estimation statistics for pilot matrix F at normalized pilot
// SNR rho_p:
//   delta[l][k] = rho_p * sum_k' beta[l][k'] |f_k^H f_k'|^2 + tau
//   c[l][k]     = tau sqrt(rho_p) beta[l][k] / delta[l][k]
//   gamma[l][k] = tau^2 rho_p beta[l][k]^2 / delta[l][k]
struct EstimationStats {
  Eigen::MatrixXd c;       // projection-to-estimate scale
  Eigen::MatrixXd gamma;   // mean-square estimate E|g_hat|^2
  Eigen::MatrixXd err_var; // beta - gamma
};

EstimationStats estimation_stats(const Eigen::MatrixXcd& F, const Eigen::MatrixXd& beta,
                                 double rho_p);

struct ChannelEstimate {
  Eigen::MatrixXcd g_hat;
  EstimationStats stats;
};

// Simulates the pilot phase (y_l = sqrt(rho_p) sum_k g_lk f_k + noise),
// projects onto each pilot and applies the MMSE scale.
ChannelEstimate estimate_channels(const Eigen::MatrixXcd& g, const Eigen::MatrixXcd& F,
                                  const Eigen::MatrixXd& beta, double rho_p, Rng& rng);

// Closed-form uplink SINR per user with MR combining over channel statistics.
Eigen::VectorXd sinr_per_user(const Eigen::MatrixXcd& F, const Eigen::MatrixXd& beta,
                              double rho);

// sum_k log2(1 + SINR_k); the pilot-design objective
double sum_rate_bits(const Eigen::MatrixXcd& F, const Eigen::MatrixXd& beta, double rho);

struct RateReport {
  Eigen::VectorXd sinr;
  Eigen::VectorXd rate_bits; // per channel use
  Eigen::VectorXd net_bps;   // B * (1 - tau/T) * duplex_factor * rate
};

RateReport rates(const Eigen::MatrixXcd& F, const Eigen::MatrixXd& beta, const SystemConfig& cfg);

}  // namespace cfmimo
