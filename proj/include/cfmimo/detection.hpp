#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "cfmimo/rng.hpp"
#include "cfmimo/system_config.hpp"

namespace cfmimo {

// Gray-mapped QPSK; bits (b0, b1) -> c_x((1-2 b0) + j(1-2 b1)), c_x = sqrt(E_S/2)
struct Constellation {
  double E_S = 1.0;
  double c_x = 0.70710678118654752440;
  std::array<std::complex<double>, 4> points;

  static Constellation qpsk(double energy = 1.0);
};

Eigen::VectorXcd modulate(const std::vector<int>& bits, const Constellation& c);
std::vector<int> demodulate(const Eigen::VectorXcd& x);

// y = H x + w with effective gains: column k of H already carries the
// sqrt(rho_u * eta_k) transmit scaling. est_err_var holds the effective
// residual variances rho_u * eta_k * (beta - gamma); zero under perfect CSI.
struct EffectiveChannel {
  Eigen::MatrixXcd H;
  double noise_var = 1.0;
  Eigen::MatrixXd est_err_var;
};

struct DetectionResult {
  Eigen::VectorXcd x_hat; // soft estimates
  Eigen::VectorXcd hard;  // sliced constellation points
  std::vector<int> bits;  // 2 per user
};

// matched-filter combining of raw estimates; ds_k = sqrt(rho_u eta_k) sum_l gamma_lk
DetectionResult mr_combine(const Eigen::MatrixXcd& g_hat, const Eigen::VectorXcd& y,
                           const Eigen::VectorXd& ds, const Constellation& c);

// x_hat = (H^H H + noise_var/E_S I)^{-1} H^H y via a Cholesky solve
DetectionResult lmmse_detect(const EffectiveChannel& ch, const Eigen::VectorXcd& y,
                             const Constellation& c);

struct EpConfig {
  int t_max = 10;
  double damping = 0.7;
  double var_floor = 1e-8;
};

// Moment-matching expectation propagation with a diagonal estimation-error
// covariance folded into the whitened observation; t_max = 1 with the default
// uninformative sites reproduces LMMSE.
DetectionResult ep_detect(const EffectiveChannel& ch, const Eigen::VectorXcd& y,
                          const EpConfig& cfg, const Constellation& c);

struct GabpConfig {
  int i_max = 20;
  double damping = 0.5; // beta_x, applied to both replica means and variances
};

// Per-edge Gaussian belief propagation: soft interference cancellation,
// extrinsic beliefs excluding the observing AP, per-axis tanh denoiser,
// damped replica updates, final consensus across APs.
DetectionResult gabp_detect(const EffectiveChannel& ch, const Eigen::VectorXcd& y,
                            const GabpConfig& cfg, const Constellation& c);

// Exhaustive max-likelihood over the K-fold constellation product; refuses
// search spaces past 1e6 points.
DetectionResult map_oracle(const Eigen::MatrixXcd& H, const Eigen::VectorXcd& y,
                           const Constellation& c);

enum class Scheme { MR, LMMSE, EP, GaBP };

const char* scheme_name(Scheme s);

struct BerScenario {
  SystemConfig sys;
  bool perfect_csi = false;
  std::vector<double> snr_dB;
  long long min_bits = 200000; // per SNR point
  int symbols_per_drop = 40;   // data vectors per fading drop
  GabpConfig gabp;
  EpConfig ep;
};

struct BerRecord {
  double snr_dB = 0.0;
  Scheme scheme = Scheme::MR;
  double ber = 0.0;
  long long bits_counted = 0;
};

// Monte Carlo bit error rate over fading drops with per-drop derived seeds.
// Identical master seeds reproduce identical drops for every scheme, so the
// schemes see the same channels, pilots, bits and noise.
std::vector<BerRecord> ber_experiment(Scheme scheme, const BerScenario& sc,
                                      std::uint64_t master_seed);

}  // namespace cfmimo
