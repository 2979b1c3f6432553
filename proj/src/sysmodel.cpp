#include "cfmimo/sysmodel.hpp"

#include <cmath>

namespace cfmimo {

NetworkGeometry place_network(const SystemConfig& cfg, Rng& rng) {
  NetworkGeometry geo;
  geo.area_size_m = cfg.area_size_m;
  geo.ap_xy.resize(cfg.L, 2);
  geo.ue_xy.resize(cfg.K, 2);
  for (int l = 0; l < cfg.L; ++l) {
    geo.ap_xy(l, 0) = rng.uniform(0.0, cfg.area_size_m);
    geo.ap_xy(l, 1) = rng.uniform(0.0, cfg.area_size_m);
  }
  for (int k = 0; k < cfg.K; ++k) {
    geo.ue_xy(k, 0) = rng.uniform(0.0, cfg.area_size_m);
    geo.ue_xy(k, 1) = rng.uniform(0.0, cfg.area_size_m);
  }
  return geo;
}

double wrapped_distance(double ap_x, double ap_y, double ue_x, double ue_y,
                        double area_size_m, double height_diff_m) {
  const double D = area_size_m;
  auto wrap = [D](double d) {
    d = std::abs(d);
    return std::min(d, D - d);
  };
  const double dx = wrap(ap_x - ue_x);
  const double dy = wrap(ap_y - ue_y);
  return std::sqrt(dx * dx + dy * dy + height_diff_m * height_diff_m);
}

double path_loss_dB(double d_m, const SystemConfig& cfg) {
  const double Lc = effective_pathloss_const_dB(cfg);
  if (d_m > cfg.d1_m) return -Lc - 35.0 * std::log10(d_m);
  if (d_m > cfg.d0_m) return -Lc - 15.0 * std::log10(cfg.d1_m) - 20.0 * std::log10(d_m);
  return -Lc - 15.0 * std::log10(cfg.d1_m) - 20.0 * std::log10(cfg.d0_m);
}

double path_loss_linear(double d_m, const SystemConfig& cfg) {
  return std::pow(10.0, path_loss_dB(d_m, cfg) / 10.0);
}

Eigen::MatrixXd large_scale_fading(const NetworkGeometry& geo, const SystemConfig& cfg, Rng& rng) {
  const double dh = cfg.h_ap_m - cfg.h_ue_m;
  Eigen::MatrixXd beta(cfg.L, cfg.K);
  for (int l = 0; l < cfg.L; ++l) {
    for (int k = 0; k < cfg.K; ++k) {
      const double d = wrapped_distance(geo.ap_xy(l, 0), geo.ap_xy(l, 1),
                                        geo.ue_xy(k, 0), geo.ue_xy(k, 1),
                                        geo.area_size_m, dh);
      double b = path_loss_linear(d, cfg);
      if (d > cfg.d1_m || cfg.shadowing_everywhere) {
        b *= std::pow(10.0, cfg.sigma_sh_dB * rng.gaussian() / 10.0);
      }
      beta(l, k) = b;
    }
  }
  return beta;
}

Eigen::MatrixXcd draw_channel(const Eigen::MatrixXd& beta, Rng& rng) {
  Eigen::MatrixXcd g(beta.rows(), beta.cols());
  for (Eigen::Index l = 0; l < beta.rows(); ++l) {
    for (Eigen::Index k = 0; k < beta.cols(); ++k) {
      g(l, k) = std::sqrt(beta(l, k)) * rng.cgaussian();
    }
  }
  return g;
}

}  // namespace cfmimo
