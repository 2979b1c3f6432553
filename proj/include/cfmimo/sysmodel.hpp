#pragma once

#include <Eigen/Dense>

#include "cfmimo/rng.hpp"
#include "cfmimo/system_config.hpp"

namespace cfmimo {

struct NetworkGeometry {
  Eigen::MatrixX2d ap_xy; // L x 2
  Eigen::MatrixX2d ue_xy; // K x 2
  double area_size_m = 0.0;
};

NetworkGeometry place_network(const SystemConfig& cfg, Rng& rng);

// Torus metric over the square, min over the 9 tile copies, including the
// AP/UE height difference.
double wrapped_distance(double ap_x, double ap_y, double ue_x, double ue_y,
                        double area_size_m, double height_diff_m);

// Three-slope model; d in metres.
double path_loss_dB(double d_m, const SystemConfig& cfg);
double path_loss_linear(double d_m, const SystemConfig& cfg);

// beta[l][k] = pathloss * lognormal shadowing (shadowed only beyond d1 unless
// cfg.shadowing_everywhere)
Eigen::MatrixXd large_scale_fading(const NetworkGeometry& geo, const SystemConfig& cfg, Rng& rng);

// g[l][k] = sqrt(beta[l][k]) * CN(0,1)
Eigen::MatrixXcd draw_channel(const Eigen::MatrixXd& beta, Rng& rng);

}  // namespace cfmimo
