#include "cfmimo/system_config.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cfmimo {

double cost231_const_dB(double fc_MHz, double h_ap_m, double h_ue_m) {
  const double lf = std::log10(fc_MHz);
  return 46.3 + 33.9 * lf - 13.82 * std::log10(h_ap_m) -
         (1.1 * lf - 0.7) * h_ue_m + (1.56 * lf - 0.8);
}

double effective_pathloss_const_dB(const SystemConfig& cfg) {
  if (cfg.pathloss_const_dB) return *cfg.pathloss_const_dB;
  return cost231_const_dB(cfg.fc_MHz, cfg.h_ap_m, cfg.h_ue_m);
}

double noise_power_W(const SystemConfig& cfg) {
  constexpr double k_B = 1.381e-23;
  constexpr double T0 = 290.0;
  return cfg.bandwidth_Hz * k_B * T0 * std::pow(10.0, cfg.noise_figure_dB / 10.0);
}

double rho_pilot(const SystemConfig& cfg) { return cfg.p_pilot_W / noise_power_W(cfg); }

double rho_uplink(const SystemConfig& cfg) { return cfg.p_uplink_W / noise_power_W(cfg); }

double sinr_rho(const SystemConfig& cfg) {
  return cfg.sinr_power == SinrPower::pilot ? rho_pilot(cfg) : rho_uplink(cfg);
}

namespace {
void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("SystemConfig: ") + what);
}
}  // namespace

void validate(const SystemConfig& cfg) {
  require(cfg.L >= 1, "L must be >= 1");
  require(cfg.K >= 1, "K must be >= 1");
  require(cfg.tau >= 1, "tau must be >= 1");
  require(cfg.area_size_m > 0, "area_size_m must be positive");
  require(cfg.d0_m > 0 && cfg.d1_m > cfg.d0_m, "need 0 < d0_m < d1_m");
  require(cfg.d1_m < cfg.area_size_m, "d1_m must be below area_size_m");
  require(cfg.fc_MHz > 0, "fc_MHz must be positive");
  require(cfg.bandwidth_Hz > 0, "bandwidth_Hz must be positive");
  require(cfg.h_ap_m > 0 && cfg.h_ue_m > 0, "antenna heights must be positive");
  require(cfg.sigma_sh_dB >= 0, "sigma_sh_dB must be non-negative");
  require(cfg.p_pilot_W > 0 && cfg.p_uplink_W > 0, "transmit powers must be positive");
  require(cfg.coherence_T >= cfg.tau, "coherence_T must be >= tau");
  require(cfg.eta > 0 && cfg.eta <= 1.0, "eta must be in (0, 1]");
  require(cfg.duplex_factor > 0 && cfg.duplex_factor <= 1.0, "duplex_factor must be in (0, 1]");
}

}  // namespace cfmimo
