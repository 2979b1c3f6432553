#pragma once

#include <optional>

namespace cfmimo {

// Which normalized transmit SNR enters the closed-form SINR.
enum class SinrPower { pilot, uplink };

struct SystemConfig {
  int L = 40;   // access points
  int K = 20;   // users
  int tau = 10; // pilot length

  double area_size_m = 1000.0;
  double d0_m = 10.0;
  double d1_m = 50.0;
  double fc_MHz = 1900.0;
  double bandwidth_Hz = 20e6;
  double noise_figure_dB = 9.0;
  double h_ap_m = 15.0;
  double h_ue_m = 1.65;
  double sigma_sh_dB = 8.0;
  double p_pilot_W = 0.1;
  double p_uplink_W = 0.1;
  int coherence_T = 200; // symbols per coherence block
  double eta = 1.0;      // common power-control coefficient

  // When unset, derived from fc and antenna heights (COST-231 Hata constant).
  std::optional<double> pathloss_const_dB;
  bool shadowing_everywhere = false; // apply log-normal shadowing on every slope
  bool normalize_beta = true;        // scale each drop's beta to unit mean in drivers
  SinrPower sinr_power = SinrPower::pilot;
  double duplex_factor = 0.5;
};

// Frequency-and-height-only part of COST-231 Hata; distance terms live in the
// three-slope model.
double cost231_const_dB(double fc_MHz, double h_ap_m, double h_ue_m);

double effective_pathloss_const_dB(const SystemConfig& cfg);

// B * k_B * T0 * 10^(NF/10), T0 = 290 K
double noise_power_W(const SystemConfig& cfg);

// transmit powers normalized by the noise power
double rho_pilot(const SystemConfig& cfg);
double rho_uplink(const SystemConfig& cfg);
double sinr_rho(const SystemConfig& cfg);

// throws std::invalid_argument naming the offending field
void validate(const SystemConfig& cfg);

}  // namespace cfmimo
