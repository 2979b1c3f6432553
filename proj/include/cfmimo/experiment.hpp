#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cfmimo/system_config.hpp"

namespace cfmimo {

enum class ExperimentKind {
  Design,
  RatesCdf,
  MedianVsTau,
  MedianVsK,
  BerSweep,
  BerVsRatio,
  AcfProfile,
  RangeProfile,
};

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::RatesCdf;
  SystemConfig base;
  int trials = 1;
  std::uint64_t master_seed = 1;
  std::vector<std::string> schemes; // empty selects the kind's full set
  std::string out = "out.csv";

  // sweep grids
  std::vector<double> snr_dB_grid = {0, 5, 10, 15, 20};
  std::vector<int> tau_grid = {5, 10, 15, 20};
  std::vector<int> K_grid = {10, 20, 30, 40};
  std::vector<double> ratio_grid = {0.5, 1.0, 1.5, 2.0}; // K / tau at fixed tau

  // detection budgets
  long long min_bits = 200000;
  int symbols_per_drop = 40;
  bool perfect_csi = false;

  // sensing
  int n_sequences = 200;
  std::string acf_mode = "aperiodic"; // or "periodic"
  std::vector<double> target_ranges_m = {8.0, 19.0};
  double target_snr_dB = 20.0;

  // pilot design
  double opt_eps = 1e-6;
  int opt_max_iter = 500;
};

// Flat key=value configuration; '#' starts a comment. Unknown keys and
// malformed lines fail with the line number; unset keys keep defaults.
ExperimentSpec load_config(const std::string& path);
ExperimentSpec parse_config(const std::string& text); // same grammar, from memory

// Canonical serialization; load(emit(spec)) reproduces spec.
std::string emit_config(const ExperimentSpec& spec);

// Executes the spec and returns the paths written. Sweep kinds write one file
// per grid point (suffix _tau<v>, _K<v>, _r<v>); multi-trial design/range
// runs write one file per trial (suffix _t<i>).
std::vector<std::string> run_experiment(const ExperimentSpec& spec);

// shared CSV number format (%.12g): stable across runs and platforms
std::string format_double(double v);

}  // namespace cfmimo
