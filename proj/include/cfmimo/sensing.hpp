#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

#include "cfmimo/pilots.hpp"
#include "cfmimo/rng.hpp"

namespace cfmimo {

inline constexpr double kSpeedOfLight = 3e8; // m/s

// unitary DFT pair by direct summation (sequences here are tiny)
Eigen::VectorXcd dft(const Eigen::VectorXcd& x);
Eigen::VectorXcd idft(const Eigen::VectorXcd& X);

// The transmitted sequence for user k: optimized entries are frequency-domain
// values, so UnimodularEntries maps through the unitary IDFT (norm tau is
// preserved); OrthonormalAssigned columns are transmitted as-is.
Eigen::VectorXcd time_domain_pilot(const PilotMatrix& F, int k);

enum class AcfMode { Aperiodic, Periodic };

struct AcfProfile {
  std::vector<int> lags;    // -(N-1) .. N-1
  Eigen::VectorXcd values;  // r_{-k} = conj(r_k); r_0 = ||x||^2
  AcfMode mode = AcfMode::Aperiodic;
};

AcfProfile acf(const Eigen::VectorXcd& x, AcfMode mode);

struct SidelobeProfile {
  std::vector<int> lags;
  Eigen::VectorXd level_dB; // 20 log10 of mean |r_k|/r_0 across sequences
};

// `next_sequence` yields one time-domain pilot per call (fresh draw each time)
SidelobeProfile sidelobe_profile_dB(const std::function<Eigen::VectorXcd()>& next_sequence,
                                    int n_sequences, AcfMode mode);

// circular fractional delay: frequency-domain linear phase, energy-preserving
Eigen::VectorXcd fractional_delay(const Eigen::VectorXcd& x, double delay_samples);

struct Target {
  double range_m = 0.0;
  std::complex<double> amplitude{1.0, 0.0};
};

struct RangeScene {
  std::vector<Target> targets;
  double snr_dB = 20.0;
  Eigen::VectorXcd pilot; // time-domain sequence
  double bandwidth_Hz = 20e6;
};

struct RangeProfile {
  Eigen::VectorXd range_m;      // lag * c/(2B)
  Eigen::VectorXd magnitude_dB; // normalized to the peak
};

// Matched filter over a multi-target echo at per-sample SNR `snr_dB`.
// Targets past the unambiguous window N * c/(2B) raise std::domain_error.
RangeProfile range_profile(const RangeScene& scene, Rng& rng);

}  // namespace cfmimo
