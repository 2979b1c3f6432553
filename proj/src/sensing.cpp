#include "cfmimo/sensing.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cfmimo {

namespace {

Eigen::VectorXcd dft_impl(const Eigen::VectorXcd& x, double sign) {
  const auto N = x.size();
  Eigen::VectorXcd X(N);
  const double w = sign * 2.0 * std::numbers::pi_v<double> / static_cast<double>(N);
  const double scale = 1.0 / std::sqrt(static_cast<double>(N));
  for (Eigen::Index m = 0; m < N; ++m) {
    std::complex<double> acc{0.0, 0.0};
    for (Eigen::Index n = 0; n < N; ++n)
      acc += x(n) * std::polar(1.0, w * static_cast<double>(m) * static_cast<double>(n));
    X(m) = scale * acc;
  }
  return X;
}

}  // namespace

Eigen::VectorXcd dft(const Eigen::VectorXcd& x) { return dft_impl(x, -1.0); }

Eigen::VectorXcd idft(const Eigen::VectorXcd& X) { return dft_impl(X, 1.0); }

Eigen::VectorXcd time_domain_pilot(const PilotMatrix& F, int k) {
  if (k < 0 || k >= F.F.cols()) throw std::invalid_argument("time_domain_pilot: bad user index");
  if (F.kind == PilotKind::UnimodularEntries) return idft(F.F.col(k));
  return F.F.col(k);
}

AcfProfile acf(const Eigen::VectorXcd& x, AcfMode mode) {
  const auto N = x.size();
  if (N < 1) throw std::invalid_argument("acf: empty sequence");
  AcfProfile p;
  p.mode = mode;
  p.lags.resize(2 * N - 1);
  p.values.resize(2 * N - 1);
  for (Eigen::Index k = 0; k < N; ++k) {
    std::complex<double> r{0.0, 0.0};
    if (mode == AcfMode::Aperiodic) {
      for (Eigen::Index n = 0; n + k < N; ++n) r += std::conj(x(n)) * x(n + k);
    } else {
      for (Eigen::Index n = 0; n < N; ++n) r += std::conj(x(n)) * x((n + k) % N);
    }
    p.lags[N - 1 + k] = static_cast<int>(k);
    p.values(N - 1 + k) = r;
    p.lags[N - 1 - k] = -static_cast<int>(k);
    p.values(N - 1 - k) = std::conj(r);
  }
  return p;
}

SidelobeProfile sidelobe_profile_dB(const std::function<Eigen::VectorXcd()>& next_sequence,
                                    int n_sequences, AcfMode mode) {
  if (n_sequences < 1) throw std::invalid_argument("sidelobe_profile_dB: n_sequences >= 1");
  SidelobeProfile out;
  Eigen::VectorXd acc;
  for (int s = 0; s < n_sequences; ++s) {
    const AcfProfile p = acf(next_sequence(), mode);
    const double r0 = std::abs(p.values((p.values.size() - 1) / 2));
    if (s == 0) {
      out.lags = p.lags;
      acc = Eigen::VectorXd::Zero(p.values.size());
    }
    acc += (p.values.array().abs() / r0).matrix();
  }
  out.level_dB = 20.0 * (acc / n_sequences).array().log10();
  return out;
}

Eigen::VectorXcd fractional_delay(const Eigen::VectorXcd& x, double delay_samples) {
  if (!std::isfinite(delay_samples))
    throw std::invalid_argument("fractional_delay: non-finite delay");
  const auto N = x.size();
  Eigen::VectorXcd X = dft(x);
  const double w = 2.0 * std::numbers::pi_v<double> / static_cast<double>(N);
  for (Eigen::Index m = 0; m < N; ++m) {
    // symmetric frequency indexing keeps fractional shifts interpolatory
    const double f = (2 * m <= N) ? static_cast<double>(m) : static_cast<double>(m - N);
    X(m) *= std::polar(1.0, -w * f * delay_samples);
  }
  return idft(X);
}

RangeProfile range_profile(const RangeScene& scene, Rng& rng) {
  const auto N = scene.pilot.size();
  if (N < 2) throw std::invalid_argument("range_profile: pilot length must be >= 2");
  const double res_m = kSpeedOfLight / (2.0 * scene.bandwidth_Hz);
  Eigen::VectorXcd echo = Eigen::VectorXcd::Zero(N);
  for (const auto& t : scene.targets) {
    if (t.range_m < 0.0 || t.range_m >= static_cast<double>(N) * res_m)
      throw std::domain_error("range_profile: target outside the unambiguous window");
    echo += t.amplitude * fractional_delay(scene.pilot, t.range_m / res_m);
  }
  const double sample_power = scene.pilot.squaredNorm() / static_cast<double>(N);
  const double noise_std = std::sqrt(sample_power * std::pow(10.0, -scene.snr_dB / 10.0));
  for (Eigen::Index n = 0; n < N; ++n) echo(n) += noise_std * rng.cgaussian();
  RangeProfile prof;
  prof.range_m.resize(N);
  Eigen::VectorXd mag(N);
  for (Eigen::Index lag = 0; lag < N; ++lag) {
    std::complex<double> m{0.0, 0.0};
    for (Eigen::Index n = 0; n < N; ++n) m += std::conj(scene.pilot(n)) * echo((n + lag) % N);
    mag(lag) = std::abs(m);
    prof.range_m(lag) = static_cast<double>(lag) * res_m;
  }
  const double peak = mag.maxCoeff();
  prof.magnitude_dB = 20.0 * (mag.array() / peak).log10();
  return prof;
}

}  // namespace cfmimo
