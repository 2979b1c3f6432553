#include <doctest.h>

#include <cmath>
#include <complex>

#include "cfmimo/manifold.hpp"
#include "cfmimo/metrics.hpp"
#include "cfmimo/pilots.hpp"
#include "cfmimo/rng.hpp"
#include "cfmimo/sensing.hpp"

using namespace cfmimo;

namespace {

Eigen::VectorXcd random_unimodular(int n, Rng& rng) {
  Eigen::VectorXcd x(n);
  for (int i = 0; i < n; ++i) x(i) = std::polar(1.0, rng.uniform(0.0, 6.283185307179586));
  return x;
}

}  // namespace

TEST_CASE("unitary transform pair: round trip, energy, two-point hand values") {
  Rng rng(3);
  const Eigen::VectorXcd x = random_unimodular(7, rng) * 1.3;
  CHECK((idft(dft(x)) - x).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(dft(x).squaredNorm() == doctest::Approx(x.squaredNorm()).epsilon(1e-12));
  Eigen::VectorXcd e(2), ones(2);
  e << 1.0, 0.0;
  ones << 1.0, 1.0;
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(dft(e)(0) - s) < 1e-14);
  CHECK(std::abs(dft(e)(1) - s) < 1e-14);
  CHECK(std::abs(dft(ones)(0) - std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(dft(ones)(1)) < 1e-14);
}

TEST_CASE("time-domain pilots: optimized entries pass through the inverse transform") {
  Rng rng(4);
  PilotMatrix pm;
  pm.kind = PilotKind::UnimodularEntries;
  pm.F.resize(8, 2);
  pm.F.col(0) = random_unimodular(8, rng);
  pm.F.col(1) = random_unimodular(8, rng);
  const Eigen::VectorXcd t0 = time_domain_pilot(pm, 0);
  CHECK((t0 - idft(pm.F.col(0))).cwiseAbs().maxCoeff() == 0.0);
  CHECK(t0.squaredNorm() == doctest::Approx(8.0).epsilon(1e-12));
  PilotMatrix pa;
  pa.kind = PilotKind::OrthonormalAssigned;
  pa.F = pm.F;
  CHECK((time_domain_pilot(pa, 1) - pm.F.col(1)).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(time_domain_pilot(pm, 2), std::invalid_argument);
  CHECK_THROWS_AS(time_domain_pilot(pm, -1), std::invalid_argument);
}

TEST_CASE("autocorrelation of the all-ones sequence counts the overlap") {
  Eigen::VectorXcd x = Eigen::VectorXcd::Ones(4);
  const AcfProfile p = acf(x, AcfMode::Aperiodic);
  REQUIRE(p.lags.size() == 7);
  CHECK(p.lags.front() == -3);
  CHECK(p.lags.back() == 3);
  const double want[7] = {1.0, 2.0, 3.0, 4.0, 3.0, 2.0, 1.0};
  for (int i = 0; i < 7; ++i) CHECK(std::abs(p.values(i) - want[i]) < 1e-14);
  // periodic wrap keeps full overlap everywhere
  const AcfProfile q = acf(x, AcfMode::Periodic);
  for (int i = 0; i < 7; ++i) CHECK(std::abs(q.values(i) - 4.0) < 1e-14);
}

TEST_CASE("autocorrelation is conjugate-symmetric with a real energy peak") {
  Rng rng(5);
  Eigen::VectorXcd x(6);
  for (int i = 0; i < 6; ++i) x(i) = rng.cgaussian();
  for (const AcfMode mode : {AcfMode::Aperiodic, AcfMode::Periodic}) {
    const AcfProfile p = acf(x, mode);
    const int mid = 5;
    CHECK(std::abs(p.values(mid) - x.squaredNorm()) < 1e-12);
    for (int k = 1; k < 6; ++k)
      CHECK(std::abs(p.values(mid - k) - std::conj(p.values(mid + k))) < 1e-12);
  }
  CHECK_THROWS_AS(acf(Eigen::VectorXcd(), AcfMode::Aperiodic), std::invalid_argument);
}

TEST_CASE("a unimodular spectrum collapses the periodic autocorrelation to a delta") {
  Rng rng(6);
  const Eigen::VectorXcd f = random_unimodular(10, rng);
  const Eigen::VectorXcd x = idft(f); // |DFT(x)| = 1 at every bin
  const AcfProfile p = acf(x, AcfMode::Periodic);
  const int mid = 9;
  const double r0 = std::abs(p.values(mid));
  CHECK(r0 == doctest::Approx(10.0).epsilon(1e-12));
  for (int k = 1; k < 10; ++k) {
    CHECK(std::abs(p.values(mid + k)) <= 1e-9 * r0);
    CHECK(std::abs(p.values(mid - k)) <= 1e-9 * r0);
  }
}

TEST_CASE("aperiodic autocorrelation agrees with the zero-padded spectral oracle") {
  Rng rng(7);
  const int N = 9;
  Eigen::VectorXcd x(N);
  for (int i = 0; i < N; ++i) x(i) = rng.cgaussian();
  const AcfProfile p = acf(x, AcfMode::Aperiodic);
  // pad to 2N, square the spectrum, transform back: circular correlation of
  // the padded sequence equals the aperiodic correlation
  const int M = 2 * N;
  Eigen::VectorXcd pad = Eigen::VectorXcd::Zero(M);
  pad.head(N) = x;
  const Eigen::VectorXcd spec = dft(pad);
  Eigen::VectorXcd power(M);
  for (int m = 0; m < M; ++m) power(m) = std::norm(spec(m));
  const Eigen::VectorXcd corr = std::sqrt(static_cast<double>(M)) * idft(power);
  const double r0 = x.squaredNorm();
  for (int k = 0; k < N; ++k)
    CHECK(std::abs(p.values(N - 1 + k) - corr(k)) < 1e-10 * r0);
}

TEST_CASE("fractional delay: identity, integer shifts, composition, energy") {
  Rng rng(8);
  Eigen::VectorXcd x(8);
  for (int i = 0; i < 8; ++i) x(i) = rng.cgaussian();
  CHECK((fractional_delay(x, 0.0) - x).cwiseAbs().maxCoeff() < 1e-12);
  const Eigen::VectorXcd d1 = fractional_delay(x, 1.0);
  for (int n = 0; n < 8; ++n) CHECK(std::abs(d1(n) - x((n + 7) % 8)) < 1e-12);
  const Eigen::VectorXcd shift_sum = fractional_delay(fractional_delay(x, 0.3), 0.7);
  CHECK((shift_sum - d1).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(fractional_delay(x, 2.41).squaredNorm() == doctest::Approx(x.squaredNorm()).epsilon(1e-12));
  CHECK_THROWS_AS(fractional_delay(x, std::nan("")), std::invalid_argument);
  // a constant sequence only has a DC component: any delay is a no-op
  const Eigen::VectorXcd c = Eigen::VectorXcd::Constant(8, std::complex<double>(0.4, -0.2));
  CHECK((fractional_delay(c, 0.5) - c).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("range cells are spaced c/(2B) apart and a zero-range target peaks at zero") {
  Rng rng(9);
  RangeScene scene;
  scene.pilot = idft(random_unimodular(16, rng));
  scene.bandwidth_Hz = 20e6;
  scene.snr_dB = 200.0;
  scene.targets = {{0.0, {1.0, 0.0}}};
  const RangeProfile prof = range_profile(scene, rng);
  REQUIRE(prof.range_m.size() == 16);
  CHECK(prof.range_m(1) == doctest::Approx(7.5));
  CHECK(prof.range_m(5) == doctest::Approx(37.5));
  CHECK(prof.magnitude_dB(0) == doctest::Approx(0.0).epsilon(1e-9));
  for (int lag = 1; lag < 16; ++lag) CHECK(prof.magnitude_dB(lag) < -10.0);
}

TEST_CASE("an integer-cell target circularly shifts the zero-range response") {
  Rng rng(10);
  // a rough spectrum keeps the sidelobes far above the injected noise floor
  Eigen::VectorXcd pilot(12);
  for (int i = 0; i < 12; ++i) pilot(i) = rng.cgaussian();
  RangeScene base;
  base.pilot = pilot;
  base.snr_dB = 200.0;
  base.targets = {{0.0, {1.0, 0.0}}};
  RangeScene moved = base;
  moved.targets = {{3 * 7.5, {1.0, 0.0}}};
  Rng n1(77), n2(77);
  const RangeProfile p0 = range_profile(base, n1);
  const RangeProfile p3 = range_profile(moved, n2);
  for (int lag = 0; lag < 12; ++lag)
    CHECK(p3.magnitude_dB((lag + 3) % 12) == doctest::Approx(p0.magnitude_dB(lag)).epsilon(1e-6));
  const int peak =
      static_cast<int>(std::max_element(p3.magnitude_dB.data(), p3.magnitude_dB.data() + 12) -
                       p3.magnitude_dB.data());
  CHECK(peak == 3);
}

TEST_CASE("fractional targets interpolate: dense delay-operator oracle") {
  Rng rng(11);
  const int N = 16;
  const Eigen::VectorXcd pilot = idft(random_unimodular(N, rng));
  const double d = 4.4;
  const Eigen::VectorXcd echo = fractional_delay(pilot, d);
  // discrete matched profile, noiseless
  RangeScene scene;
  scene.pilot = pilot;
  scene.snr_dB = 500.0;
  scene.targets = {{d * 7.5, {1.0, 0.0}}};
  Rng quiet(1);
  const RangeProfile prof = range_profile(scene, quiet);
  // oracle curve: correlate after undoing a continuous lag
  const auto curve = [&](double t) {
    const Eigen::VectorXcd undone = fractional_delay(echo, -t);
    std::complex<double> m = 0.0;
    for (int n = 0; n < N; ++n) m += std::conj(pilot(n)) * undone(n);
    return std::abs(m);
  };
  // integer samples of the curve reproduce the discrete filter (up to the
  // common peak normalization)
  Eigen::VectorXd mag(N);
  for (int lag = 0; lag < N; ++lag) mag(lag) = curve(static_cast<double>(lag));
  const double peak_mag = mag.maxCoeff();
  for (int lag = 0; lag < N; ++lag) {
    const double want_db = 20.0 * std::log10(mag(lag) / peak_mag);
    CHECK(prof.magnitude_dB(lag) == doctest::Approx(want_db).epsilon(1e-5));
  }
  // the continuous curve peaks at the true fractional delay
  double best_t = 0.0, best_v = -1.0;
  for (double t = 0.0; t < N; t += 0.05) {
    const double v = curve(t);
    if (v > best_v) {
      best_v = v;
      best_t = t;
    }
  }
  CHECK(std::abs(best_t - d) <= 0.05 + 1e-9);
  // and the discrete argmax lands on the rounded cell
  int arg = 0;
  for (int lag = 1; lag < N; ++lag)
    if (prof.magnitude_dB(lag) > prof.magnitude_dB(arg)) arg = lag;
  CHECK(arg == 4);
}

TEST_CASE("targets outside the unambiguous window are rejected") {
  Rng rng(12);
  RangeScene scene;
  scene.pilot = idft(random_unimodular(8, rng));
  scene.targets = {{-1.0, {1.0, 0.0}}};
  CHECK_THROWS_AS(range_profile(scene, rng), std::domain_error);
  scene.targets = {{8 * 7.5, {1.0, 0.0}}};
  CHECK_THROWS_AS(range_profile(scene, rng), std::domain_error);
  scene.targets = {{8 * 7.5 - 0.1, {1.0, 0.0}}};
  CHECK_NOTHROW(range_profile(scene, rng));
}

TEST_CASE("sidelobe aggregation: unit peak, symmetry, draw counting") {
  Rng rng(13);
  int calls = 0;
  const auto next = [&]() {
    ++calls;
    return idft(random_unimodular(6, rng));
  };
  const SidelobeProfile prof = sidelobe_profile_dB(next, 25, AcfMode::Aperiodic);
  CHECK(calls == 25);
  REQUIRE(prof.lags.size() == 11);
  const int mid = 5;
  CHECK(prof.level_dB(mid) == doctest::Approx(0.0).epsilon(1e-12));
  for (int k = 1; k <= 5; ++k)
    CHECK(prof.level_dB(mid - k) == doctest::Approx(prof.level_dB(mid + k)).epsilon(1e-12));
  for (int k = 1; k <= 5; ++k) CHECK(prof.level_dB(mid + k) < 0.0);
  CHECK_THROWS_AS(sidelobe_profile_dB(next, 0, AcfMode::Aperiodic), std::invalid_argument);
}

TEST_CASE("the communication SINR is blind to the time/frequency representation") {
  Rng rng(14);
  PilotMatrix pm;
  pm.kind = PilotKind::UnimodularEntries;
  pm.F = manifold::random_point(6, 3, rng);
  Eigen::MatrixXd beta(2, 3);
  beta << 1.0, 0.4, 2.0, 0.3, 1.5, 0.9;
  Eigen::MatrixXcd Ft(6, 3);
  for (int k = 0; k < 3; ++k) Ft.col(k) = time_domain_pilot(pm, k);
  const Eigen::VectorXd a = sinr_per_user(pm.F, beta, 3.0);
  const Eigen::VectorXd b = sinr_per_user(Ft, beta, 3.0);
  for (int k = 0; k < 3; ++k) CHECK(a(k) == doctest::Approx(b(k)).epsilon(1e-10));
}
