#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace cfmimo {

// splitmix64 finalizer (Steele et al.); bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Stream seed for trial `index` under `master`. For a fixed master the map
// index -> seed is injective (bijective mix of distinct inputs), so trial
// streams never collide. Byte order never enters: everything is 64-bit
// integer arithmetic.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(master + 0x9E3779B97F4A7C15ULL * (index + 1));
}

// mt19937_64 engine with hand-rolled uniform/Box-Muller transforms so the
// produced stream is identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // [0, 1)
  double uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // uniform integer in [0, n), unbiased via rejection
  std::uint64_t uniform_index(std::uint64_t n) {
    const std::uint64_t lim = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
      x = eng_();
    } while (x >= lim);
    return x % n;
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // u1 in (0,1] keeps the log finite
    const double u1 = static_cast<double>((eng_() >> 11) + 1) * 0x1.0p-53;
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

  // CN(0,1): variance 1/2 per real axis
  std::complex<double> cgaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return {re * 0.70710678118654752440, im * 0.70710678118654752440};
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace cfmimo
