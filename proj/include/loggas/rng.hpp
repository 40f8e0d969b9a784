#pragma once

#include <cmath>
#include <cstdint>

namespace loggas {

// Counter-based generator: output k is a pure function of (key, k), so streams
// can be replayed, forked, and compared across platforms bit for bit.
// std::normal_distribution and friends are deliberately not used anywhere:
// their algorithms differ between standard libraries, which would break the
// reproducibility contract on sampled data.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : key_(finalize(seed + kGolden)) {}

  // independent stream derived from this one; deterministic in (key, tag)
  CounterRng fork(std::uint64_t tag) const {
    return CounterRng(key_ ^ finalize(tag * 0x9FB21C651E98DF25ull + kGolden));
  }

  std::uint64_t next_u64() { return finalize(key_ + (++ctr_) * kGolden); }

  // uniform on [0,1), 53-bit mantissa
  double uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

  // uniform on (0,1], safe under log
  double uniform01_pos() { return double((next_u64() >> 11) + 1) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  // Box-Muller pair, one spare cached
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01_pos();
    const double u2 = uniform01();
    const double rad = std::sqrt(-2.0 * std::log(u1));
    const double ang = 6.283185307179586476925286766559 * u2;
    spare_ = rad * std::sin(ang);
    has_spare_ = true;
    return rad * std::cos(ang);
  }

  // Gamma(shape, 1) by Marsaglia-Tsang squeeze; shape < 1 boosted via U^{1/shape}
  double gamma(double shape) {
    if (shape < 1.0) {
      const double g = gamma(shape + 1.0);
      return g * std::pow(uniform01_pos(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / (3.0 * std::sqrt(d));
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform01_pos();
      if (u < 1.0 - 0.0331 * (x * x) * (x * x)) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  // chi distribution with dof degrees of freedom: sqrt(chi^2) = sqrt(2 Gamma(dof/2))
  double chi(double dof) { return std::sqrt(2.0 * gamma(0.5 * dof)); }

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return ctr_; }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

  // splitmix64 finalizer
  static std::uint64_t finalize(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t key_ = 0;
  std::uint64_t ctr_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace loggas
