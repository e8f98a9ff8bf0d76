#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace seqreg {

/// Deterministic 64-bit generator (splitmix64) with explicit seeding.
///
/// All randomized components of the library draw from this generator so that
/// every artifact (truth vectors, weights, noise) is a pure function of its
/// seed, independent of platform RNG implementations and thread scheduling.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1), 53 random bits.
  double next_unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double next_uniform(double lo, double hi) {
    return lo + (hi - lo) * next_unit();
  }

  /// Uniform integer in [0, m). m must be positive.
  std::uint64_t next_below(std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("next_below: m must be positive");
    return next() % m;
  }

  /// Standard normal via Box-Muller on the unit stream.
  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // 1 - u in (0, 1] keeps the log argument positive.
    const double u1 = 1.0 - next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(phi);
    have_spare_ = true;
    return r * std::cos(phi);
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

/// Derives a stream seed from a base seed and up to two salts.
/// Used to give every (delta, trial) cell of a sweep its own stream.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt1,
                              std::uint64_t salt2 = 0) {
  SplitMix64 g(base ^ (salt1 * 0x9e3779b97f4a7c15ULL) ^
               (salt2 * 0xc2b2ae3d27d4eb4fULL));
  g.next();
  return g.next();
}

}  // namespace seqreg
