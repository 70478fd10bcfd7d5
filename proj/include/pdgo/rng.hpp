#pragma once

#include <cmath>
#include <cstdint>

namespace pdgo {

/// SplitMix64 generator (Steele, Lea, Flood's mix function). Chosen over the
/// standard-library engines because its output stream is fully specified by
/// the seed, so generated problems and traces reproduce across platforms and
/// standard libraries.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

/// Standard normal draws via the Box-Muller transform over SplitMix64
/// uniforms. Draws come in pairs; the second of each pair is cached.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    const double u1 = 1.0 - rng_.uniform();  // (0, 1], keeps log finite
    const double u2 = rng_.uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    cached_ = r * std::sin(angle);
    has_cached_ = true;
    return r * std::cos(angle);
  }

  SplitMix64& engine() { return rng_; }

 private:
  SplitMix64 rng_;
  bool has_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace pdgo
