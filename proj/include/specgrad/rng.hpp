#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

namespace specgrad {

// Deterministic counter-based pseudo-random stream (SplitMix64).  The exact
// update and output scramble are part of the file-format / reproducibility
// contract and are documented in the README so that ports in other languages
// can reproduce every stream bit for bit.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return scramble(state_);
  }

  /// Output scramble (finalizer) alone; a bijection on 64-bit words.
  static std::uint64_t scramble(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
  }

  /// Uniform on [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on the open interval (0, 1): endpoint draws are clamped to
  /// [2^-53, 1 - 2^-53].
  double next_open() {
    const double lo = 0x1.0p-53;
    double u = next_double();
    if (u < lo) return lo;
    if (u > 1.0 - lo) return 1.0 - lo;
    return u;
  }

  /// Uniform on [a, b).
  double next_uniform(double a, double b) { return a + (b - a) * next_double(); }

  /// One pair of independent standard normals (basic Box-Muller; consumes
  /// exactly two stream values).
  std::pair<double, double> next_normal_pair() {
    const double u1 = next_open();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * M_PI * u2;
    return {r * std::cos(t), r * std::sin(t)};
  }

 private:
  std::uint64_t state_;
};

/// Seed for a purpose-specific substream: substream(seed, tag) =
/// scramble(seed XOR scramble(tag)).  Tags used by the benchmark harness:
/// 1 = problem generation, 2 = stepsize strategy draws, 3 = starting point.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t tag) {
  return SplitMix64::scramble(seed ^ SplitMix64::scramble(tag));
}

}  // namespace specgrad
