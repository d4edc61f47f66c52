#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace esn {

/// Deterministic random stream. mt19937_64 output is pinned by the standard;
/// the value mappings live here because std::uniform_real_distribution,
/// std::normal_distribution and std::shuffle are implementation-defined and
/// would break bit-reproducibility across toolchains.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1), 53-bit resolution.
  double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  /// Uniform integer in [0, n). Modulo mapping; bias is irrelevant here and
  /// the result is pinned.
  std::uint64_t next_below(std::uint64_t n) { return engine_() % n; }

  /// Standard normal via Box-Muller.
  double next_gaussian() {
    double u1 = 1.0 - next_unit();  // (0, 1], keeps log() finite
    double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }

 private:
  static constexpr double kTwoPi = 6.283185307179586476925286766559;
  std::mt19937_64 engine_;
};

}  // namespace esn
