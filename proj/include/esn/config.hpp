#pragma once

#include <cstddef>
#include <cstdint>

namespace esn {

/// Reservoir and training hyperparameters with the published defaults
/// (500 internal units, spectral radius 1.5, ridge constant 0.1,
/// leakage 0.85).
struct EsnConfig {
  std::size_t reservoir_size = 500;
  double spectral_radius = 1.5;
  double ridge_beta = 0.1;
  double leak_rate = 0.85;
  double input_scaling = 1.0;
  std::size_t washout = 10;
  std::uint64_t seed = 42;
  double connectivity = 0.1;  // fraction of nonzero recurrent weights

  bool operator==(const EsnConfig&) const = default;

  /// Throws EsnError naming the first violated field.
  void validate() const;
};

}  // namespace esn
