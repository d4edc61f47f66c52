#include "esn/config.hpp"

#include <cmath>

#include "esn/errors.hpp"
#include "esn/text.hpp"

namespace esn {

void EsnConfig::validate() const {
  if (reservoir_size < 1) throw EsnError("config: reservoir_size must be >= 1");
  if (!(spectral_radius > 0.0) || !std::isfinite(spectral_radius)) {
    throw EsnError("config: spectral_radius must be positive, got " +
                   fmt_double(spectral_radius));
  }
  if (!(ridge_beta >= 0.0) || !std::isfinite(ridge_beta)) {
    throw EsnError("config: ridge_beta must be non-negative, got " + fmt_double(ridge_beta));
  }
  if (!(leak_rate > 0.0) || !(leak_rate <= 1.0)) {
    throw EsnError("config: leak_rate must be in (0, 1], got " + fmt_double(leak_rate));
  }
  if (!(input_scaling > 0.0) || !std::isfinite(input_scaling)) {
    throw EsnError("config: input_scaling must be positive, got " +
                   fmt_double(input_scaling));
  }
  if (!(connectivity > 0.0) || !(connectivity <= 1.0)) {
    throw EsnError("config: connectivity must be in (0, 1], got " +
                   fmt_double(connectivity));
  }
}

}  // namespace esn
