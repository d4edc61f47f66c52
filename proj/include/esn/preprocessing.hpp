#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "esn/data_io.hpp"
#include "esn/kernels.hpp"

namespace esn {

struct SmoothingConfig {
  std::size_t window = 15;  // frames; 0.5 s at 30 fps
};

/// Per-channel min/max, fitted on the training split only (the pipeline is
/// responsible for never fitting on evaluation ids — fitted_on records what
/// went in so that can be audited).
struct NormalizationModel {
  Vector per_channel_min;
  Vector per_channel_max;
  std::vector<std::string> fitted_on;
};

/// Pooled min/max over all frames of all training utterances.
NormalizationModel fit_normalization(const std::vector<const UtteranceSeries*>& training);
NormalizationModel fit_normalization(const std::vector<UtteranceSeries>& training);

/// v -> (v - min) / (max - min), clipped to [0, 1]. Constant channels
/// (max == min) map to 0.0.
UtteranceSeries apply_normalization(const NormalizationModel& m, const UtteranceSeries& s);

/// Trailing moving average; partial windows at the start average over the
/// available prefix, so frame count is preserved.
UtteranceSeries moving_average(const UtteranceSeries& s, const SmoothingConfig& cfg,
                               Exec exec = Exec::kParallel);

}  // namespace esn
