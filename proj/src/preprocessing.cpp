#include "esn/preprocessing.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "esn/errors.hpp"

namespace esn {

namespace {

void check_channels(const UtteranceSeries& s, const char* where) {
  if (s.values.cols() != kNumChannels) {
    throw EsnError(std::string(where) + ": utterance '" + s.id + "' has " +
                   std::to_string(s.values.cols()) + " channels, expected " +
                   std::to_string(kNumChannels));
  }
}

}  // namespace

NormalizationModel fit_normalization(const std::vector<const UtteranceSeries*>& training) {
  if (training.empty()) throw EsnError("fit_normalization: empty training list");
  NormalizationModel m;
  m.per_channel_min.assign(kNumChannels, std::numeric_limits<double>::infinity());
  m.per_channel_max.assign(kNumChannels, -std::numeric_limits<double>::infinity());
  m.fitted_on.reserve(training.size());
  for (const UtteranceSeries* s : training) {
    check_channels(*s, "fit_normalization");
    m.fitted_on.push_back(s->id);
    for (std::size_t t = 0; t < s->values.rows(); ++t) {
      for (std::size_t c = 0; c < kNumChannels; ++c) {
        const double v = s->values(t, c);
        m.per_channel_min[c] = std::min(m.per_channel_min[c], v);
        m.per_channel_max[c] = std::max(m.per_channel_max[c], v);
      }
    }
  }
  return m;
}

NormalizationModel fit_normalization(const std::vector<UtteranceSeries>& training) {
  std::vector<const UtteranceSeries*> ptrs;
  ptrs.reserve(training.size());
  for (const auto& s : training) ptrs.push_back(&s);
  return fit_normalization(ptrs);
}

UtteranceSeries apply_normalization(const NormalizationModel& m, const UtteranceSeries& s) {
  check_channels(s, "apply_normalization");
  UtteranceSeries out;
  out.id = s.id;
  out.values = Matrix(s.values.rows(), kNumChannels);
  for (std::size_t c = 0; c < kNumChannels; ++c) {
    const double lo = m.per_channel_min[c];
    const double hi = m.per_channel_max[c];
    const double range = hi - lo;
    for (std::size_t t = 0; t < s.values.rows(); ++t) {
      if (range == 0.0) {
        out.values(t, c) = 0.0;  // constant channel rule
      } else {
        out.values(t, c) = std::clamp((s.values(t, c) - lo) / range, 0.0, 1.0);
      }
    }
  }
  return out;
}

UtteranceSeries moving_average(const UtteranceSeries& s, const SmoothingConfig& cfg,
                               Exec exec) {
  if (cfg.window < 1) throw EsnError("moving_average: window must be >= 1");
  UtteranceSeries out;
  out.id = s.id;
  out.values = Matrix(s.values.rows(), s.values.cols());
  kernels::moving_average(s.values, cfg.window, out.values, exec);
  return out;
}

}  // namespace esn
