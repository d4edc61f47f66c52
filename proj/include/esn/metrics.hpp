#pragma once

#include <span>

namespace esn {

struct MetricPair {
  double ccc = 0.0;
  double mse = 0.0;
};

/// Lin's concordance correlation coefficient with population (1/N) moments:
///   2*s_xy / (s_x^2 + s_y^2 + (mean_x - mean_y)^2)
/// Pinned degenerate rules: both vectors constant and equal -> 1.0; both
/// constant and unequal -> 0.0 (constancy is bitwise). N >= 2 required.
double ccc(std::span<const double> pred, std::span<const double> truth);

/// (1/N) * sum((pred - truth)^2). N >= 1, equal lengths.
double mse(std::span<const double> pred, std::span<const double> truth);

}  // namespace esn
