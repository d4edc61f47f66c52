#include "esn/metrics.hpp"

#include <algorithm>
#include <string>

#include "esn/errors.hpp"

namespace esn {

namespace {

bool is_constant(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

double mean_of(std::span<const double> v) {
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc / static_cast<double>(v.size());
}

}  // namespace

double ccc(std::span<const double> pred, std::span<const double> truth) {
  if (pred.size() != truth.size()) {
    throw EsnError("ccc: length mismatch, " + std::to_string(pred.size()) + " vs " +
                   std::to_string(truth.size()));
  }
  if (pred.size() < 2) throw EsnError("ccc: need at least 2 samples");

  // Pinned degenerate rules: two identical constant vectors agree perfectly
  // (1.0); two different constants share no variation to agree on (0.0).
  if (is_constant(pred) && is_constant(truth)) {
    return pred.front() == truth.front() ? 1.0 : 0.0;
  }

  const std::size_t n = pred.size();
  const double mean_p = mean_of(pred);
  const double mean_t = mean_of(truth);
  double var_p = 0.0, var_t = 0.0, cov = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dp = pred[i] - mean_p;
    const double dt = truth[i] - mean_t;
    var_p += dp * dp;
    var_t += dt * dt;
    cov += dp * dt;
  }
  var_p /= static_cast<double>(n);
  var_t /= static_cast<double>(n);
  cov /= static_cast<double>(n);

  const double loc = mean_p - mean_t;
  return 2.0 * cov / (var_p + var_t + loc * loc);
}

double mse(std::span<const double> pred, std::span<const double> truth) {
  if (pred.size() != truth.size()) {
    throw EsnError("mse: length mismatch, " + std::to_string(pred.size()) + " vs " +
                   std::to_string(truth.size()));
  }
  if (pred.empty()) throw EsnError("mse: need at least 1 sample");
  double acc = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double d = pred[i] - truth[i];
    acc += d * d;
  }
  return acc / static_cast<double>(pred.size());
}

}  // namespace esn
