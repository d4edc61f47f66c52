#include "esn/sequence.hpp"

#include <algorithm>
#include <string>

#include "esn/errors.hpp"

namespace esn {

namespace {

void check_input_dim(const Reservoir& r, std::size_t dim, const char* where) {
  if (dim != r.input_dim) {
    throw EsnError(std::string(where) + ": input has " + std::to_string(dim) +
                   " channels, reservoir expects " + std::to_string(r.input_dim));
  }
}

}  // namespace

Vector step(const Reservoir& r, const Vector& x, const Vector& u) {
  if (x.size() != r.size()) {
    throw EsnError("step: state has " + std::to_string(x.size()) +
                   " components, reservoir has " + std::to_string(r.size()));
  }
  check_input_dim(r, u.size(), "step");
  Vector out(r.size());
  kernels::leaky_step_serial(r.w_rec, r.w_in, r.config.leak_rate, x, u, out);
  return out;
}

StateSequence run_sequence_from(const Reservoir& r, const Matrix& series,
                                std::size_t washout, const Vector& initial_state,
                                Exec exec) {
  check_input_dim(r, series.cols(), "run_sequence");
  if (initial_state.size() != r.size()) {
    throw EsnError("run_sequence: initial state has " +
                   std::to_string(initial_state.size()) + " components, reservoir has " +
                   std::to_string(r.size()));
  }
  const std::size_t frames = series.rows();
  if (frames <= washout) {
    throw EsnError("run_sequence: utterance too short, " + std::to_string(frames) +
                   " frame(s) with washout " + std::to_string(washout) +
                   "; clamp washout to at most frames - 1");
  }

  StateSequence out;
  out.washout_applied = washout;
  out.states = Matrix(frames - washout, r.size());

  Vector x = initial_state;
  Vector next(r.size());
  for (std::size_t t = 0; t < frames; ++t) {
    kernels::leaky_step(r.w_rec, r.w_in, r.config.leak_rate, x, series.row(t), next, exec);
    x.swap(next);
    if (t >= washout) {
      std::copy(x.begin(), x.end(), out.states.row(t - washout).begin());
    }
  }
  return out;
}

StateSequence run_sequence(const Reservoir& r, const Matrix& series, std::size_t washout,
                           Exec exec) {
  return run_sequence_from(r, series, washout, Vector(r.size(), 0.0), exec);
}

Vector mean_state_embedding(const StateSequence& s, const Vector& u_mean) {
  if (s.states.rows() == 0) throw EsnError("mean_state_embedding: empty state sequence");
  const std::size_t n = s.states.cols();
  Vector embedding(n + u_mean.size() + 1);
  for (std::size_t c = 0; c < n; ++c) {
    double acc = 0.0;
    for (std::size_t t = 0; t < s.states.rows(); ++t) acc += s.states(t, c);
    embedding[c] = acc / static_cast<double>(s.states.rows());
  }
  std::copy(u_mean.begin(), u_mean.end(), embedding.begin() + static_cast<std::ptrdiff_t>(n));
  embedding.back() = 1.0;
  return embedding;
}

}  // namespace esn
