#pragma once

#include <cstddef>

#include "esn/kernels.hpp"
#include "esn/matrix.hpp"
#include "esn/reservoir.hpp"

namespace esn {

/// Post-washout reservoir states for one input sequence. From the zero state
/// every component lies in (-1, 1); drives beyond ~19 saturate IEEE tanh to
/// exactly +-1, so the closed interval is the hard bound.
struct StateSequence {
  Matrix states;  // harvested frames x reservoir_size
  std::size_t washout_applied = 0;
};

/// One leaky-integrator update:
///   x' = (1 - leak) * x + leak * tanh(w_rec * x + w_in * [u; 1])
Vector step(const Reservoir& r, const Vector& x, const Vector& u);

/// Drives the reservoir frame by frame from the zero state and harvests the
/// states after the first `washout` frames. Requires frames > washout.
StateSequence run_sequence(const Reservoir& r, const Matrix& series, std::size_t washout,
                           Exec exec = Exec::kParallel);

/// General form with an explicit initial state (run_sequence is the zero-state
/// case; this one exists for convergence studies).
StateSequence run_sequence_from(const Reservoir& r, const Matrix& series,
                                std::size_t washout, const Vector& initial_state,
                                Exec exec = Exec::kParallel);

/// [mean over harvested states; u_mean; 1] — the fixed-length embedding a
/// variable-length utterance is reduced to. u_mean is the caller's per-channel
/// mean of the post-washout input frames.
Vector mean_state_embedding(const StateSequence& s, const Vector& u_mean);

}  // namespace esn
