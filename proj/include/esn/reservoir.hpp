#pragma once

#include <cstddef>
#include <cstdint>

#include "esn/config.hpp"
#include "esn/matrix.hpp"

namespace esn {

/// Fixed random reservoir. Immutable after construction and safe to share
/// across threads; identical (config, input_dim) reproduces bit-identical
/// matrices. Draw order is pinned: w_rec first (row-major, mask then value),
/// then w_in (row-major), all from one mt19937_64 stream seeded with
/// config.seed.
struct Reservoir {
  Matrix w_in;   // reservoir_size x (input_dim + 1); last column is the bias
  Matrix w_rec;  // reservoir_size x reservoir_size
  std::size_t input_dim = 0;
  EsnConfig config;

  std::size_t size() const { return w_rec.rows(); }
  std::size_t embedding_dim() const { return size() + input_dim + 1; }
};

/// Largest eigenvalue magnitude by power iteration from a fixed-seed start
/// vector. Converged when successive estimates differ by less than tol (held
/// over a short window). The estimate comes from a two-term recurrence fit
/// over the last three iterates, which also resolves complex-conjugate
/// dominant pairs; spectra with three or more near-tied dominant moduli do
/// not settle and raise NonConvergenceError after max_iter — callers may
/// fall back to spectral_radius_dense.
double estimate_spectral_radius(const Matrix& m, double tol, std::size_t max_iter);

/// Exact dense spectral radius via a full eigendecomposition. O(n^3); meant
/// for matrices up to a few thousand rows.
double spectral_radius_dense(const Matrix& m);

/// Draws the sparse-uniform recurrent matrix and the uniform input matrix,
/// then rescales w_rec so its spectral radius equals config.spectral_radius.
/// Throws EsnError if the raw draw's spectral radius is below 1e-12 (the
/// draw is degenerate and cannot be rescaled; it is reported, not redrawn).
Reservoir build_reservoir(const EsnConfig& config, std::size_t input_dim);

/// FNV-1a over the raw bytes of w_in then w_rec; model files store it so a
/// rebuilt reservoir can be verified against the one that was trained.
std::uint64_t reservoir_checksum(const Reservoir& r);

}  // namespace esn
