#pragma once

#include <cstddef>

#include "esn/kernels.hpp"
#include "esn/matrix.hpp"

namespace esn {

/// Trained linear readout: output = w_out * embedding.
struct ReadoutWeights {
  Matrix w_out;  // output_dim x embedding_dim

  std::size_t output_dim() const { return w_out.rows(); }
  std::size_t input_dim() const { return w_out.cols(); }
};

/// Closed-form ridge solution W = Y^T X (X^T X + beta I)^{-1}, computed via a
/// Cholesky solve of the regularized normal equations (no explicit inverse).
/// All columns are regularized, bias included. Throws EsnError when the
/// system is singular (beta = 0 with rank-deficient X).
ReadoutWeights fit_ridge(const Matrix& embeddings, const Matrix& targets, double beta,
                         Exec exec = Exec::kParallel);

Vector predict(const ReadoutWeights& w, const Vector& embedding);

}  // namespace esn
