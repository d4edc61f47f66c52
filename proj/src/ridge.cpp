#include "esn/ridge.hpp"

#include <cmath>
#include <string>

#include "esn/errors.hpp"

namespace esn {

namespace {

// In-place lower Cholesky of a symmetric matrix. Pivots are checked against
// a relative floor: exact rank deficiency leaves pivots at rounding level, so
// a bare > 0 test would let singular systems through.
void cholesky_inplace(Matrix& a) {
  const std::size_t d = a.rows();
  double scale = 0.0;
  for (std::size_t j = 0; j < d; ++j) scale = std::max(scale, a(j, j));
  const double floor = scale * static_cast<double>(d) * 2.3e-16;
  for (std::size_t j = 0; j < d; ++j) {
    double pivot = a(j, j);
    for (std::size_t k = 0; k < j; ++k) pivot -= a(j, k) * a(j, k);
    if (!(pivot > floor)) {
      throw EsnError("fit_ridge: singular system (column " + std::to_string(j) +
                     "); X is rank-deficient — use beta > 0");
    }
    const double diag = std::sqrt(pivot);
    a(j, j) = diag;
    for (std::size_t i = j + 1; i < d; ++i) {
      double acc = a(i, j);
      for (std::size_t k = 0; k < j; ++k) acc -= a(i, k) * a(j, k);
      a(i, j) = acc / diag;
    }
  }
}

// Solves L L^T z = b in place using the lower factor.
void cholesky_solve(const Matrix& l, Vector& b) {
  const std::size_t d = l.rows();
  for (std::size_t i = 0; i < d; ++i) {
    double acc = b[i];
    for (std::size_t k = 0; k < i; ++k) acc -= l(i, k) * b[k];
    b[i] = acc / l(i, i);
  }
  for (std::size_t ii = d; ii > 0; --ii) {
    const std::size_t i = ii - 1;
    double acc = b[i];
    for (std::size_t k = i + 1; k < d; ++k) acc -= l(k, i) * b[k];
    b[i] = acc / l(i, i);
  }
}

}  // namespace

ReadoutWeights fit_ridge(const Matrix& embeddings, const Matrix& targets, double beta,
                         Exec exec) {
  const std::size_t n = embeddings.rows();
  const std::size_t d = embeddings.cols();
  const std::size_t m = targets.cols();
  if (n < 1) throw EsnError("fit_ridge: need at least one row");
  if (targets.rows() != n) {
    throw EsnError("fit_ridge: embeddings have " + std::to_string(n) +
                   " rows, targets have " + std::to_string(targets.rows()));
  }
  if (!(beta >= 0.0)) throw EsnError("fit_ridge: beta must be non-negative");
  for (std::size_t i = 0; i < embeddings.size(); ++i) {
    if (!std::isfinite(embeddings.data()[i])) {
      throw EsnError("fit_ridge: non-finite embedding entry");
    }
  }
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (!std::isfinite(targets.data()[i])) {
      throw EsnError("fit_ridge: non-finite target entry");
    }
  }

  Matrix a(d, d);
  kernels::gram(embeddings, a, exec);
  for (std::size_t i = 0; i < d; ++i) a(i, i) += beta;

  Matrix b(d, m);
  kernels::xty(embeddings, targets, b, exec);

  cholesky_inplace(a);

  ReadoutWeights result;
  result.w_out = Matrix(m, d);
  Vector column(d);
  for (std::size_t t = 0; t < m; ++t) {
    for (std::size_t i = 0; i < d; ++i) column[i] = b(i, t);
    cholesky_solve(a, column);
    for (std::size_t i = 0; i < d; ++i) result.w_out(t, i) = column[i];
  }
  return result;
}

Vector predict(const ReadoutWeights& w, const Vector& embedding) {
  if (embedding.size() != w.w_out.cols()) {
    throw EsnError("predict: embedding has " + std::to_string(embedding.size()) +
                   " components, readout expects " + std::to_string(w.w_out.cols()));
  }
  Vector out(w.w_out.rows());
  kernels::matvec_serial(w.w_out, embedding, out);
  return out;
}

}  // namespace esn
