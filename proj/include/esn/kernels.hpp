#pragma once

#include <cstddef>
#include <span>

#include "esn/matrix.hpp"

namespace esn {

/// Execution policy for the data-parallel kernels. Serial and parallel
/// variants share the per-element inner loops, so results are bit-identical;
/// the serial path is the reference the tests compare against.
enum class Exec { kSerial, kParallel };

namespace kernels {

// y = A * x
void matvec_serial(const Matrix& a, std::span<const double> x, std::span<double> y);
void matvec_omp(const Matrix& a, std::span<const double> x, std::span<double> y);
void matvec(const Matrix& a, std::span<const double> x, std::span<double> y, Exec exec);

// out = (1 - leak) * x + leak * tanh(w_rec * x + w_in * [u; 1])
// w_in's last column is the bias weight.
void leaky_step_serial(const Matrix& w_rec, const Matrix& w_in, double leak,
                       std::span<const double> x, std::span<const double> u,
                       std::span<double> out);
void leaky_step_omp(const Matrix& w_rec, const Matrix& w_in, double leak,
                    std::span<const double> x, std::span<const double> u,
                    std::span<double> out);
void leaky_step(const Matrix& w_rec, const Matrix& w_in, double leak,
                std::span<const double> x, std::span<const double> u,
                std::span<double> out, Exec exec);

// Trailing moving average per column; partial windows at the start average
// over the available prefix. out must have in's shape.
void moving_average_serial(const Matrix& in, std::size_t window, Matrix& out);
void moving_average_omp(const Matrix& in, std::size_t window, Matrix& out);
void moving_average(const Matrix& in, std::size_t window, Matrix& out, Exec exec);

// g = X^T X (upper triangle computed, mirrored)
void gram_serial(const Matrix& x, Matrix& g);
void gram_omp(const Matrix& x, Matrix& g);
void gram(const Matrix& x, Matrix& g, Exec exec);

// b = X^T Y
void xty_serial(const Matrix& x, const Matrix& y, Matrix& b);
void xty_omp(const Matrix& x, const Matrix& y, Matrix& b);
void xty(const Matrix& x, const Matrix& y, Matrix& b, Exec exec);

}  // namespace kernels
}  // namespace esn
