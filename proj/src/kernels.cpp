#include "esn/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace esn::kernels {

// Per-element routines shared by the serial and OMP variants. Keeping the
// accumulation order identical is what makes the two bit-equal.
namespace {

inline double dot_row(const Matrix& a, std::size_t r, std::span<const double> x) {
  const double* row = a.data() + r * a.cols();
  double acc = 0.0;
  for (std::size_t c = 0; c < a.cols(); ++c) acc += row[c] * x[c];
  return acc;
}

inline double step_row(const Matrix& w_rec, const Matrix& w_in, double leak,
                       std::span<const double> x, std::span<const double> u,
                       std::size_t r) {
  const double* rec = w_rec.data() + r * w_rec.cols();
  double acc = 0.0;
  for (std::size_t c = 0; c < w_rec.cols(); ++c) acc += rec[c] * x[c];
  const double* in = w_in.data() + r * w_in.cols();
  for (std::size_t c = 0; c < u.size(); ++c) acc += in[c] * u[c];
  acc += in[u.size()];  // bias column
  return (1.0 - leak) * x[r] + leak * std::tanh(acc);
}

inline double trailing_mean(const Matrix& in, std::size_t t, std::size_t c,
                            std::size_t window) {
  std::size_t lo = t + 1 >= window ? t + 1 - window : 0;
  double acc = 0.0;
  for (std::size_t i = lo; i <= t; ++i) acc += in(i, c);
  return acc / static_cast<double>(t - lo + 1);
}

inline double gram_entry(const Matrix& x, std::size_t i, std::size_t j) {
  double acc = 0.0;
  for (std::size_t n = 0; n < x.rows(); ++n) acc += x(n, i) * x(n, j);
  return acc;
}

inline double xty_entry(const Matrix& x, const Matrix& y, std::size_t i, std::size_t t) {
  double acc = 0.0;
  for (std::size_t n = 0; n < x.rows(); ++n) acc += x(n, i) * y(n, t);
  return acc;
}

}  // namespace

void matvec_serial(const Matrix& a, std::span<const double> x, std::span<double> y) {
  for (std::size_t r = 0; r < a.rows(); ++r) y[r] = dot_row(a, r, x);
}

void matvec_omp(const Matrix& a, std::span<const double> x, std::span<double> y) {
  const std::ptrdiff_t rows = static_cast<std::ptrdiff_t>(a.rows());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    y[static_cast<std::size_t>(r)] = dot_row(a, static_cast<std::size_t>(r), x);
  }
}

void matvec(const Matrix& a, std::span<const double> x, std::span<double> y, Exec exec) {
  exec == Exec::kParallel ? matvec_omp(a, x, y) : matvec_serial(a, x, y);
}

void leaky_step_serial(const Matrix& w_rec, const Matrix& w_in, double leak,
                       std::span<const double> x, std::span<const double> u,
                       std::span<double> out) {
  for (std::size_t r = 0; r < w_rec.rows(); ++r) {
    out[r] = step_row(w_rec, w_in, leak, x, u, r);
  }
}

void leaky_step_omp(const Matrix& w_rec, const Matrix& w_in, double leak,
                    std::span<const double> x, std::span<const double> u,
                    std::span<double> out) {
  const std::ptrdiff_t rows = static_cast<std::ptrdiff_t>(w_rec.rows());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    out[static_cast<std::size_t>(r)] =
        step_row(w_rec, w_in, leak, x, u, static_cast<std::size_t>(r));
  }
}

void leaky_step(const Matrix& w_rec, const Matrix& w_in, double leak,
                std::span<const double> x, std::span<const double> u,
                std::span<double> out, Exec exec) {
  exec == Exec::kParallel ? leaky_step_omp(w_rec, w_in, leak, x, u, out)
                          : leaky_step_serial(w_rec, w_in, leak, x, u, out);
}

void moving_average_serial(const Matrix& in, std::size_t window, Matrix& out) {
  for (std::size_t c = 0; c < in.cols(); ++c) {
    for (std::size_t t = 0; t < in.rows(); ++t) out(t, c) = trailing_mean(in, t, c, window);
  }
}

void moving_average_omp(const Matrix& in, std::size_t window, Matrix& out) {
  const std::ptrdiff_t cols = static_cast<std::ptrdiff_t>(in.cols());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < cols; ++c) {
    for (std::size_t t = 0; t < in.rows(); ++t) {
      out(t, static_cast<std::size_t>(c)) =
          trailing_mean(in, t, static_cast<std::size_t>(c), window);
    }
  }
}

void moving_average(const Matrix& in, std::size_t window, Matrix& out, Exec exec) {
  exec == Exec::kParallel ? moving_average_omp(in, window, out)
                          : moving_average_serial(in, window, out);
}

void gram_serial(const Matrix& x, Matrix& g) {
  const std::size_t d = x.cols();
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      double v = gram_entry(x, i, j);
      g(i, j) = v;
      g(j, i) = v;
    }
  }
}

void gram_omp(const Matrix& x, Matrix& g) {
  const std::ptrdiff_t d = static_cast<std::ptrdiff_t>(x.cols());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < d; ++i) {
    for (std::size_t j = static_cast<std::size_t>(i); j < x.cols(); ++j) {
      double v = gram_entry(x, static_cast<std::size_t>(i), j);
      g(static_cast<std::size_t>(i), j) = v;
      g(j, static_cast<std::size_t>(i)) = v;
    }
  }
}

void gram(const Matrix& x, Matrix& g, Exec exec) {
  exec == Exec::kParallel ? gram_omp(x, g) : gram_serial(x, g);
}

void xty_serial(const Matrix& x, const Matrix& y, Matrix& b) {
  for (std::size_t i = 0; i < x.cols(); ++i) {
    for (std::size_t t = 0; t < y.cols(); ++t) b(i, t) = xty_entry(x, y, i, t);
  }
}

void xty_omp(const Matrix& x, const Matrix& y, Matrix& b) {
  const std::ptrdiff_t d = static_cast<std::ptrdiff_t>(x.cols());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < d; ++i) {
    for (std::size_t t = 0; t < y.cols(); ++t) {
      b(static_cast<std::size_t>(i), t) = xty_entry(x, y, static_cast<std::size_t>(i), t);
    }
  }
}

void xty(const Matrix& x, const Matrix& y, Matrix& b, Exec exec) {
  exec == Exec::kParallel ? xty_omp(x, y, b) : xty_serial(x, y, b);
}

}  // namespace esn::kernels
