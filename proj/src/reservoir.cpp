#include "esn/reservoir.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstring>

#include "esn/errors.hpp"
#include "esn/kernels.hpp"
#include "esn/rng.hpp"
#include "esn/text.hpp"

namespace esn {

namespace {

constexpr std::uint64_t kPowerStartSeed = 0x9E3779B97F4A7C15ULL;
constexpr double kDegenerateRadius = 1e-12;

// build_reservoir's internal power-iteration budget before the dense fallback
constexpr double kBuildTol = 1e-13;
constexpr std::size_t kBuildMaxIter = 20000;

double norm2(const Vector& v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc);
}

double dot(const Vector& a, const Vector& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

void scale_into(const Vector& v, double s, Vector& out) {
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * s;
}

}  // namespace

double estimate_spectral_radius(const Matrix& m, double tol, std::size_t max_iter) {
  if (m.rows() != m.cols()) throw EsnError("estimate_spectral_radius: matrix not square");
  if (m.rows() == 0) throw EsnError("estimate_spectral_radius: empty matrix");
  if (!(tol > 0.0)) throw EsnError("estimate_spectral_radius: tol must be positive");
  if (max_iter == 0) throw EsnError("estimate_spectral_radius: max_iter must be positive");

  const std::size_t n = m.rows();

  RandomStream rs(kPowerStartSeed);
  Vector v0(n), v1(n), v2(n), w(n);
  for (double& x : v0) x = rs.next_uniform(-1.0, 1.0);
  scale_into(v0, 1.0 / norm2(v0), v0);

  kernels::matvec_serial(m, v0, w);
  double s1 = norm2(w);
  if (s1 == 0.0) return 0.0;  // start vector annihilated: dominant action is zero
  scale_into(w, 1.0 / s1, v1);

  double prev_est = s1;
  std::size_t stable = 0;

  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    kernels::matvec_serial(m, v1, w);
    const double s2 = norm2(w);
    if (s2 == 0.0) return 0.0;
    scale_into(w, 1.0 / s2, v2);

    // Fit s1*s2*v2 = a*(s1*v1) + b*v0 — the order-2 recurrence the iterates
    // satisfy once they live in the dominant invariant subspace. The roots of
    // mu^2 - a*mu - b are the dominant eigenvalue(s); this resolves
    // complex-conjugate pairs the raw norm ratio cannot.
    const double c01 = dot(v1, v0);
    double est;
    if (1.0 - c01 * c01 < 1e-12) {
      est = s2;  // iterates collinear: dominant eigenvalue is real
    } else {
      const double g00 = s1 * s1;
      const double g01 = s1 * c01;
      const double r0 = s1 * s1 * s2 * dot(v1, v2);
      const double r1 = s1 * s2 * dot(v0, v2);
      const double det = g00 - g01 * g01;  // det of [[g00, g01], [g01, 1]]
      const double a = (r0 - g01 * r1) / det;
      const double b = (g00 * r1 - g01 * r0) / det;
      const double disc = a * a + 4.0 * b;
      if (disc >= 0.0) {
        const double root = std::sqrt(disc);
        est = std::max(std::abs(a + root), std::abs(a - root)) / 2.0;
      } else {
        est = std::sqrt(-b);
      }
      if (!std::isfinite(est)) est = s2;
    }

    if (std::abs(est - prev_est) < tol) {
      if (++stable >= 3) return est;
    } else {
      stable = 0;
    }
    prev_est = est;

    v0.swap(v1);
    v1.swap(v2);
    s1 = s2;
  }
  throw NonConvergenceError(
      "estimate_spectral_radius: no convergence after " + std::to_string(max_iter) +
      " iterations (estimate " + fmt_double(prev_est) + "); dense fallback available");
}

double spectral_radius_dense(const Matrix& m) {
  if (m.rows() != m.cols()) throw EsnError("spectral_radius_dense: matrix not square");
  const auto n = static_cast<Eigen::Index>(m.rows());
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      a(r, c) = m(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
    }
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw EsnError("spectral_radius_dense: eigensolver failed");
  }
  double radius = 0.0;
  const auto& ev = solver.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) radius = std::max(radius, std::abs(ev(i)));
  return radius;
}

Reservoir build_reservoir(const EsnConfig& config, std::size_t input_dim) {
  config.validate();
  if (input_dim < 1) throw EsnError("build_reservoir: input_dim must be >= 1");

  const std::size_t n = config.reservoir_size;
  Reservoir r;
  r.input_dim = input_dim;
  r.config = config;
  r.w_rec = Matrix(n, n);
  r.w_in = Matrix(n, input_dim + 1);

  RandomStream rs(config.seed);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (rs.next_unit() < config.connectivity) {
        r.w_rec(i, j) = rs.next_uniform(-1.0, 1.0);
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= input_dim; ++j) {
      r.w_in(i, j) = rs.next_uniform(-config.input_scaling, config.input_scaling);
    }
  }

  double raw_radius;
  try {
    raw_radius = estimate_spectral_radius(r.w_rec, kBuildTol, kBuildMaxIter);
  } catch (const NonConvergenceError&) {
    raw_radius = spectral_radius_dense(r.w_rec);
  }
  if (raw_radius < kDegenerateRadius) {
    throw EsnError("build_reservoir: degenerate draw, raw spectral radius " +
                   fmt_double(raw_radius) + " is below 1e-12 and cannot be rescaled "
                   "(seed " + std::to_string(config.seed) + ", connectivity " +
                   fmt_double(config.connectivity) + ")");
  }

  const double scale = config.spectral_radius / raw_radius;
  for (std::size_t i = 0; i < r.w_rec.size(); ++i) r.w_rec.data()[i] *= scale;
  return r;
}

std::uint64_t reservoir_checksum(const Reservoir& r) {
  std::uint64_t h = 14695981039346656037ULL;
  auto mix = [&h](const Matrix& m) {
    const auto* bytes = reinterpret_cast<const unsigned char*>(m.data());
    const std::size_t count = m.size() * sizeof(double);
    for (std::size_t i = 0; i < count; ++i) {
      h ^= bytes[i];
      h *= 1099511628211ULL;
    }
  };
  mix(r.w_in);
  mix(r.w_rec);
  return h;
}

}  // namespace esn
