#include "qslcorr/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qslcorr/error.hpp"

namespace qslcorr::dynamics {

using linalg::Complex;
using linalg::Matrix4;

namespace {

constexpr double kDivergenceFloor = -1e-4;

struct Cleaned {
  Matrix4 rho;
  double trace_drift = 0.0;
  double clamped = 0.0;
};

Cleaned clean(const Matrix4& raw) {
  Cleaned out;
  out.trace_drift = std::abs(raw.trace().real() - 1.0);
  const Matrix4 h = linalg::hermitian_part<4>(raw);
  const auto eig = linalg::hermitian_eig<4>(h);
  const double lowest = eig.eigenvalues(3);
  if (lowest < kDivergenceFloor) {
    throw Error(ErrorCode::IntegrationDiverged,
                "state eigenvalue " + std::to_string(lowest) + " below -1e-4");
  }
  Matrix4 rho = h;
  if (lowest < 0.0) {
    out.clamped = -lowest;
    linalg::RealVector<4> kept = eig.eigenvalues.cwiseMax(0.0);
    rho = eig.eigenvectors * kept.cast<Complex>().asDiagonal() * eig.eigenvectors.adjoint();
  }
  out.rho = rho / rho.trace().real();
  return out;
}

void check_grid(std::span<const double> values, std::span<const double> times) {
  if (values.size() != times.size()) {
    throw Error(ErrorCode::GridMismatch, std::to_string(values.size()) + " values on " +
                                             std::to_string(times.size()) + " nodes");
  }
  if (times.size() < 2) throw Error(ErrorCode::GridMismatch, "need at least two nodes");
  const double h = times[1] - times[0];
  if (!(h > 0.0)) throw Error(ErrorCode::GridMismatch, "times must increase");
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (std::abs((times[k] - times[k - 1]) - h) > 1e-12) {
      throw Error(ErrorCode::GridMismatch, "grid is not uniform at node " + std::to_string(k));
    }
  }
}

}  // namespace

int default_steps(double tau) {
  const int n = static_cast<int>(std::ceil(2000.0 * tau - 1e-9));
  return std::max(10, n + (n % 2));
}

Trajectory evolve(const Generator& gen, const DensityMatrix& rho0, double tau, int steps) {
  if (steps < 10 || steps % 2 != 0) {
    throw Error(ErrorCode::BadSteps,
                "steps must be even and >= 10, got " + std::to_string(steps));
  }
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw Error(ErrorCode::BadParams, "tau must be finite and > 0");
  }
  const double h = tau / steps;
  Trajectory traj;
  traj.times.reserve(steps + 1);
  traj.states.reserve(steps + 1);
  traj.times.push_back(0.0);
  traj.states.push_back(rho0);

  Matrix4 rho = rho0.matrix();
  for (int k = 0; k < steps; ++k) {
    const double t = k * h;
    const Matrix4 k1 = gen.apply(t, rho);
    const Matrix4 k2 = gen.apply(t + 0.5 * h, rho + 0.5 * h * k1);
    const Matrix4 k3 = gen.apply(t + 0.5 * h, rho + 0.5 * h * k2);
    const Matrix4 k4 = gen.apply(t + h, rho + h * k3);
    const Cleaned c = clean(rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));

    auto& d = traj.diagnostics;
    d.max_trace_drift = std::max(d.max_trace_drift, c.trace_drift);
    if (c.clamped > 0.0) {
      ++d.clamped_steps;
      d.max_clamped_eigenvalue = std::max(d.max_clamped_eigenvalue, c.clamped);
    }
    rho = c.rho;
    traj.times.push_back((k + 1) * h);
    traj.states.emplace_back(rho);
  }
  return traj;
}

double integrate_nodes(std::span<const double> f, double h, std::size_t first,
                       std::size_t last) {
  const std::size_t n = last - first;
  if (n == 0) return 0.0;
  if (n == 1) return 0.5 * h * (f[first] + f[last]);
  const std::size_t simpson_end = (n % 2 == 0) ? last : last - 3;
  double sum = 0.0;
  for (std::size_t k = first; k + 2 <= simpson_end; k += 2) {
    sum += (h / 3.0) * (f[k] + 4.0 * f[k + 1] + f[k + 2]);
  }
  if (n % 2 != 0) {
    const std::size_t k = last - 3;
    sum += (3.0 * h / 8.0) * (f[k] + 3.0 * f[k + 1] + 3.0 * f[k + 2] + f[k + 3]);
  }
  return sum;
}

double time_average(std::span<const double> values, std::span<const double> times) {
  check_grid(values, times);
  const double span = times.back() - times.front();
  return integrate_nodes(values, times[1] - times[0], 0, times.size() - 1) / span;
}

std::vector<double> prefix_time_averages(std::span<const double> values,
                                         std::span<const double> times) {
  check_grid(values, times);
  const double h = times[1] - times[0];
  std::vector<double> out(values.size());
  out[0] = values[0];
  // Even prefixes extend the running Simpson sum; odd ones close with 3/8.
  double even_sum = 0.0;
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (k % 2 == 0) {
      even_sum += (h / 3.0) * (values[k - 2] + 4.0 * values[k - 1] + values[k]);
      out[k] = even_sum;
    } else if (k == 1) {
      out[k] = 0.5 * h * (values[0] + values[1]);
    } else {
      // even_sum currently covers [0, t_{k-1}]; rebuild from t_{k-3}.
      const double base = even_sum - (h / 3.0) * (values[k - 3] + 4.0 * values[k - 2] + values[k - 1]);
      out[k] = base + (3.0 * h / 8.0) *
                          (values[k - 3] + 3.0 * values[k - 2] + 3.0 * values[k - 1] + values[k]);
    }
    out[k] /= times[k] - times[0];
  }
  return out;
}

}  // namespace qslcorr::dynamics
