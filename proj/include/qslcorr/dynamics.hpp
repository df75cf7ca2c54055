#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qslcorr/channels.hpp"
#include "qslcorr/states.hpp"

namespace qslcorr::dynamics {

using channels::Generator;
using states::DensityMatrix;

/// What the per-step clean-up had to correct over a whole run.
struct IntegrationDiagnostics {
  double max_trace_drift = 0.0;        // |Tr rho - 1| before renormalization
  double max_clamped_eigenvalue = 0.0; // largest |lambda| of a zeroed negative eigenvalue
  std::size_t clamped_steps = 0;
};

/// States of rho' = L_t rho on a uniform grid t_k = k tau / steps.
struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  IntegrationDiagnostics diagnostics;

  std::size_t size() const { return times.size(); }
  double tau() const { return times.back(); }
  double step() const { return times[1] - times[0]; }
};

/// 2000 steps per unit time, rounded up to an even count, at least 10.
int default_steps(double tau);

/// Classical RK4 with a fixed step. After every step the state is
/// Hermitized, negative eigenvalues are zeroed and the trace renormalized.
///
/// Throws BadSteps unless steps >= 10 and even, BadParams for a bad tau, and
/// IntegrationDiverged if an eigenvalue drops below -1e-4 before clamping.
Trajectory evolve(const Generator& gen, const DensityMatrix& rho0, double tau, int steps);

/// (1/tau) * integral of the sampled function over the whole grid using
/// composite Simpson (3/8 rule on the last three intervals for an odd
/// interval count, trapezoid for a single interval).
///
/// Throws GridMismatch for length mismatch, fewer than two nodes or a
/// non-uniform grid.
double time_average(std::span<const double> values, std::span<const double> times);

/// Integral over nodes [first, last] of a uniform grid with spacing h, same
/// rule as time_average. Returns 0 when first == last.
double integrate_nodes(std::span<const double> values, double h, std::size_t first,
                       std::size_t last);

/// Average over [t_0, t_k] for every k. Entry 0 is values[0], the limit of the
/// average as the interval shrinks.
std::vector<double> prefix_time_averages(std::span<const double> values,
                                         std::span<const double> times);

}  // namespace qslcorr::dynamics
