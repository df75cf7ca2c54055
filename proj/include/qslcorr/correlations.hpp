#pragma once

#include <cmath>

#include "qslcorr/states.hpp"

namespace qslcorr::correlations {

using states::BellDiagonalCoeffs;
using states::DensityMatrix;

/// 1 - 1/sqrt(2): the Bures entanglement and discord of a Bell state.
inline const double kMaxBuresMeasure = 1.0 - 1.0 / std::sqrt(2.0);

/// Wootters concurrence max{0, k1 - k2 - k3 - k4}, where k_i are the
/// eigenvalues of sqrt(sqrt(rho) rho~ sqrt(rho)) in descending order and
/// rho~ = (Y (x) Y) rho* (Y (x) Y).
///
/// The k_i are computed as singular values of sqrt(rho) sqrt(rho~); this keeps
/// absolute precision when some k_i vanish.
///
/// X states (nonzero entries only on the diagonal and anti-diagonal, within
/// kXStateTolerance) use the closed form instead: near C = 1 the spectral
/// route loses sqrt(eps) in sqrt(1 - C^2), the closed form loses nothing.
double concurrence(const DensityMatrix& rho);

inline constexpr double kXStateTolerance = 1e-15;

/// 2 max(0, |rho_12| - sqrt(rho_00 rho_33), |rho_03| - sqrt(rho_11 rho_22)),
/// exact for X states only.
double x_state_concurrence(const DensityMatrix& rho);

bool is_x_state(const DensityMatrix& rho, double tolerance = kXStateTolerance);

/// The four k_i of concurrence(), descending.
linalg::RealVector<4> spin_flip_spectrum(const DensityMatrix& rho);

/// sqrt of the eigenvalues of rho * rho~ (non-Hermitian route). Used only as
/// an independent check; it loses precision when rho * rho~ is defective.
linalg::RealVector<4> spin_flip_spectrum_nonhermitian(const DensityMatrix& rho);

/// Maximal fidelity with a separable state, 1/2 (1 + sqrt(1 - C^2)).
double separable_fidelity_from_concurrence(double c);

/// E = 1 - sqrt(F_P) with F_P from the concurrence.
double bures_entanglement(double c);

/// b_max for a Bell-diagonal state: half the largest of the three cyclic
/// sums sqrt((1+c_i)^2 - (c_j-c_k)^2) + sqrt((1-c_i)^2 - (c_j+c_k)^2).
/// Square-root arguments down to -1e-12 are clamped to zero.
double b_max(const BellDiagonalCoeffs& c);

/// Bures discord of a Bell-diagonal state, 1 - sqrt((1 + b_max) / 2).
double bures_discord_bell_diagonal(const BellDiagonalCoeffs& c);

enum class Direction { Decay, Creation };

/// |initial - final| of a correlation measure. `change` is never negative;
/// `direction` is Decay iff initial >= final.
struct CorrelationAmount {
  double initial = 0.0;
  double final = 0.0;
  double change = 0.0;
  Direction direction = Direction::Decay;
};

/// Both values must lie in [0, 1 - 1/sqrt(2)] (+1e-9); throws DomainError.
CorrelationAmount correlation_change(double initial, double final);

}  // namespace qslcorr::correlations
