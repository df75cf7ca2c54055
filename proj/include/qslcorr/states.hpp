#pragma once

// Two-qubit states. Per qubit |g> -> |0>, |e> -> |1>; the two-qubit flat index
// is 2 * (qubit 1) + (qubit 2), so |g1 e2> = |01> has index 1.

#include "qslcorr/linalg.hpp"

namespace qslcorr::states {

using linalg::Complex;
using linalg::Matrix4;
using linalg::Matrix16;
using linalg::Vector4;
using linalg::Vector16;

/// A validated two-qubit density matrix: Hermitian within 1e-10, unit trace
/// within 1e-10 and no eigenvalue below -1e-8.
class DensityMatrix {
 public:
  static constexpr double kHermitianTolerance = 1e-10;
  static constexpr double kTraceTolerance = 1e-10;
  static constexpr double kMinEigenvalue = -1e-8;

  /// Throws NonHermitian, InvalidState (trace) or NotPSD.
  explicit DensityMatrix(const Matrix4& m);

  static DensityMatrix pure(const Vector4& psi);
  static DensityMatrix maximally_mixed();

  const Matrix4& matrix() const noexcept { return m_; }
  Complex operator()(int row, int col) const { return m_(row, col); }
  double purity() const;

 private:
  Matrix4 m_;
};

/// Spectral purification on system (x) ancilla: sum_i sqrt(lambda_i) |e_i>|i>
/// with eigenpairs in descending order and the computational ancilla basis.
class PurifiedState {
 public:
  static constexpr double kNormTolerance = 1e-12;

  /// Throws InvalidState unless `amplitudes` has unit norm.
  explicit PurifiedState(const Vector16& amplitudes);

  const Vector16& amplitudes() const noexcept { return v_; }
  Matrix16 projector() const { return v_ * v_.adjoint(); }
  /// Partial trace of the projector over the ancilla.
  DensityMatrix reduced() const;

 private:
  Vector16 v_;
};

/// Correlation coefficients c_i = Tr(rho sigma_i (x) sigma_i) of a
/// Bell-diagonal state 1/4 (I + sum_i c_i sigma_i (x) sigma_i).
struct BellDiagonalCoeffs {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
};

/// |psi+> = (|01> + |10>) / sqrt(2).
Vector4 psi_plus_vector();
DensityMatrix bell_psi_plus();
/// |g1 e2> = |01>.
DensityMatrix state_g1e2();
DensityMatrix product_state(const linalg::Vector<2>& a, const linalg::Vector<2>& b);

/// 1/2 (|01><01| + |10><10|): the separable state closest to the
/// dephased Bell state for every t.
DensityMatrix separable_oun_sigma();

enum class InitialState { BellPsiPlus, G1E2 };

/// The diagonal separable families used for the collective model:
///   G1E2:        x|00><00| + (1-x)|11><11|
///   BellPsiPlus: x|01><01| + (1-x)|11><11|
/// Throws BadMixingParameter unless x is in [0, 1].
DensityMatrix separable_collective_sigma(InitialState kind, double x);

DensityMatrix initial_state(InitialState kind);

PurifiedState purify(const DensityMatrix& rho);

/// Largest deviation from the Bell-diagonal pattern (structural zeros,
/// real X entries, rho_00 = rho_33 and rho_11 = rho_22).
double bell_diagonal_deviation(const DensityMatrix& rho);
bool is_bell_diagonal(const DensityMatrix& rho, double tolerance = 1e-8);

/// Throws NotBellDiagonal when the deviation exceeds 1e-8.
BellDiagonalCoeffs bell_coeffs(const DensityMatrix& rho);

/// 1/4 (I + sum c_i sigma_i (x) sigma_i); throws InvalidState if the
/// coefficients do not give a PSD state.
DensityMatrix bell_diagonal_state(const BellDiagonalCoeffs& c);

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace qslcorr::states
