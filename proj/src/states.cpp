#include "qslcorr/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qslcorr/error.hpp"

namespace qslcorr::states {

using linalg::kron;
using linalg::pauli_x;
using linalg::pauli_y;
using linalg::pauli_z;

DensityMatrix::DensityMatrix(const Matrix4& m) : m_(m) {
  const double herm = linalg::hermiticity_error<4>(m);
  if (!(herm <= kHermitianTolerance)) {
    throw Error(ErrorCode::NonHermitian,
                "density matrix deviates from Hermitian by " + std::to_string(herm));
  }
  const double trace = m.trace().real();
  if (!(std::abs(trace - 1.0) <= kTraceTolerance)) {
    throw Error(ErrorCode::InvalidState, "density matrix trace " + std::to_string(trace));
  }
  const double lowest = linalg::hermitian_eigenvalues<4>(m, 1.0)(3);
  if (lowest < kMinEigenvalue) {
    throw Error(ErrorCode::NotPSD,
                "density matrix eigenvalue " + std::to_string(lowest));
  }
}

DensityMatrix DensityMatrix::pure(const Vector4& psi) {
  const Vector4 unit = psi / psi.norm();
  return DensityMatrix(unit * unit.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed() {
  return DensityMatrix(Matrix4::Identity() * 0.25);
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

PurifiedState::PurifiedState(const Vector16& amplitudes) : v_(amplitudes) {
  if (!(std::abs(v_.norm() - 1.0) <= kNormTolerance)) {
    throw Error(ErrorCode::InvalidState,
                "purification norm " + std::to_string(v_.norm()));
  }
}

DensityMatrix PurifiedState::reduced() const {
  return DensityMatrix(linalg::partial_trace(projector(), linalg::Subsystem::System));
}

Vector4 psi_plus_vector() {
  Vector4 v = Vector4::Zero();
  v(1) = v(2) = 1.0 / std::sqrt(2.0);
  return v;
}

DensityMatrix bell_psi_plus() {
  // Exact halves; the outer product of 1/sqrt(2) amplitudes has trace 1 - 2e-16.
  Matrix4 m = Matrix4::Zero();
  m(1, 1) = m(1, 2) = m(2, 1) = m(2, 2) = 0.5;
  return DensityMatrix(m);
}

DensityMatrix state_g1e2() {
  Vector4 v = Vector4::Zero();
  v(1) = 1.0;
  return DensityMatrix::pure(v);
}

DensityMatrix product_state(const linalg::Vector<2>& a, const linalg::Vector<2>& b) {
  Vector4 v;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) v(2 * i + j) = a(i) * b(j);
  return DensityMatrix::pure(v);
}

DensityMatrix separable_oun_sigma() {
  Matrix4 m = Matrix4::Zero();
  m(1, 1) = m(2, 2) = 0.5;
  return DensityMatrix(m);
}

DensityMatrix separable_collective_sigma(InitialState kind, double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorCode::BadMixingParameter,
                "mixing parameter " + std::to_string(x) + " outside [0, 1]");
  }
  Matrix4 m = Matrix4::Zero();
  m(kind == InitialState::G1E2 ? 0 : 1, kind == InitialState::G1E2 ? 0 : 1) = x;
  m(3, 3) = 1.0 - x;
  return DensityMatrix(m);
}

DensityMatrix initial_state(InitialState kind) {
  return kind == InitialState::G1E2 ? state_g1e2() : bell_psi_plus();
}

PurifiedState purify(const DensityMatrix& rho) {
  const auto eig = linalg::hermitian_eig<4>(rho.matrix(), DensityMatrix::kHermitianTolerance);
  Vector16 psi = Vector16::Zero();
  for (int i = 0; i < 4; ++i) {
    const double weight = std::sqrt(std::max(0.0, eig.eigenvalues(i)));
    for (int s = 0; s < 4; ++s) psi(4 * s + i) = weight * eig.eigenvectors(s, i);
  }
  // Clamped eigenvalues and roundoff leave the norm off by O(1e-16).
  psi /= psi.norm();
  return PurifiedState(psi);
}

double bell_diagonal_deviation(const DensityMatrix& rho) {
  const Matrix4& m = rho.matrix();
  double dev = 0.0;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const bool diagonal = r == c;
      const bool anti = r + c == 3;
      if (!diagonal && !anti) dev = std::max(dev, std::abs(m(r, c)));
      if (anti && !diagonal) dev = std::max(dev, std::abs(m(r, c).imag()));
    }
  }
  dev = std::max(dev, std::abs(m(0, 0) - m(3, 3)));
  dev = std::max(dev, std::abs(m(1, 1) - m(2, 2)));
  return dev;
}

bool is_bell_diagonal(const DensityMatrix& rho, double tolerance) {
  return bell_diagonal_deviation(rho) <= tolerance;
}

BellDiagonalCoeffs bell_coeffs(const DensityMatrix& rho) {
  const double dev = bell_diagonal_deviation(rho);
  if (!(dev <= 1e-8)) {
    throw Error(ErrorCode::NotBellDiagonal,
                "state deviates from Bell-diagonal form by " + std::to_string(dev));
  }
  const Matrix4& m = rho.matrix();
  return {(m * kron(pauli_x(), pauli_x())).trace().real(),
          (m * kron(pauli_y(), pauli_y())).trace().real(),
          (m * kron(pauli_z(), pauli_z())).trace().real()};
}

DensityMatrix bell_diagonal_state(const BellDiagonalCoeffs& c) {
  const Matrix4 m = 0.25 * (Matrix4::Identity() + c.c1 * kron(pauli_x(), pauli_x()) +
                            c.c2 * kron(pauli_y(), pauli_y()) +
                            c.c3 * kron(pauli_z(), pauli_z()));
  try {
    return DensityMatrix(m);
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidState,
                "Bell-diagonal coefficients do not define a state: " + e.message());
  }
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return linalg::fidelity(rho.matrix(), sigma.matrix());
}

}  // namespace qslcorr::states
