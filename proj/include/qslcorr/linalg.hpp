#pragma once

// Dense complex linear algebra at the three dimensions the library needs:
// single qubit (2), two qubits (4) and two qubits plus a two-qubit ancilla (16).
// Only these sizes are instantiated.

#include <complex>

#include <Eigen/Dense>

namespace qslcorr::linalg {

using Complex = std::complex<double>;

template <int N>
using Matrix = Eigen::Matrix<Complex, N, N>;
template <int N>
using Vector = Eigen::Matrix<Complex, N, 1>;
template <int N>
using RealVector = Eigen::Matrix<double, N, 1>;

using Matrix2 = Matrix<2>;
using Matrix4 = Matrix<4>;
using Matrix16 = Matrix<16>;
using Vector4 = Vector<4>;
using Vector16 = Vector<16>;

/// Entrywise Hermiticity tolerance, scaled by max(1, max|A_ij|).
inline constexpr double kHermitianTolerance = 1e-12;
/// Eigenvalues down to -kPsdFloor are treated as zero by sqrt_psd.
inline constexpr double kPsdFloor = 1e-10;

/// Eigen-decomposition of a Hermitian matrix.
///
/// Eigenvalues are sorted in descending order and column k of `eigenvectors`
/// belongs to eigenvalue k. Each eigenvector is scaled so that its
/// largest-magnitude component (first one on ties) is real and positive.
/// Within a degenerate eigenspace the basis is whatever the solver returns.
template <int N>
struct HermitianEigen {
  RealVector<N> eigenvalues;
  Matrix<N> eigenvectors;

  Matrix<N> reconstruct() const;
};

/// max_ij |A_ij - conj(A_ji)|
template <int N>
double hermiticity_error(const Matrix<N>& a);

template <int N>
bool is_hermitian(const Matrix<N>& a, double tolerance = kHermitianTolerance);

/// (A + A^dagger) / 2
template <int N>
Matrix<N> hermitian_part(const Matrix<N>& a);

/// Throws Error(NonHermitian) when `a` is not Hermitian within `tolerance`.
template <int N>
HermitianEigen<N> hermitian_eig(const Matrix<N>& a, double tolerance = kHermitianTolerance);

/// Eigenvalues only, descending.
template <int N>
RealVector<N> hermitian_eigenvalues(const Matrix<N>& a, double tolerance = kHermitianTolerance);

/// Principal square root of a positive semidefinite matrix. Eigenvalues in
/// [-kPsdFloor, 0) and those within roundoff of zero (4 N eps lambda_max) are
/// clamped to zero; anything below -kPsdFloor throws NotPSD.
template <int N>
Matrix<N> sqrt_psd(const Matrix<N>& a);

/// Uhlmann fidelity [Tr sqrt(sqrt(sigma) rho sqrt(sigma))]^2, clamped to [0, 1].
///
/// Evaluated as the squared nuclear norm of sqrt(rho) sqrt(sigma), which is
/// the same quantity but keeps full absolute precision for rank-deficient
/// arguments.
double fidelity(const Matrix4& rho, const Matrix4& sigma);

struct Norms {
  double op = 0.0;     // largest singular value
  double trace = 0.0;  // sum of singular values
  double hs = 0.0;     // sqrt of sum of squared singular values
};

template <int N>
RealVector<N> singular_values(const Matrix<N>& a);

/// All three norms from one SVD.
template <int N>
Norms norms(const Matrix<N>& a);

/// All three norms of a Hermitian matrix from its eigenvalues (|lambda_i| are
/// the singular values). Faster than norms() at dimension 16.
template <int N>
Norms hermitian_norms(const Matrix<N>& a, double tolerance = kHermitianTolerance);

template <int N>
double op_norm(const Matrix<N>& a) { return norms(a).op; }
template <int N>
double trace_norm(const Matrix<N>& a) { return norms(a).trace; }
template <int N>
double hs_norm(const Matrix<N>& a) { return a.norm(); }

Matrix4 kron(const Matrix2& a, const Matrix2& b);
Matrix16 kron(const Matrix4& a, const Matrix4& b);
Vector16 kron(const Vector4& a, const Vector4& b);

/// The 16-dimensional space is system (4) tensor ancilla (4), flat index
/// 4 * system + ancilla.
enum class Subsystem { System, Ancilla };

/// Reduces a 16x16 operator to the 4x4 operator on the `keep` factor.
Matrix4 partial_trace(const Matrix16& x, Subsystem keep);

/// Same, for an operator of any size; throws BadDim unless it is 16x16.
Matrix4 partial_trace(const Eigen::MatrixXcd& x, Subsystem keep);

Matrix2 pauli_x();
Matrix2 pauli_y();
Matrix2 pauli_z();

}  // namespace qslcorr::linalg
