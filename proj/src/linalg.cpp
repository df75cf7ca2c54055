#include "qslcorr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qslcorr/error.hpp"

namespace qslcorr::linalg {

namespace {

template <int N>
double scale_of(const Matrix<N>& a) {
  return std::max(1.0, a.cwiseAbs().maxCoeff());
}

template <int N>
void require_hermitian(const Matrix<N>& a, double tolerance) {
  const double err = hermiticity_error<N>(a);
  if (!(err <= tolerance * scale_of<N>(a))) {
    throw Error(ErrorCode::NonHermitian,
                "matrix deviates from Hermitian by " + std::to_string(err));
  }
}

// Eigen returns ascending order; flip to descending.
template <int N>
HermitianEigen<N> descending(const Eigen::SelfAdjointEigenSolver<Matrix<N>>& solver) {
  HermitianEigen<N> out;
  for (int k = 0; k < N; ++k) {
    out.eigenvalues(k) = solver.eigenvalues()(N - 1 - k);
    out.eigenvectors.col(k) = solver.eigenvectors().col(N - 1 - k);
  }
  return out;
}

template <int N>
void fix_phases(Matrix<N>& vectors) {
  for (int k = 0; k < N; ++k) {
    int best = 0;
    double best_abs = -1.0;
    for (int i = 0; i < N; ++i) {
      const double m = std::abs(vectors(i, k));
      if (m > best_abs + 1e-12) {
        best_abs = m;
        best = i;
      }
    }
    if (best_abs > 0.0) {
      const Complex phase = std::conj(vectors(best, k)) / best_abs;
      vectors.col(k) *= phase;
      vectors(best, k) = Complex(std::abs(vectors(best, k)), 0.0);
    }
  }
}

}  // namespace

template <int N>
Matrix<N> HermitianEigen<N>::reconstruct() const {
  return eigenvectors * eigenvalues.template cast<Complex>().asDiagonal() *
         eigenvectors.adjoint();
}

template <int N>
double hermiticity_error(const Matrix<N>& a) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

template <int N>
bool is_hermitian(const Matrix<N>& a, double tolerance) {
  return hermiticity_error<N>(a) <= tolerance * scale_of<N>(a);
}

template <int N>
Matrix<N> hermitian_part(const Matrix<N>& a) {
  return (a + a.adjoint()) * 0.5;
}

template <int N>
HermitianEigen<N> hermitian_eig(const Matrix<N>& a, double tolerance) {
  require_hermitian<N>(a, tolerance);
  const Matrix<N> h = hermitian_part<N>(a);
  Eigen::SelfAdjointEigenSolver<Matrix<N>> solver(h);
  auto out = descending<N>(solver);
  fix_phases<N>(out.eigenvectors);
  return out;
}

template <int N>
RealVector<N> hermitian_eigenvalues(const Matrix<N>& a, double tolerance) {
  require_hermitian<N>(a, tolerance);
  const Matrix<N> h = hermitian_part<N>(a);
  Eigen::SelfAdjointEigenSolver<Matrix<N>> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().reverse();
}

template <int N>
Matrix<N> sqrt_psd(const Matrix<N>& a) {
  const auto eig = hermitian_eig<N>(a);
  const double lowest = eig.eigenvalues(N - 1);
  if (lowest < -kPsdFloor) {
    throw Error(ErrorCode::NotPSD,
                "minimum eigenvalue " + std::to_string(lowest) + " below -1e-10");
  }
  // Eigenvalues at roundoff level are zero; their square roots (~1e-8) would
  // otherwise leak into fidelities of rank-deficient states.
  const double noise = 4.0 * N * std::numeric_limits<double>::epsilon() *
                       std::max(std::abs(eig.eigenvalues(0)), std::abs(lowest));
  RealVector<N> roots;
  for (int k = 0; k < N; ++k) {
    const double v = eig.eigenvalues(k);
    roots(k) = v > noise ? std::sqrt(v) : 0.0;
  }
  return eig.eigenvectors * roots.template cast<Complex>().asDiagonal() *
         eig.eigenvectors.adjoint();
}

double fidelity(const Matrix4& rho, const Matrix4& sigma) {
  const Matrix4 product = sqrt_psd<4>(rho) * sqrt_psd<4>(sigma);
  const double root = singular_values<4>(product).sum();
  return std::clamp(root * root, 0.0, 1.0);
}

template <int N>
RealVector<N> singular_values(const Matrix<N>& a) {
  Eigen::JacobiSVD<Matrix<N>> svd(a);
  return svd.singularValues();
}

template <int N>
Norms norms(const Matrix<N>& a) {
  const RealVector<N> s = singular_values<N>(a);
  return {s.maxCoeff(), s.sum(), s.norm()};
}

template <int N>
Norms hermitian_norms(const Matrix<N>& a, double tolerance) {
  const RealVector<N> s = hermitian_eigenvalues<N>(a, tolerance).cwiseAbs();
  return {s.maxCoeff(), s.sum(), s.norm()};
}

Matrix4 kron(const Matrix2& a, const Matrix2& b) {
  Matrix4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

Matrix16 kron(const Matrix4& a, const Matrix4& b) {
  Matrix16 out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.block<4, 4>(4 * i, 4 * j) = a(i, j) * b;
  return out;
}

Vector16 kron(const Vector4& a, const Vector4& b) {
  Vector16 out;
  for (int i = 0; i < 4; ++i) out.segment<4>(4 * i) = a(i) * b;
  return out;
}

Matrix4 partial_trace(const Matrix16& x, Subsystem keep) {
  Matrix4 out = Matrix4::Zero();
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      for (int k = 0; k < 4; ++k) {
        out(r, c) += keep == Subsystem::System ? x(4 * r + k, 4 * c + k)
                                               : x(4 * k + r, 4 * k + c);
      }
    }
  }
  return out;
}

Matrix4 partial_trace(const Eigen::MatrixXcd& x, Subsystem keep) {
  if (x.rows() != 16 || x.cols() != 16) {
    throw Error(ErrorCode::BadDim, "partial_trace expects 16x16, got " +
                                       std::to_string(x.rows()) + "x" +
                                       std::to_string(x.cols()));
  }
  return partial_trace(Matrix16(x), keep);
}

Matrix2 pauli_x() {
  Matrix2 m;
  m << 0, 1, 1, 0;
  return m;
}

Matrix2 pauli_y() {
  Matrix2 m;
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

Matrix2 pauli_z() {
  Matrix2 m;
  m << 1, 0, 0, -1;
  return m;
}

#define QSLCORR_INSTANTIATE(N)                                                 \
  template struct HermitianEigen<N>;                                           \
  template double hermiticity_error<N>(const Matrix<N>&);                      \
  template bool is_hermitian<N>(const Matrix<N>&, double);                     \
  template Matrix<N> hermitian_part<N>(const Matrix<N>&);                      \
  template HermitianEigen<N> hermitian_eig<N>(const Matrix<N>&, double);       \
  template RealVector<N> hermitian_eigenvalues<N>(const Matrix<N>&, double);   \
  template Matrix<N> sqrt_psd<N>(const Matrix<N>&);                            \
  template RealVector<N> singular_values<N>(const Matrix<N>&);                 \
  template Norms norms<N>(const Matrix<N>&);                                   \
  template Norms hermitian_norms<N>(const Matrix<N>&, double);

QSLCORR_INSTANTIATE(2)
QSLCORR_INSTANTIATE(4)
QSLCORR_INSTANTIATE(16)

#undef QSLCORR_INSTANTIATE

}  // namespace qslcorr::linalg
