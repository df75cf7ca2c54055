#include "qslcorr/random.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <array>
#include <cmath>

namespace qslcorr::random {

template <int N>
Matrix<N> unitary(Rng& rng) {
  const Eigen::HouseholderQR<Matrix<N>> qr(ginibre<N>(rng));
  Matrix<N> q = qr.householderQ();
  const Matrix<N> r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (int k = 0; k < N; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

template Matrix<2> unitary<2>(Rng&);
template Matrix<4> unitary<4>(Rng&);

linalg::Vector4 pure_vector(Rng& rng) {
  linalg::Vector4 v;
  for (int i = 0; i < 4; ++i) v(i) = rng.complex_normal();
  return v / v.norm();
}

states::DensityMatrix density_matrix(Rng& rng, int rank) {
  rank = std::clamp(rank, 1, 4);
  linalg::Matrix4 m = psd<4>(rng, rank);
  m = (m + m.adjoint()) / 2.0;
  return states::DensityMatrix(m / m.trace().real());
}

states::BellDiagonalCoeffs bell_coeffs(Rng& rng) {
  // Sorted uniforms split [0,1] into simplex weights of the four Bell states.
  std::array<double, 5> cut{0.0, rng.uniform(), rng.uniform(), rng.uniform(), 1.0};
  std::sort(cut.begin() + 1, cut.end() - 1);
  double p[4];
  for (int i = 0; i < 4; ++i) p[i] = cut[i + 1] - cut[i];
  // Weights of Phi+, Phi-, Psi+, Psi-: c_i = Tr(rho sigma_i (x) sigma_i).
  return {p[0] - p[1] + p[2] - p[3], -p[0] + p[1] + p[2] - p[3], p[0] + p[1] - p[2] - p[3]};
}

channels::OunParams oun_params(Rng& rng) {
  return {rng.uniform(0.1, 5.0), rng.uniform(0.01, 2.0)};
}

channels::CollectiveParams collective_params(Rng& rng) {
  channels::CollectiveParams p;
  p.Lambda = rng.uniform(0.2, 3.0);
  p.Lambda12 = p.Lambda * rng.uniform(-1.0, 1.0);
  p.M12 = rng.uniform(-10.0, 10.0);
  p.omega = rng.uniform(0.0, 5.0);
  return p;
}

}  // namespace qslcorr::random
