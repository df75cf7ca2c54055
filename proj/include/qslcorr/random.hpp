#pragma once

// Seeded random matrices and states for property tests.

#include <cstdint>
#include <random>

#include "qslcorr/channels.hpp"
#include "qslcorr/linalg.hpp"
#include "qslcorr/states.hpp"

namespace qslcorr::random {

using linalg::Matrix;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
  linalg::Complex complex_normal() { return {normal(), normal()}; }

 private:
  std::mt19937_64 engine_;
};

/// Entries i.i.d. complex Gaussian.
template <int N>
Matrix<N> ginibre(Rng& rng) {
  Matrix<N> m;
  for (int r = 0; r < N; ++r)
    for (int c = 0; c < N; ++c) m(r, c) = rng.complex_normal();
  return m;
}

template <int N>
Matrix<N> hermitian(Rng& rng) {
  const Matrix<N> g = ginibre<N>(rng);
  return (g + g.adjoint()) / 2.0;
}

/// G G^dagger for Ginibre G restricted to `rank` columns.
template <int N>
Matrix<N> psd(Rng& rng, int rank = N) {
  Matrix<N> g = ginibre<N>(rng);
  for (int c = rank; c < N; ++c) g.col(c).setZero();
  return g * g.adjoint();
}

/// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
template <int N>
Matrix<N> unitary(Rng& rng);

linalg::Vector4 pure_vector(Rng& rng);

/// Induced-measure density matrix of the given rank (1..4).
states::DensityMatrix density_matrix(Rng& rng, int rank = 4);

/// Coefficients of a random Bell-diagonal state (uniform weights on the
/// probability simplex).
states::BellDiagonalCoeffs bell_coeffs(Rng& rng);

channels::OunParams oun_params(Rng& rng);
channels::CollectiveParams collective_params(Rng& rng);

extern template Matrix<2> unitary<2>(Rng&);
extern template Matrix<4> unitary<4>(Rng&);

}  // namespace qslcorr::random
