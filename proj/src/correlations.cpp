#include "qslcorr/correlations.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "qslcorr/error.hpp"

namespace qslcorr::correlations {

namespace {

using linalg::Complex;
using linalg::Matrix4;

const Matrix4& spin_flip() {
  static const Matrix4 yy = linalg::kron(linalg::pauli_y(), linalg::pauli_y());
  return yy;
}

void require_unit_interval(double c, const char* what) {
  if (!(c >= 0.0 && c <= 1.0)) {
    throw Error(ErrorCode::DomainError,
                std::string(what) + " " + std::to_string(c) + " outside [0, 1]");
  }
}

double clamped_sqrt(double x) {
  if (x < -1e-12) {
    throw Error(ErrorCode::DomainError,
                "negative square-root argument " + std::to_string(x) + " in b_max");
  }
  return std::sqrt(std::max(0.0, x));
}

}  // namespace

linalg::RealVector<4> spin_flip_spectrum(const DensityMatrix& rho) {
  const Matrix4 root = linalg::sqrt_psd<4>(rho.matrix());
  const Matrix4 flipped_root = spin_flip() * root.conjugate() * spin_flip();
  return linalg::singular_values<4>(Matrix4(root * flipped_root));
}

linalg::RealVector<4> spin_flip_spectrum_nonhermitian(const DensityMatrix& rho) {
  const Matrix4& m = rho.matrix();
  const Matrix4 tilde = spin_flip() * m.conjugate() * spin_flip();
  Eigen::ComplexEigenSolver<Matrix4> solver(m * tilde, false);
  std::array<double, 4> k{};
  for (int i = 0; i < 4; ++i) k[i] = std::sqrt(std::max(0.0, solver.eigenvalues()(i).real()));
  std::sort(k.begin(), k.end(), std::greater<>());
  return linalg::RealVector<4>(k[0], k[1], k[2], k[3]);
}

double x_state_concurrence(const DensityMatrix& rho) {
  const Matrix4& m = rho.matrix();
  const double zero_one = std::abs(m(1, 2)) - std::sqrt(std::max(0.0, m(0, 0).real() * m(3, 3).real()));
  const double zero_three = std::abs(m(0, 3)) - std::sqrt(std::max(0.0, m(1, 1).real() * m(2, 2).real()));
  const double trace = m.trace().real();
  return std::clamp(2.0 * std::max(zero_one, zero_three) / trace, 0.0, 1.0);
}

bool is_x_state(const DensityMatrix& rho, double tolerance) {
  const Matrix4& m = rho.matrix();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if (r != c && r + c != 3 && std::abs(m(r, c)) > tolerance) return false;
  return true;
}

double concurrence(const DensityMatrix& rho) {
  if (is_x_state(rho, kXStateTolerance)) return x_state_concurrence(rho);
  const auto k = spin_flip_spectrum(rho);
  // C is homogeneous of degree one; dividing by the trace removes the
  // representation error that sqrt(1 - C^2) would amplify near C = 1.
  const double trace = rho.matrix().trace().real();
  return std::clamp((k(0) - k(1) - k(2) - k(3)) / trace, 0.0, 1.0);
}

double separable_fidelity_from_concurrence(double c) {
  require_unit_interval(c, "concurrence");
  // (1 - c)(1 + c) keeps precision as c -> 1.
  return 0.5 * (1.0 + std::sqrt((1.0 - c) * (1.0 + c)));
}

double bures_entanglement(double c) {
  return 1.0 - std::sqrt(separable_fidelity_from_concurrence(c));
}

double b_max(const BellDiagonalCoeffs& c) {
  for (double v : {c.c1, c.c2, c.c3}) {
    if (!(std::abs(v) <= 1.0 + 1e-12)) {
      throw Error(ErrorCode::DomainError,
                  "Bell-diagonal coefficient " + std::to_string(v) + " outside [-1, 1]");
    }
  }
  const std::array<double, 3> cs{c.c1, c.c2, c.c3};
  double best = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double ci = cs[i];
    const double cj = cs[(i + 1) % 3];
    const double ck = cs[(i + 2) % 3];
    const double term = clamped_sqrt((1.0 + ci) * (1.0 + ci) - (cj - ck) * (cj - ck)) +
                        clamped_sqrt((1.0 - ci) * (1.0 - ci) - (cj + ck) * (cj + ck));
    best = std::max(best, term);
  }
  return std::min(1.0, 0.5 * best);
}

double bures_discord_bell_diagonal(const BellDiagonalCoeffs& c) {
  return 1.0 - std::sqrt(0.5 * (1.0 + b_max(c)));
}

CorrelationAmount correlation_change(double initial, double final) {
  const double upper = kMaxBuresMeasure + 1e-9;
  for (double v : {initial, final}) {
    if (!(v >= -1e-9 && v <= upper)) {
      throw Error(ErrorCode::DomainError,
                  "correlation value " + std::to_string(v) + " outside [0, 1 - 1/sqrt(2)]");
    }
  }
  CorrelationAmount out;
  out.initial = initial;
  out.final = final;
  out.change = std::abs(initial - final);
  out.direction = initial >= final ? Direction::Decay : Direction::Creation;
  return out;
}

}  // namespace qslcorr::correlations
