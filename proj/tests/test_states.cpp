#include <doctest.h>

#include <cmath>

#include "qslcorr/correlations.hpp"
#include "qslcorr/error.hpp"
#include "qslcorr/random.hpp"
#include "qslcorr/states.hpp"

using namespace qslcorr;
using namespace qslcorr::states;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::IoError;
}

Matrix4 diag4(double a, double b, double c, double d) {
  Matrix4 m = Matrix4::Zero();
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  m(3, 3) = d;
  return m;
}

}  // namespace

TEST_CASE("DensityMatrix validation") {
  CHECK_NOTHROW(DensityMatrix(diag4(0.5, 0.5, 0, 0)));
  CHECK(code_of([] { DensityMatrix(diag4(0.5, 0.4, 0, 0)); }) == ErrorCode::InvalidState);
  CHECK(code_of([] { DensityMatrix(diag4(1.1, -0.1, 0, 0)); }) == ErrorCode::NotPSD);
  Matrix4 m = diag4(0.5, 0.5, 0, 0);
  m(0, 1) = 1e-3;
  CHECK(code_of([&] { DensityMatrix{m}; }) == ErrorCode::NonHermitian);
  // Eigenvalues down to -1e-8 are accepted.
  CHECK_NOTHROW(DensityMatrix(diag4(0.5 + 5e-9, 0.5, -5e-9, 0)));
}

TEST_CASE("reference states") {
  const auto psi = bell_psi_plus();
  CHECK(psi.purity() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(linalg::hermitian_eigenvalues<4>(psi.matrix())(1) < 1e-15);
  const auto g1e2 = state_g1e2();
  CHECK((g1e2.matrix() - diag4(0, 1, 0, 0)).norm() == 0.0);
  const Vector4 v = psi_plus_vector();
  CHECK((DensityMatrix::pure(v).matrix() - psi.matrix()).norm() < 1e-15);
  CHECK((DensityMatrix::maximally_mixed().matrix() - Matrix4::Identity() / 4.0).norm() == 0.0);
  CHECK((initial_state(InitialState::G1E2).matrix() - g1e2.matrix()).norm() == 0.0);
}

TEST_CASE("separable_oun_sigma") {
  const auto sigma = separable_oun_sigma();
  CHECK((sigma.matrix() - diag4(0, 0.5, 0.5, 0)).norm() == 0.0);
  CHECK(correlations::concurrence(sigma) == 0.0);
  CHECK(std::abs(fidelity(sigma, bell_psi_plus()) - 0.5) < 1e-12);
}

TEST_CASE("separable_collective_sigma") {
  CHECK((separable_collective_sigma(InitialState::G1E2, 1.0).matrix() - diag4(1, 0, 0, 0)).norm() == 0.0);
  CHECK((separable_collective_sigma(InitialState::G1E2, 0.0).matrix() - diag4(0, 0, 0, 1)).norm() == 0.0);
  CHECK((separable_collective_sigma(InitialState::BellPsiPlus, 0.0).matrix() - diag4(0, 0, 0, 1)).norm() == 0.0);
  CHECK((separable_collective_sigma(InitialState::BellPsiPlus, 0.3).matrix() - diag4(0, 0.3, 0, 0.7)).norm() < 1e-15);
  CHECK(code_of([] { separable_collective_sigma(InitialState::G1E2, 1.5); }) == ErrorCode::BadMixingParameter);
  CHECK(code_of([] { separable_collective_sigma(InitialState::BellPsiPlus, -0.1); }) == ErrorCode::BadMixingParameter);
}

TEST_CASE("purify examples") {
  // Pure psi+ -> psi+ (x) |a0> up to a global phase.
  const auto p = purify(bell_psi_plus());
  const Vector16 expected = linalg::kron(psi_plus_vector(), Vector4::Unit(0).eval());
  CHECK(std::abs(std::abs(expected.dot(p.amplitudes())) - 1.0) < 1e-14);

  // I/4 -> maximally entangled, all Schmidt coefficients 1/2.
  const auto m = purify(DensityMatrix::maximally_mixed());
  Matrix4 coeffs;
  for (int s = 0; s < 4; ++s)
    for (int a = 0; a < 4; ++a) coeffs(s, a) = m.amplitudes()(4 * s + a);
  const auto schmidt = linalg::singular_values<4>(coeffs);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(schmidt(i) - 0.5) < 1e-14);
}

TEST_CASE("purification roundtrip on random states of every rank") {
  random::Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto rho = random::density_matrix(rng, 1 + i % 4);
    const auto p = purify(rho);
    CHECK(std::abs(p.amplitudes().norm() - 1.0) <= 1e-12);
    CHECK((p.reduced().matrix() - rho.matrix()).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK((linalg::partial_trace(p.projector(), linalg::Subsystem::System) - rho.matrix())
              .cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("PurifiedState rejects non-normalized vectors") {
  Vector16 v = Vector16::Zero();
  v(0) = 1.0 + 1e-9;
  CHECK(code_of([&] { PurifiedState{v}; }) == ErrorCode::InvalidState);
}

TEST_CASE("bell_coeffs examples") {
  const auto c = bell_coeffs(bell_psi_plus());
  CHECK(c.c1 == doctest::Approx(1.0));
  CHECK(c.c2 == doctest::Approx(1.0));
  CHECK(c.c3 == doctest::Approx(-1.0));
  const auto z = bell_coeffs(DensityMatrix::maximally_mixed());
  CHECK(std::abs(z.c1) + std::abs(z.c2) + std::abs(z.c3) < 1e-15);
  CHECK(code_of([] { bell_coeffs(state_g1e2()); }) == ErrorCode::NotBellDiagonal);
}

TEST_CASE("bell_coeffs reconstruct Bell-diagonal mixtures") {
  random::Rng rng(12);
  for (int i = 0; i < 200; ++i) {
    const auto c = random::bell_coeffs(rng);
    const auto rho = bell_diagonal_state(c);
    CHECK(is_bell_diagonal(rho));
    const auto back = bell_coeffs(rho);
    CHECK((bell_diagonal_state(back).matrix() - rho.matrix()).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(std::abs(back.c1 - c.c1) < 1e-12);
  }
  CHECK(code_of([] { bell_diagonal_state({1.0, 1.0, 1.0}); }) == ErrorCode::InvalidState);
}

TEST_CASE("Bell-diagonal tolerance separates structure from noise") {
  Matrix4 m = bell_psi_plus().matrix();
  m(0, 1) = m(1, 0) = 5e-9;
  m = (m + m.adjoint()) / 2.0;
  CHECK(is_bell_diagonal(DensityMatrix(0.999999 * m + 1e-6 * Matrix4::Identity() / 4.0)));
  m(0, 1) = m(1, 0) = 1e-6;
  CHECK_FALSE(is_bell_diagonal(DensityMatrix(0.99 * m + 0.01 * Matrix4::Identity() / 4.0)));
}

TEST_CASE("product_state") {
  linalg::Vector<2> g = linalg::Vector<2>::Zero();
  g(0) = 1.0;
  linalg::Vector<2> e = linalg::Vector<2>::Zero();
  e(1) = 1.0;
  CHECK((product_state(g, e).matrix() - state_g1e2().matrix()).norm() == 0.0);
}
