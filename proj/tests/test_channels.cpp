#include <doctest.h>

#include <cmath>
#include <functional>

#include "qslcorr/channels.hpp"
#include "qslcorr/error.hpp"
#include "qslcorr/random.hpp"

using namespace qslcorr;
using namespace qslcorr::channels;

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

TEST_CASE("OUN decoherence function") {
  const OunParams p{1.0, 0.1};
  CHECK(oun_decoherence_function(p, 0.0) == 1.0);
  // kappa -> 0: no decoherence.
  CHECK(std::abs(oun_decoherence_function({1e-12, 0.1}, 5.0) - 1.0) < 1e-10);
  // lambda t = 50: p_t -> exp(-kappa (t - 1/lambda) / 2).
  const OunParams q{0.3, 10.0};
  CHECK(std::abs(oun_decoherence_function(q, 5.0) - std::exp(-0.15 * (5.0 - 0.1))) < 1e-10);
  // Short times: p_t ~ exp(-kappa lambda t^2 / 4).
  CHECK(std::abs(oun_decoherence_function(p, 1e-3) - std::exp(-0.1 * 1e-6 / 4.0)) < 1e-12);
  CHECK(code_of([] { oun_decoherence_function({-1.0, 0.1}, 1.0); }) == ErrorCode::BadParams);
  CHECK(code_of([] { oun_decoherence_function({1.0, 0.0}, 1.0); }) == ErrorCode::BadParams);
}

TEST_CASE("OUN rate") {
  const OunParams p{2.0, 0.5};
  CHECK(oun_rate(p, 0.0) == 0.0);
  CHECK(std::abs(oun_rate(p, 200.0) - 0.5) < 1e-12);
  const double t = 0.7, h = 1e-5;
  const double dp = (oun_decoherence_function(p, t + h) - oun_decoherence_function(p, t - h)) / (2 * h);
  CHECK(std::abs(-dp / (2.0 * oun_decoherence_function(p, t)) - oun_rate(p, t)) < 1e-6);
}

TEST_CASE("fixed points") {
  const auto oun = Generator::oun({1.0, 0.1});
  CHECK(oun.apply(0.5, diag4(0.1, 0.2, 0.3, 0.4)).norm() == 0.0);
  const auto col = Generator::collective({1.0, 0.95, 4.65, 2.0});
  CHECK(col.apply(0.5, diag4(1, 0, 0, 0)).norm() < 1e-15);
  CHECK(Generator::zero().apply(0.5, Matrix4::Identity()).norm() == 0.0);
}

TEST_CASE("OUN dephases the single-excitation coherence at rate 4 gamma") {
  const OunParams p{1.0, 0.3};
  const auto gen = Generator::oun(p);
  Matrix4 rho = Matrix4::Zero();
  rho(1, 2) = rho(2, 1) = 0.5;
  const double t = 1.3;
  const Matrix4 d = gen.apply(t, rho);
  CHECK(std::abs(d(1, 2) - linalg::Complex(-4.0 * oun_rate(p, t) * 0.5)) < 1e-15);
}

TEST_CASE("collective decay of |ee>") {
  const CollectiveParams p{1.0, 0.95, 4.65, 0.0};
  const Matrix4 d = Generator::collective(p).apply(0.0, diag4(0, 0, 0, 1));
  // Total excitation-loss rate 2 Lambda out of |ee>.
  CHECK(std::abs(d(3, 3).real() + 2.0 * p.Lambda) < 1e-14);
  CHECK(std::abs(d(0, 0)) < 1e-15);
  CHECK(std::abs(d.trace()) < 1e-14);
}

TEST_CASE("generators are traceless, Hermiticity preserving and act locally") {
  random::Rng rng(31);
  const auto oun = Generator::oun(random::oun_params(rng));
  const auto col = Generator::collective(random::collective_params(rng));
  for (int i = 0; i < 100; ++i) {
    const double t = rng.uniform(0.0, 5.0);
    const auto rho = random::density_matrix(rng).matrix();
    const auto tau = random::density_matrix(rng).matrix();
    for (const Generator* gen : {&oun, &col}) {
      const Matrix4 d = gen->apply(t, rho);
      CHECK(std::abs(d.trace()) < 1e-12);
      CHECK((d - d.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
      const Matrix16 x = linalg::kron(rho, tau);
      const Matrix16 dx = gen->apply_extended(t, x);
      CHECK((dx - linalg::kron(d, tau)).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((linalg::partial_trace(dx, linalg::Subsystem::System) - d).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(linalg::partial_trace(dx, linalg::Subsystem::Ancilla).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("collective couplings") {
  // Perpendicular dipoles, small separation: Lambda12 ~ Lambda (1 - x^2 / 5).
  const double x = 1e-2;
  CHECK(std::abs(collective_couplings(x, 0.0, 1.0).Lambda12 - (1.0 - x * x / 5.0)) < 1e-7);
  // Parallel dipoles: Lambda12 ~ Lambda (1 - x^2 / 10).
  CHECK(std::abs(collective_couplings(x, 1.0, 2.0).Lambda12 - 2.0 * (1.0 - x * x / 10.0)) < 1e-7);

  // x = pi, arbitrary orientation, against a long double evaluation.
  const long double X = 3.14159265358979323846264338327950288L;
  const long double d2 = 0.36L;
  const long double s = std::sin(X), c = std::cos(X);
  const long double l12 = 1.5L * ((1 - d2) * s / X + (1 - 3 * d2) * (c / (X * X) - s / (X * X * X)));
  const long double m12 = 0.75L * (-(1 - d2) * c / X + (1 - 3 * d2) * (s / (X * X) - c / (X * X * X)));
  const auto k = collective_couplings(static_cast<double>(X), 0.6, 1.0);
  CHECK(std::abs(k.Lambda12 - static_cast<double>(l12)) < 1e-14);
  CHECK(std::abs(k.M12 - static_cast<double>(m12)) < 1e-14);

  // Close atoms: Lambda12 ~ Lambda and a large negative dipole shift.
  const auto near = collective_couplings(0.08, 0.0, 1.0);
  CHECK(std::abs(near.Lambda12 - 0.999) < 1e-3);
  CHECK(near.M12 < -1000.0);

  CHECK(code_of([] { collective_couplings(0.0, 0.0, 1.0); }) == ErrorCode::BadGeometry);
  CHECK(code_of([] { collective_couplings(1.0, 1.5, 1.0); }) == ErrorCode::BadGeometry);
}

TEST_CASE("parameter validation") {
  CHECK(code_of([] { CollectiveParams{1.0, 1.5, 0.0, 0.0}.validate(); }) == ErrorCode::BadParams);
  CHECK(code_of([] { CollectiveParams{0.0, 0.0, 0.0, 0.0}.validate(); }) == ErrorCode::BadParams);
  CHECK(code_of([] { CollectiveParams{1.0, 0.5, 0.0, -1.0}.validate(); }) == ErrorCode::BadParams);
  CHECK(code_of([] { CollectiveParams{1.0, 0.5, std::nan(""), 0.0}.validate(); }) == ErrorCode::BadParams);
  CHECK_NOTHROW(CollectiveParams{1.0, -1.0, -3.0, 0.0}.validate());
  CHECK(code_of([] { Generator::oun({1.0, -0.1}); }) == ErrorCode::BadParams);
}

TEST_CASE("closed-form reference curves") {
  const OunParams p{1.0, 0.1};
  CHECK(oun_bell_concurrence(p, 0.0) == 1.0);
  CHECK(oun_bell_separable_fidelity(p, 0.0) == 0.5);
  const double pt = oun_decoherence_function(p, 2.0);
  CHECK(std::abs(oun_bell_concurrence(p, 2.0) - pt * pt) < 1e-15);
  const double c = pt * pt;
  CHECK(std::abs(oun_bell_separable_fidelity(p, 2.0) - 0.5 * (1.0 + std::sqrt(1.0 - c * c))) < 1e-14);

  const CollectiveParams q{1.0, 0.95, 4.65, 0.0};
  CHECK(collective_g1e2_concurrence(q, 0.0) == 0.0);
  CHECK(collective_g1e2_separable_fidelity(q, 0.0) == doctest::Approx(1.0));
  CHECK(collective_psi_plus_separable_fidelity(q, 0.0) == 0.5);
  CHECK(collective_psi_plus_separable_fidelity(q, 50.0) == doctest::Approx(1.0));
}
