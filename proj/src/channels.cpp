#include "qslcorr/channels.hpp"

#include <cmath>
#include <string>

#include "qslcorr/error.hpp"

namespace qslcorr::channels {

using linalg::Complex;
using linalg::Matrix2;

namespace {

bool finite(double v) { return std::isfinite(v); }

void require_time(double t) {
  if (!(t >= 0.0) || !finite(t)) {
    throw Error(ErrorCode::BadParams, "time " + std::to_string(t) + " must be finite and >= 0");
  }
}

// kappa (t + (e^{-lambda t} - 1)/lambda), the exponent of p_t^2.
double oun_exponent(const OunParams& p, double t) {
  return p.kappa * (t + std::expm1(-p.lambda * t) / p.lambda);
}

Matrix2 raising() {
  Matrix2 m = Matrix2::Zero();
  m(1, 0) = 1.0;  // |e><g|
  return m;
}

template <class Fn>
Matrix16 blockwise(const Matrix16& x, Fn&& apply) {
  Matrix16 out;
  Matrix4 block;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) block(r, c) = x(4 * r + a, 4 * c + b);
      const Matrix4 image = apply(block);
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out(4 * r + a, 4 * c + b) = image(r, c);
    }
  }
  return out;
}

}  // namespace

void OunParams::validate() const {
  if (!(kappa > 0.0) || !finite(kappa) || !(lambda > 0.0) || !finite(lambda)) {
    throw Error(ErrorCode::BadParams, "OUN needs finite kappa > 0 and lambda > 0 (kappa=" +
                                          std::to_string(kappa) +
                                          ", lambda=" + std::to_string(lambda) + ")");
  }
}

void CollectiveParams::validate() const {
  if (!(Lambda > 0.0) || !finite(Lambda)) {
    throw Error(ErrorCode::BadParams, "Lambda must be finite and > 0");
  }
  if (!finite(Lambda12) || !(std::abs(Lambda12) <= Lambda)) {
    throw Error(ErrorCode::BadParams, "|Lambda12| must not exceed Lambda");
  }
  if (!finite(M12)) throw Error(ErrorCode::BadParams, "M12 must be finite");
  if (!(omega >= 0.0) || !finite(omega)) {
    throw Error(ErrorCode::BadParams, "omega must be finite and >= 0");
  }
}

double oun_decoherence_function(const OunParams& p, double t) {
  p.validate();
  require_time(t);
  return std::exp(-0.5 * oun_exponent(p, t));
}

double oun_rate(const OunParams& p, double t) {
  p.validate();
  require_time(t);
  return -0.25 * p.kappa * std::expm1(-p.lambda * t);
}

Generator Generator::zero() { return Generator(Zero{}); }

Generator Generator::oun(const OunParams& p) {
  p.validate();
  Oun m{p, Matrix4::Zero()};
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const double z1 = ((r >> 1) == (c >> 1)) ? 1.0 : -1.0;
      const double z2 = ((r & 1) == (c & 1)) ? 1.0 : -1.0;
      m.factor(r, c) = z1 + z2 - 2.0;
    }
  }
  return Generator(std::move(m));
}

Generator Generator::collective(const CollectiveParams& p) {
  p.validate();
  Collective m;
  m.params = p;
  const Matrix2 id = Matrix2::Identity();
  m.raising[0] = linalg::kron(raising(), id);
  m.raising[1] = linalg::kron(id, raising());
  for (int i = 0; i < 2; ++i) m.lowering[i] = m.raising[i].adjoint();

  Matrix2 sz = Matrix2::Zero();
  sz(0, 0) = -0.5;
  sz(1, 1) = 0.5;
  const Matrix4 energy = linalg::kron(sz, id) + linalg::kron(id, sz);
  m.hamiltonian = p.omega * energy +
                  p.M12 * (m.raising[0] * m.lowering[1] + m.raising[1] * m.lowering[0]);

  const double rate[2][2] = {{p.Lambda, p.Lambda12}, {p.Lambda12, p.Lambda}};
  m.anticommutator = Matrix4::Zero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m.anticommutator += rate[i][j] * m.raising[i] * m.lowering[j];
  return Generator(std::move(m));
}

Matrix4 Generator::apply(double t, const Matrix4& rho) const {
  return std::visit(
      [&](const auto& m) -> Matrix4 {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Zero>) {
          return Matrix4::Zero();
        } else if constexpr (std::is_same_v<T, Oun>) {
          const double gamma = -0.25 * m.params.kappa * std::expm1(-m.params.lambda * t);
          return (gamma * m.factor.array() * rho.array()).matrix();
        } else {
          const Complex i(0.0, 1.0);
          const auto& p = m.params;
          const double rate[2][2] = {{p.Lambda, p.Lambda12}, {p.Lambda12, p.Lambda}};
          Matrix4 out = -i * (m.hamiltonian * rho - rho * m.hamiltonian) -
                        0.5 * (rho * m.anticommutator + m.anticommutator * rho);
          for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
              out += rate[a][b] * m.lowering[b] * rho * m.raising[a];
          return out;
        }
      },
      model_);
}

Matrix16 Generator::apply_extended(double t, const Matrix16& x) const {
  if (std::holds_alternative<Zero>(model_)) return Matrix16::Zero();
  return blockwise(x, [&](const Matrix4& block) { return apply(t, block); });
}

Generator oun_generator(const OunParams& p) { return Generator::oun(p); }
Generator collective_generator(const CollectiveParams& p) { return Generator::collective(p); }

Couplings collective_couplings(double mu0_r, double d_dot_r, double Lambda) {
  if (!(mu0_r > 0.0) || !finite(mu0_r)) {
    throw Error(ErrorCode::BadGeometry, "mu0_r must be finite and > 0");
  }
  if (!(d_dot_r >= -1.0 && d_dot_r <= 1.0)) {
    throw Error(ErrorCode::BadGeometry, "d . r_hat must lie in [-1, 1]");
  }
  if (!(Lambda > 0.0) || !finite(Lambda)) {
    throw Error(ErrorCode::BadGeometry, "Lambda must be finite and > 0");
  }
  const double x = mu0_r;
  const double d2 = d_dot_r * d_dot_r;
  const double s = std::sin(x);
  const double c = std::cos(x);
  Couplings out;
  out.Lambda12 = 1.5 * Lambda *
                 ((1.0 - d2) * s / x + (1.0 - 3.0 * d2) * (c / (x * x) - s / (x * x * x)));
  out.M12 = 0.75 * Lambda *
            (-(1.0 - d2) * c / x + (1.0 - 3.0 * d2) * (s / (x * x) - c / (x * x * x)));
  return out;
}

double oun_bell_concurrence(const OunParams& p, double t) {
  p.validate();
  require_time(t);
  return std::exp(-oun_exponent(p, t));
}

double oun_bell_separable_fidelity(const OunParams& p, double t) {
  p.validate();
  require_time(t);
  return 0.5 * (1.0 + std::sqrt(-std::expm1(-2.0 * oun_exponent(p, t))));
}

double collective_g1e2_concurrence(const CollectiveParams& p, double t) {
  p.validate();
  require_time(t);
  const double s = std::sin(2.0 * t * p.M12);
  const double sh = std::sinh(t * p.Lambda12);
  return std::exp(-t * p.Lambda) * std::sqrt(s * s + sh * sh);
}

double collective_g1e2_separable_fidelity(const CollectiveParams& p, double t) {
  const double c = collective_g1e2_concurrence(p, t);
  return 0.5 * (1.0 + std::sqrt((1.0 - c) * (1.0 + c)));
}

double collective_psi_plus_separable_fidelity(const CollectiveParams& p, double t) {
  p.validate();
  require_time(t);
  return 0.5 * (1.0 + std::sqrt(-std::expm1(-2.0 * t * (p.Lambda + p.Lambda12))));
}

}  // namespace qslcorr::channels
