#pragma once

// The two decoherence models and their closed-form reference curves.
//
//   OUN dephasing:  L_t rho = gamma(t) sum_{q=1,2} (Z_q rho Z_q - rho),
//                   gamma(t) = kappa (1 - e^{-lambda t}) / 4.
//   Collective:     L rho = -i [H, rho]
//                           - 1/2 sum_ij Lambda_ij (rho S_i+ S_j- + S_i+ S_j- rho
//                                                   - 2 S_j- rho S_i+),
//                   H = omega (S_1z + S_2z) + M12 (S_1+ S_2- + S_2+ S_1-),
//                   S_i+ = |e><g| on atom i, Lambda_11 = Lambda_22 = Lambda.

#include <variant>

#include "qslcorr/linalg.hpp"

namespace qslcorr::channels {

using linalg::Matrix4;
using linalg::Matrix16;

struct OunParams {
  double kappa = 1.0;   // coupling strength
  double lambda = 0.1;  // inverse reservoir correlation time

  /// Throws BadParams unless both are finite and > 0.
  void validate() const;
};

struct CollectiveParams {
  double Lambda = 1.0;     // single-atom spontaneous emission rate
  double Lambda12 = 0.95;  // collective damping
  double M12 = 4.65;       // dipole-dipole coupling
  double omega = 0.0;      // atomic frequency

  /// Throws BadParams unless Lambda > 0, |Lambda12| <= Lambda, omega >= 0,
  /// all finite.
  void validate() const;
};

/// p_t = exp(-kappa/2 (t + (e^{-lambda t} - 1)/lambda)); throws BadParams.
double oun_decoherence_function(const OunParams& p, double t);

/// gamma(t) = -dp_t/dt / (2 p_t) = kappa (1 - e^{-lambda t}) / 4.
double oun_rate(const OunParams& p, double t);

/// A time-dependent generator L_t. Immutable; evaluation is pure, so a
/// Generator can be shared between threads.
class Generator {
 public:
  static Generator zero();
  static Generator oun(const OunParams& p);
  static Generator collective(const CollectiveParams& p);

  /// d rho / dt at time t.
  Matrix4 apply(double t, const Matrix4& rho) const;

  /// (L_t (x) id) on system (x) ancilla, index 4 * system + ancilla.
  Matrix16 apply_extended(double t, const Matrix16& x) const;

 private:
  struct Zero {};
  struct Oun {
    OunParams params;
    // (z1(r) z1(c) + z2(r) z2(c) - 2): the dephasing factor per entry.
    Matrix4 factor;
  };
  struct Collective {
    CollectiveParams params;
    Matrix4 hamiltonian;
    Matrix4 anticommutator;  // sum_ij Lambda_ij S_i+ S_j-
    Matrix4 lowering[2];
    Matrix4 raising[2];
  };
  using Model = std::variant<Zero, Oun, Collective>;

  explicit Generator(Model m) : model_(std::move(m)) {}

  Model model_;
};

Generator oun_generator(const OunParams& p);
Generator collective_generator(const CollectiveParams& p);

struct Couplings {
  double Lambda12 = 0.0;
  double M12 = 0.0;
};

/// Collective damping and dipole-dipole coupling of two identical atoms at
/// dimensionless separation mu0_r = mu_0 r_12 with d . r_hat = d_dot_r.
/// Throws BadGeometry unless mu0_r > 0 and d_dot_r in [-1, 1].
Couplings collective_couplings(double mu0_r, double d_dot_r, double Lambda);

// Closed-form reference curves.

/// Concurrence of the dephased Bell state, p_t^2.
double oun_bell_concurrence(const OunParams& p, double t);
/// 1/2 (1 + sqrt(1 - exp(-2 kappa (t + (e^{-lambda t} - 1)/lambda)))).
double oun_bell_separable_fidelity(const OunParams& p, double t);
/// e^{-t Lambda} |sin(2 t M12) + i sinh(t Lambda12)|.
double collective_g1e2_concurrence(const CollectiveParams& p, double t);
double collective_g1e2_separable_fidelity(const CollectiveParams& p, double t);
/// 1/2 (1 + sqrt(1 - e^{-2 t (Lambda + Lambda12)})).
double collective_psi_plus_separable_fidelity(const CollectiveParams& p, double t);

}  // namespace qslcorr::channels
