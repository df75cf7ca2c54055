#include "qslcorr/qsl.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "qslcorr/error.hpp"

namespace qslcorr::qsl {

using linalg::Complex;
using linalg::Matrix4;
using linalg::Matrix16;

namespace {

constexpr double kTieTolerance = 1e-10;

Matrix16 projector(const DensityMatrix& rho) { return states::purify(rho).projector(); }

Norms extended_norms(const Generator& gen, double t, const DensityMatrix& rho) {
  const Matrix16 image = gen.apply_extended(t, projector(rho));
  return linalg::hermitian_norms<16>(image, 1e-10);
}

}  // namespace

NodeNorms node_norms(const Generator& gen, double t, const DensityMatrix& rho,
                     const DensityMatrix& sigma) {
  return {extended_norms(gen, t, rho), extended_norms(gen, t, sigma)};
}

std::vector<NodeNorms> norm_integrands(const Generator& gen, const Trajectory& rho_traj,
                                       std::span<const DensityMatrix> sigmas) {
  if (sigmas.size() != rho_traj.size()) {
    throw Error(ErrorCode::GridMismatch, std::to_string(sigmas.size()) +
                                             " separable states for " +
                                             std::to_string(rho_traj.size()) + " nodes");
  }
  std::vector<NodeNorms> out;
  out.reserve(sigmas.size());
  for (std::size_t k = 0; k < sigmas.size(); ++k) {
    out.push_back(node_norms(gen, rho_traj.times[k], rho_traj.states[k], sigmas[k]));
  }
  return out;
}

const char* to_string(SigmaSource s) {
  switch (s) {
    case SigmaSource::Constant: return "constant";
    case SigmaSource::Formula: return "formula";
    case SigmaSource::FamilyGrid: return "family-grid";
    case SigmaSource::TwirledProduct: return "twirled-product";
  }
  return "unknown";
}

double collective_mixing_formula(InitialState initial, const CollectiveParams& p, double t,
                                 double separable_fidelity) {
  if (initial == InitialState::G1E2) {
    return std::exp(-t * p.Lambda) * separable_fidelity /
           (std::exp(t * p.Lambda) - std::cosh(t * p.Lambda12));
  }
  return 4.0 * std::exp(t * (p.Lambda + p.Lambda12)) * separable_fidelity;
}

double excitation_block_fidelity(const Matrix4& rho, const Matrix4& sigma) {
  auto det2 = [](const Matrix4& m) {
    return std::max(0.0, (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)).real());
  };
  const double outer = std::sqrt(std::max(0.0, rho(0, 0).real() * sigma(0, 0).real())) +
                       std::sqrt(std::max(0.0, rho(3, 3).real() * sigma(3, 3).real()));
  double overlap = 0.0;  // Tr(sigma_b rho_b)
  for (int r = 1; r <= 2; ++r)
    for (int c = 1; c <= 2; ++c) overlap += (sigma(r, c) * rho(c, r)).real();
  const double inner =
      std::sqrt(std::max(0.0, overlap + 2.0 * std::sqrt(det2(rho) * det2(sigma))));
  const double root = outer + inner;
  return std::clamp(root * root, 0.0, 1.0);
}

bool is_excitation_block_diagonal(const DensityMatrix& rho, double tolerance) {
  const Matrix4& m = rho.matrix();
  const int excitations[4] = {0, 1, 1, 2};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if (excitations[r] != excitations[c] && std::abs(m(r, c)) > tolerance) return false;
  return true;
}

DensityMatrix twirled_product(double c1, double c2, double phase) {
  const double s0 = c1 * c2;
  const double s1 = c1 * (1.0 - c2);
  const double s2 = (1.0 - c1) * c2;
  const double s3 = (1.0 - c1) * (1.0 - c2);
  Matrix4 m = Matrix4::Zero();
  m(0, 0) = s0;
  m(1, 1) = s1;
  m(2, 2) = s2;
  m(3, 3) = s3;
  m(1, 2) = std::sqrt(s1 * s2) * std::polar(1.0, phase);
  m(2, 1) = std::conj(m(1, 2));
  return DensityMatrix(m);
}

ClosestSeparable best_twirled_product(const DensityMatrix& rho) {
  if (!is_excitation_block_diagonal(rho)) {
    throw Error(ErrorCode::UnsupportedScenario,
                "closest-state search needs a state without coherence between "
                "different excitation numbers");
  }
  const Matrix4& m = rho.matrix();
  const double g = std::sqrt(std::max(0.0, m(0, 0).real()));
  const double e = std::sqrt(std::max(0.0, m(3, 3).real()));
  const double a = m(1, 1).real(), b = m(2, 2).real();
  const double z = std::abs(m(1, 2));
  // c1 = cos^2(alpha), c2 = cos^2(beta). In angles the root fidelity has no
  // square-root cusps at the faces c = 0, 1, where optima often sit.
  auto root_fidelity = [&](double alpha, double beta) {
    const double ca = std::abs(std::cos(alpha)), sa = std::abs(std::sin(alpha));
    const double cb = std::abs(std::cos(beta)), sb = std::abs(std::sin(beta));
    const double r1 = ca * sb, r2 = sa * cb;
    return g * ca * cb + e * sa * sb +
           std::sqrt(std::max(0.0, a * r1 * r1 + b * r2 * r2 + 2.0 * z * r1 * r2));
  };

  constexpr int kGrid = 40;
  const double quarter = std::acos(0.0);
  double step = quarter / kGrid;
  double alpha = 0.0, beta = 0.0, best = -1.0;
  for (int i = 0; i <= kGrid; ++i) {
    for (int j = 0; j <= kGrid; ++j) {
      const double v = root_fidelity(i * step, j * step);
      if (v > best) {
        best = v;
        alpha = i * step;
        beta = j * step;
      }
    }
  }
  // Pattern search on a shrinking 5x5 stencil.
  while (step > 1e-13) {
    double next_alpha = alpha, next_beta = beta;
    for (int i = -2; i <= 2; ++i) {
      for (int j = -2; j <= 2; ++j) {
        const double v = root_fidelity(alpha + 0.5 * i * step, beta + 0.5 * j * step);
        if (v > best) {
          best = v;
          next_alpha = alpha + 0.5 * i * step;
          next_beta = beta + 0.5 * j * step;
        }
      }
    }
    if (next_alpha == alpha && next_beta == beta) step *= 0.5;
    alpha = next_alpha;
    beta = next_beta;
  }

  const double c1 = std::pow(std::cos(alpha), 2), c2 = std::pow(std::cos(beta), 2);
  const DensityMatrix sigma = twirled_product(c1, c2, std::arg(m(1, 2)));
  return {sigma, excitation_block_fidelity(m, sigma.matrix()), SigmaSource::TwirledProduct,
          std::nullopt, 0.0};
}

ClosestSeparable closest_separable_state(Model model, InitialState initial, double t,
                                         const DensityMatrix& rho,
                                         const CollectiveParams* collective) {
  if (model == Model::Oun) {
    if (initial != InitialState::BellPsiPlus) {
      throw Error(ErrorCode::UnsupportedScenario,
                  "no closest separable state for the OUN channel with initial g1e2");
    }
    const DensityMatrix sigma = states::separable_oun_sigma();
    const double f = states::fidelity(rho, sigma);
    return {sigma, f, SigmaSource::Constant, std::nullopt, f};
  }
  if (collective == nullptr) {
    throw Error(ErrorCode::BadParams, "collective closest state needs the model parameters");
  }
  if (!is_excitation_block_diagonal(rho)) {
    throw Error(ErrorCode::UnsupportedScenario,
                "collective closest state needs an excitation-block-diagonal state");
  }

  ClosestSeparable product = best_twirled_product(rho);

  constexpr int kFamilyGrid = 100;
  double grid_best = -1.0;
  double grid_x = 0.0;
  for (int i = 0; i <= kFamilyGrid; ++i) {
    const double x = static_cast<double>(i) / kFamilyGrid;
    const double f = excitation_block_fidelity(
        rho.matrix(), states::separable_collective_sigma(initial, x).matrix());
    if (f > grid_best) {
      grid_best = f;
      grid_x = x;
    }
  }

  const double fp = correlations::separable_fidelity_from_concurrence(
      correlations::concurrence(rho));
  const double x_formula = collective_mixing_formula(initial, *collective, t, fp);
  std::optional<double> formula_x;
  double formula_fidelity = -1.0;
  if (std::isfinite(x_formula) && x_formula >= 0.0 && x_formula <= 1.0) {
    formula_x = x_formula;
    formula_fidelity = excitation_block_fidelity(
        rho.matrix(), states::separable_collective_sigma(initial, x_formula).matrix());
  }

  const double best = std::max({product.fidelity, grid_best, formula_fidelity});
  if (formula_x && formula_fidelity >= best - kTieTolerance) {
    return {states::separable_collective_sigma(initial, *formula_x), formula_fidelity,
            SigmaSource::Formula, formula_x, grid_best};
  }
  if (grid_best >= best - kTieTolerance) {
    return {states::separable_collective_sigma(initial, grid_x), grid_best,
            SigmaSource::FamilyGrid, formula_x, grid_best};
  }
  product.formula_x = formula_x;
  product.grid_fidelity = grid_best;
  return product;
}

std::vector<ClosestSeparable> closest_separable_trajectory(Model model, InitialState initial,
                                                           const Trajectory& rho_traj,
                                                           const CollectiveParams* collective) {
  std::vector<ClosestSeparable> out;
  out.reserve(rho_traj.size());
  for (std::size_t k = 0; k < rho_traj.size(); ++k) {
    out.push_back(closest_separable_state(model, initial, rho_traj.times[k],
                                          rho_traj.states[k], collective));
  }
  return out;
}

double correlation_factor(const CorrelationAmount& amount) {
  const double sign = amount.direction == Direction::Decay ? -1.0 : 1.0;
  return 2.0 * amount.change * (1.0 - (2.0 * amount.initial + sign * amount.change) / 2.0);
}

QslResult tau_qc_entanglement(const CorrelationAmount& amount, const KAverages& K,
                              double tau_actual) {
  QslResult out;
  out.amount = amount;
  out.K = K;
  out.tau_actual = tau_actual;
  if (amount.change <= 1e-15) return out;
  if (!(K.op > 1e-14 && K.tr > 1e-14 && K.hs > 1e-14)) {
    throw Error(ErrorCode::NoDynamics,
                "norm averages vanish while the correlation changed; bound undefined");
  }
  const double factor = correlation_factor(amount);
  out.tau_op = factor / K.op;
  out.tau_tr = factor / K.tr;
  out.tau_hs = factor / K.hs;
  out.tau_unified = std::max({out.tau_op, out.tau_tr, out.tau_hs});
  return out;
}

QslResult tau_qc_discord(Model model, const CorrelationAmount& amount, const KAverages& K,
                         double tau_actual) {
  if (model == Model::Collective) {
    throw Error(ErrorCode::UnsupportedScenario,
                "Bures discord bound needs Bell-diagonal states; the collective model "
                "does not preserve them");
  }
  return tau_qc_entanglement(amount, K, tau_actual);
}

void validate(const Scenario& s) {
  if (s.model == Model::Collective && s.measure == Measure::Discord) {
    throw Error(ErrorCode::UnsupportedScenario,
                "discord is not available for the collective model");
  }
  if (s.model == Model::Oun && s.initial == InitialState::G1E2) {
    throw Error(ErrorCode::UnsupportedScenario,
                "the OUN channel is only defined here for the initial Bell state");
  }
  if (s.model == Model::Oun) {
    if (!std::holds_alternative<OunParams>(s.params)) {
      throw Error(ErrorCode::BadParams, "OUN scenario needs OUN parameters");
    }
    std::get<OunParams>(s.params).validate();
  } else {
    if (!std::holds_alternative<CollectiveParams>(s.params)) {
      throw Error(ErrorCode::BadParams, "collective scenario needs collective parameters");
    }
    std::get<CollectiveParams>(s.params).validate();
  }
  if (!(s.tau > 0.0) || !std::isfinite(s.tau)) {
    throw Error(ErrorCode::BadParams, "tau must be finite and > 0");
  }
  if (s.steps < 10 || s.steps % 2 != 0) {
    throw Error(ErrorCode::BadSteps, "steps must be even and >= 10");
  }
}

Generator make_generator(const Scenario& s) {
  if (s.model == Model::Oun) return channels::oun_generator(std::get<OunParams>(s.params));
  return channels::collective_generator(std::get<CollectiveParams>(s.params));
}

namespace {

// For each node k, the index of the last strict local extremum of q before k.
std::vector<std::size_t> segment_starts(const std::vector<double>& q) {
  constexpr double kFlat = 1e-12;
  std::vector<std::size_t> out(q.size(), 0);
  std::size_t start = 0;
  int direction = 0;
  std::size_t turning = 0;  // node where the current monotone run began
  for (std::size_t k = 1; k < q.size(); ++k) {
    const double d = q[k] - q[k - 1];
    if (std::abs(d) > kFlat) {
      const int dir = d > 0 ? 1 : -1;
      if (direction != 0 && dir != direction) start = turning;
      direction = dir;
      turning = k;
    }
    out[k] = start;
  }
  return out;
}

}  // namespace

ScenarioRun run_scenario(const Scenario& s) {
  validate(s);
  return run_scenario(s, make_generator(s));
}

ScenarioRun run_scenario(const Scenario& s, const Generator& gen) {
  validate(s);
  ScenarioRun run;
  run.scenario = s;
  run.trajectory = dynamics::evolve(gen, states::initial_state(s.initial), s.tau, s.steps);
  const Trajectory& traj = run.trajectory;

  const CollectiveParams* collective =
      s.model == Model::Collective ? &std::get<CollectiveParams>(s.params) : nullptr;
  const auto closest = closest_separable_trajectory(s.model, s.initial, traj, collective);

  const std::size_t n = traj.size();
  run.samples.resize(n);
  std::vector<double> measure(n), op(n), tr(n), hs(n);
  for (std::size_t k = 0; k < n; ++k) {
    const DensityMatrix& rho = traj.states[k];
    NodeSample& sample = run.samples[k];
    sample.t = traj.times[k];
    sample.concurrence = correlations::concurrence(rho);
    sample.entanglement = correlations::bures_entanglement(sample.concurrence);
    sample.separable_fidelity =
        correlations::separable_fidelity_from_concurrence(sample.concurrence);
    if (states::is_bell_diagonal(rho)) {
      sample.discord = correlations::bures_discord_bell_diagonal(states::bell_coeffs(rho));
    }
    sample.sigma_fidelity = closest[k].fidelity;
    sample.sigma_source = closest[k].source;
    sample.norms = node_norms(gen, traj.times[k], rho, closest[k].sigma);

    if (s.measure == Measure::Discord) {
      if (!sample.discord) {
        throw Error(ErrorCode::NotBellDiagonal,
                    "state left the Bell-diagonal class at t=" + std::to_string(sample.t));
      }
      measure[k] = *sample.discord;
    } else {
      measure[k] = sample.entanglement;
    }
    const Norms sum = sample.norms.sum();
    op[k] = sum.op;
    tr[k] = sum.trace;
    hs[k] = sum.hs;

    auto& counts = run.sigma_sources;
    switch (closest[k].source) {
      case SigmaSource::Constant: ++counts.constant; break;
      case SigmaSource::Formula: ++counts.formula; break;
      case SigmaSource::FamilyGrid: ++counts.family_grid; break;
      case SigmaSource::TwirledProduct: ++counts.twirled_product; break;
    }
    if (s.model == Model::Collective && !closest[k].formula_x) ++counts.formula_out_of_range;
  }

  auto bound = [&](const CorrelationAmount& amount, const KAverages& K, double actual) {
    return s.measure == Measure::Discord ? tau_qc_discord(s.model, amount, K, actual)
                                         : tau_qc_entanglement(amount, K, actual);
  };

  run.end_time_results.reserve(n);
  if (s.reference == EndTimeReference::Initial) {
    const auto k_op = dynamics::prefix_time_averages(op, traj.times);
    const auto k_tr = dynamics::prefix_time_averages(tr, traj.times);
    const auto k_hs = dynamics::prefix_time_averages(hs, traj.times);
    for (std::size_t k = 0; k < n; ++k) {
      const auto amount = correlations::correlation_change(measure[0], measure[k]);
      run.end_time_results.push_back(bound(amount, {k_op[k], k_tr[k], k_hs[k]}, traj.times[k]));
    }
  } else {
    const auto starts = segment_starts(measure);
    const double h = traj.step();
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t first = starts[k];
      KAverages K{op[k], tr[k], hs[k]};
      if (k > first) {
        const double span = traj.times[k] - traj.times[first];
        K = {dynamics::integrate_nodes(op, h, first, k) / span,
             dynamics::integrate_nodes(tr, h, first, k) / span,
             dynamics::integrate_nodes(hs, h, first, k) / span};
      }
      const auto amount = correlations::correlation_change(measure[first], measure[k]);
      run.end_time_results.push_back(bound(amount, K, traj.times[k] - traj.times[first]));
    }
  }
  return run;
}

}  // namespace qslcorr::qsl
