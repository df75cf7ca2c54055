#pragma once

// Speed-limit time for a change of Bures entanglement or discord.
//
// For a change Delta Q of a Bures measure starting from Q_0, the bound is
//
//   tau_QC = max{1/K_op, 1/K_tr, 1/K_hs} * 2 Delta Q (1 - (2 Q_0 -/+ Delta Q) / 2)
//
// (minus for decay, plus for creation), where K_x is the time average of
// ||(L_t (x) id) rho_psi(t)||_x + ||(L_t (x) id) sigma_phi(t)||_x over the
// spectral purifications of rho_t and of its closest separable state.

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "qslcorr/channels.hpp"
#include "qslcorr/correlations.hpp"
#include "qslcorr/dynamics.hpp"
#include "qslcorr/states.hpp"

namespace qslcorr::qsl {

using channels::CollectiveParams;
using channels::Generator;
using channels::OunParams;
using correlations::CorrelationAmount;
using correlations::Direction;
using dynamics::Trajectory;
using linalg::Norms;
using states::DensityMatrix;
using states::InitialState;

enum class Model { Oun, Collective };
enum class Measure { Entanglement, Discord };

struct NodeNorms {
  Norms rho;    // ||(L_t (x) id) rho_psi||
  Norms sigma;  // ||(L_t (x) id) sigma_phi||

  Norms sum() const {
    return {rho.op + sigma.op, rho.trace + sigma.trace, rho.hs + sigma.hs};
  }
};

/// Per node: purify rho_t and sigma_t, apply L_t (x) id to both projectors and
/// take op/trace/HS norms. Throws GridMismatch if the sigma count differs.
std::vector<NodeNorms> norm_integrands(const Generator& gen, const Trajectory& rho_traj,
                                       std::span<const DensityMatrix> sigmas);

NodeNorms node_norms(const Generator& gen, double t, const DensityMatrix& rho,
                     const DensityMatrix& sigma);

// ---------------------------------------------------------------------------
// Closest separable states

enum class SigmaSource {
  Constant,        // OUN: fixed 1/2 (|01><01| + |10><10|)
  Formula,         // collective family with the closed-form mixing parameter
  FamilyGrid,      // collective family, best x on a 101-point grid
  TwirledProduct,  // phase-twirled product state, optimized numerically
};

const char* to_string(SigmaSource s);

struct ClosestSeparable {
  DensityMatrix sigma;
  double fidelity = 0.0;       // F(rho_t, sigma)
  SigmaSource source = SigmaSource::Constant;
  std::optional<double> formula_x;  // closed-form x, when it lies in [0, 1]
  double grid_fidelity = 0.0;  // best F over the 101-point family grid
};

/// Closed-form mixing parameter of the collective families:
///   G1E2:        x = e^{-t Lambda} F_P / (e^{t Lambda} - cosh(t Lambda12))
///   BellPsiPlus: x = 4 e^{t (Lambda + Lambda12)} F_P
/// May be non-finite or outside [0, 1].
double collective_mixing_formula(InitialState initial, const CollectiveParams& p, double t,
                                 double separable_fidelity);

/// Fidelity between two states that are both block diagonal in excitation
/// number ({gg}, {ge, eg}, {ee}). Closed form; the caller guarantees the
/// structure.
double excitation_block_fidelity(const linalg::Matrix4& rho, const linalg::Matrix4& sigma);

/// True when rho commutes with every Rz(theta) (x) Rz(theta), i.e. it has no
/// coherence between different excitation numbers.
bool is_excitation_block_diagonal(const DensityMatrix& rho, double tolerance = 1e-12);

/// The Rz(theta) (x) Rz(theta)-twirl of |a>|b> with populations |<g|a>|^2 = c1,
/// |<g|b>|^2 = c2 and the single-excitation coherence phase `phase`.
DensityMatrix twirled_product(double c1, double c2, double phase = 0.0);

/// Best twirled product state for an excitation-block-diagonal rho. Such a
/// rho is Rz(theta) (x) Rz(theta)-invariant, so twirling any closest separable
/// state keeps it closest; the search covers the twirled products only.
/// Throws UnsupportedScenario when rho lacks that structure.
ClosestSeparable best_twirled_product(const DensityMatrix& rho);

/// Closest separable state to rho_t for a supported (model, initial) pair.
/// `collective` is required for Model::Collective.
ClosestSeparable closest_separable_state(Model model, InitialState initial, double t,
                                         const DensityMatrix& rho,
                                         const CollectiveParams* collective = nullptr);

std::vector<ClosestSeparable> closest_separable_trajectory(
    Model model, InitialState initial, const Trajectory& rho_traj,
    const CollectiveParams* collective = nullptr);

// ---------------------------------------------------------------------------
// Bounds

struct KAverages {
  double op = 0.0;
  double tr = 0.0;
  double hs = 0.0;
};

struct QslResult {
  CorrelationAmount amount;
  KAverages K;
  double tau_op = 0.0;
  double tau_tr = 0.0;
  double tau_hs = 0.0;
  double tau_unified = 0.0;
  double tau_actual = 0.0;

  /// tau_unified <= tau_actual + 1e-6
  bool bound_satisfied() const { return tau_unified <= tau_actual + 1e-6; }
};

/// 2 dQ (1 - (2 Q0 -/+ dQ) / 2) with the sign from amount.direction.
double correlation_factor(const CorrelationAmount& amount);

/// A zero change gives all taus 0. Otherwise throws NoDynamics if any
/// K <= 1e-14.
QslResult tau_qc_entanglement(const CorrelationAmount& amount, const KAverages& K,
                              double tau_actual);

/// Same bound for Bures discord. Throws UnsupportedScenario for the
/// collective model, whose states leave the Bell-diagonal class.
QslResult tau_qc_discord(Model model, const CorrelationAmount& amount, const KAverages& K,
                         double tau_actual);

// ---------------------------------------------------------------------------
// Scenarios

/// Which state the change of correlation is measured from when every grid
/// node is treated as an end time.
enum class EndTimeReference {
  Initial,  // rho_0, K averaged over [0, t_k]
  Segment,  // last local extremum of the measure before t_k
};

struct Scenario {
  Model model = Model::Oun;
  InitialState initial = InitialState::BellPsiPlus;
  Measure measure = Measure::Entanglement;
  std::variant<OunParams, CollectiveParams> params = OunParams{};
  double tau = 1.0;
  int steps = 2000;
  EndTimeReference reference = EndTimeReference::Initial;
};

/// Throws UnsupportedScenario for (collective, discord) and (oun, g1e2),
/// BadParams / BadSteps for invalid numbers.
void validate(const Scenario& s);

Generator make_generator(const Scenario& s);

struct NodeSample {
  double t = 0.0;
  double concurrence = 0.0;
  double entanglement = 0.0;          // E^B
  std::optional<double> discord;      // D^B, only for Bell-diagonal states
  double separable_fidelity = 0.0;    // F_P from the concurrence
  double sigma_fidelity = 0.0;        // F(rho_t, sigma_t)
  SigmaSource sigma_source = SigmaSource::Constant;
  NodeNorms norms;
};

struct SigmaSourceCounts {
  std::size_t constant = 0;
  std::size_t formula = 0;
  std::size_t family_grid = 0;
  std::size_t twirled_product = 0;
  std::size_t formula_out_of_range = 0;
};

struct ScenarioRun {
  Scenario scenario;
  Trajectory trajectory;
  std::vector<NodeSample> samples;
  /// One result per grid node, node k treated as the end time.
  std::vector<QslResult> end_time_results;
  SigmaSourceCounts sigma_sources;

  const QslResult& final_result() const { return end_time_results.back(); }
};

/// Evolve, sample measures and norms at every node, and evaluate the bound
/// for every end time.
ScenarioRun run_scenario(const Scenario& s);

/// Same with an explicit generator (the scenario's params are then ignored
/// for the dynamics but still select the closest-state family).
ScenarioRun run_scenario(const Scenario& s, const Generator& gen);

}  // namespace qslcorr::qsl
