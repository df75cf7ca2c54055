#pragma once

// Scenario configuration files.
//
// One `key: value` (or `key = value`) per line; `#` starts a comment. Keys:
//
//   model         oun | collective
//   initial       bell-psi-plus | g1e2
//   measure       entanglement | discord
//   kappa, lambda, lambda_ratio          OUN rates (lambda = lambda_ratio * kappa
//                                        unless given)
//   Lambda, Lambda12, M12, omega         collective rates (Lambda12 = 0.95 Lambda,
//                                        M12 = 4.65 Lambda unless given)
//   tau, steps    driving time and RK4 steps (2000 per unit time by default)
//   reference     initial | segment
//   sweep.param, sweep.from, sweep.to, sweep.count

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qslcorr/qsl.hpp"

namespace qslcorr::cli {

struct SweepSpec {
  std::string param;
  double from = 0.0;
  double to = 0.0;
  int count = 0;
};

struct ScenarioConfig {
  qsl::Model model = qsl::Model::Oun;
  states::InitialState initial = states::InitialState::BellPsiPlus;
  qsl::Measure measure = qsl::Measure::Entanglement;
  double kappa = 1.0;
  std::optional<double> lambda;
  double lambda_ratio = 0.1;
  double Lambda = 1.0;
  std::optional<double> Lambda12;
  std::optional<double> M12;
  double omega = 0.0;
  double tau = 1.0;
  std::optional<int> steps;
  qsl::EndTimeReference reference = qsl::EndTimeReference::Initial;
  std::optional<SweepSpec> sweep;

  /// Scenario with all defaults resolved. Does not validate.
  qsl::Scenario scenario() const;
};

/// Parameter names accepted by sweeps.
const std::vector<std::string>& sweep_parameters();

/// Sets one field from its textual value. Throws ParseError for an unknown
/// key or a malformed value.
void set_field(ScenarioConfig& config, std::string_view key, std::string_view value);

/// Sets a numeric sweep parameter. Throws ParseError for unknown names.
void set_parameter(ScenarioConfig& config, std::string_view name, double value);

/// Throws ValidationError naming the violated constraint.
void validate(const ScenarioConfig& config);

/// Parses and validates. ParseError messages carry the line number.
ScenarioConfig parse_config(std::string_view text);

/// Parses without validating, so command-line flags can still override.
ScenarioConfig parse_config_unvalidated(std::string_view text);

}  // namespace qslcorr::cli
