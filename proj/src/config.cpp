#include "qslcorr/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "qslcorr/error.hpp"

namespace qslcorr::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(std::string_view key, std::string_view value) {
  double out = 0.0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || value.empty()) {
    throw Error(ErrorCode::ParseError,
                std::string(key) + ": expected a number, got '" + std::string(value) + "'");
  }
  return out;
}

int to_int(std::string_view key, std::string_view value) {
  int out = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || value.empty()) {
    throw Error(ErrorCode::ParseError,
                std::string(key) + ": expected an integer, got '" + std::string(value) + "'");
  }
  return out;
}

[[noreturn]] void bad_choice(std::string_view key, std::string_view value,
                             std::string_view allowed) {
  throw Error(ErrorCode::ParseError, std::string(key) + ": '" + std::string(value) +
                                         "' is not one of " + std::string(allowed));
}

void require(bool ok, const std::string& constraint) {
  if (!ok) throw Error(ErrorCode::ValidationError, constraint);
}

}  // namespace

qsl::Scenario ScenarioConfig::scenario() const {
  qsl::Scenario s;
  s.model = model;
  s.initial = initial;
  s.measure = measure;
  if (model == qsl::Model::Oun) {
    s.params = channels::OunParams{kappa, lambda.value_or(lambda_ratio * kappa)};
  } else {
    channels::CollectiveParams p;
    p.Lambda = Lambda;
    p.Lambda12 = Lambda12.value_or(0.95 * Lambda);
    p.M12 = M12.value_or(4.65 * Lambda);
    p.omega = omega;
    s.params = p;
  }
  s.tau = tau;
  s.steps = steps.value_or(std::isfinite(tau) && tau > 0.0 ? dynamics::default_steps(tau) : 0);
  s.reference = reference;
  return s;
}

const std::vector<std::string>& sweep_parameters() {
  static const std::vector<std::string> names{"kappa", "lambda", "lambda_ratio", "Lambda",
                                              "Lambda12", "M12", "omega", "tau"};
  return names;
}

void set_parameter(ScenarioConfig& c, std::string_view name, double v) {
  if (name == "kappa") c.kappa = v;
  else if (name == "lambda") c.lambda = v;
  else if (name == "lambda_ratio") c.lambda_ratio = v;
  else if (name == "Lambda") c.Lambda = v;
  else if (name == "Lambda12") c.Lambda12 = v;
  else if (name == "M12") c.M12 = v;
  else if (name == "omega") c.omega = v;
  else if (name == "tau") c.tau = v;
  else throw Error(ErrorCode::ParseError, "unknown parameter '" + std::string(name) + "'");
}

void set_field(ScenarioConfig& c, std::string_view key, std::string_view value) {
  if (key == "model") {
    if (value == "oun") c.model = qsl::Model::Oun;
    else if (value == "collective") c.model = qsl::Model::Collective;
    else bad_choice(key, value, "oun, collective");
  } else if (key == "initial") {
    if (value == "bell-psi-plus") c.initial = states::InitialState::BellPsiPlus;
    else if (value == "g1e2") c.initial = states::InitialState::G1E2;
    else bad_choice(key, value, "bell-psi-plus, g1e2");
  } else if (key == "measure") {
    if (value == "entanglement") c.measure = qsl::Measure::Entanglement;
    else if (value == "discord") c.measure = qsl::Measure::Discord;
    else bad_choice(key, value, "entanglement, discord");
  } else if (key == "reference") {
    if (value == "initial") c.reference = qsl::EndTimeReference::Initial;
    else if (value == "segment") c.reference = qsl::EndTimeReference::Segment;
    else bad_choice(key, value, "initial, segment");
  } else if (key == "steps") {
    c.steps = to_int(key, value);
  } else if (key == "sweep.param") {
    if (!c.sweep) c.sweep.emplace();
    c.sweep->param = std::string(value);
  } else if (key == "sweep.from") {
    if (!c.sweep) c.sweep.emplace();
    c.sweep->from = to_double(key, value);
  } else if (key == "sweep.to") {
    if (!c.sweep) c.sweep.emplace();
    c.sweep->to = to_double(key, value);
  } else if (key == "sweep.count") {
    if (!c.sweep) c.sweep.emplace();
    c.sweep->count = to_int(key, value);
  } else {
    const double v = to_double(key, value);
    set_parameter(c, key, v);
  }
}

void validate(const ScenarioConfig& c) {
  require(!(c.model == qsl::Model::Collective && c.measure == qsl::Measure::Discord),
          "UnsupportedScenario: discord is not available for the collective model");
  require(!(c.model == qsl::Model::Oun && c.initial == states::InitialState::G1E2),
          "UnsupportedScenario: the oun model needs initial = bell-psi-plus");
  require(std::isfinite(c.tau) && c.tau > 0.0, "tau must be finite and > 0");
  if (c.steps) require(*c.steps >= 10 && *c.steps % 2 == 0, "steps must be even and >= 10");
  if (c.sweep) {
    const auto& s = *c.sweep;
    const auto& names = sweep_parameters();
    require(std::find(names.begin(), names.end(), s.param) != names.end(),
            "sweep.param '" + s.param + "' is not a sweepable parameter");
    require(std::isfinite(s.from) && std::isfinite(s.to), "sweep bounds must be finite");
    require(s.count >= 2, "sweep.count must be >= 2");
  }
  try {
    qsl::validate(c.scenario());
  } catch (const Error& e) {
    throw Error(ErrorCode::ValidationError, e.what());
  }
}

ScenarioConfig parse_config_unvalidated(std::string_view text) {
  ScenarioConfig c;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto sep = line.find_first_of(":=");
    if (sep == std::string_view::npos) {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(line_no) + ": expected 'key: value'");
    }
    const auto key = trim(line.substr(0, sep));
    const auto value = trim(line.substr(sep + 1));
    try {
      set_field(c, key, value);
    } catch (const Error& e) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + e.message());
    }
  }
  return c;
}

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig c = parse_config_unvalidated(text);
  validate(c);
  return c;
}

}  // namespace qslcorr::cli
