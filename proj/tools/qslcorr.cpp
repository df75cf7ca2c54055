// qslcorr: run a scenario, sweep a parameter, or run the acceptance checks.
//
//   qslcorr run --config FILE [--model M] [--kappa K] ... [--out FILE]
//   qslcorr sweep --config FILE --param NAME --from A --to B --count N [--jobs N]
//   qslcorr selftest
//
// Errors print one line "<Code>: <message>" on stderr and exit with status 2.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "qslcorr/config.hpp"
#include "qslcorr/csv.hpp"
#include "qslcorr/error.hpp"
#include "qslcorr/selftest.hpp"
#include "qslcorr/sweep.hpp"

namespace {

using qslcorr::Error;
using qslcorr::ErrorCode;
namespace cli = qslcorr::cli;

// Scenario flags mirror config keys; values go through the config parser.
const char* const kScenarioKeys[] = {"model", "initial", "measure", "kappa", "lambda",
                                     "lambda_ratio", "Lambda", "Lambda12", "M12", "omega",
                                     "tau", "steps", "reference"};

struct ScenarioFlags {
  std::string config_path;
  std::map<std::string, std::string> values;

  void attach(CLI::App* app) {
    app->add_option("--config", config_path, "Scenario file (key: value lines)");
    for (const char* key : kScenarioKeys) {
      app->add_option(std::string("--") + key, values[key], std::string("Override '") + key + "'");
    }
  }

  cli::ScenarioConfig load(const CLI::App* app) const {
    cli::ScenarioConfig config;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw Error(ErrorCode::IoError, "cannot read " + config_path);
      std::stringstream text;
      text << in.rdbuf();
      config = cli::parse_config_unvalidated(text.str());
    }
    for (const char* key : kScenarioKeys) {
      if (app->count(std::string("--") + key) > 0) {
        try {
          cli::set_field(config, key, values.at(key));
        } catch (const Error& e) {
          throw Error(e.code(), std::string("--") + key + ": " + e.message());
        }
      }
    }
    return config;
  }
};

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum speed limits for Bures entanglement and discord"};
  app.require_subcommand(1);

  ScenarioFlags run_flags;
  std::string run_out;
  auto* run = app.add_subcommand("run", "Simulate one scenario and write the trajectory CSV");
  run_flags.attach(run);
  run->add_option("--out", run_out, "Output file (default stdout)");

  ScenarioFlags sweep_flags;
  std::string sweep_out, sweep_param;
  double sweep_from = 0.0, sweep_to = 0.0;
  int sweep_count = 0, jobs = 1;
  auto* sweep = app.add_subcommand("sweep", "Evaluate the bound over a parameter range");
  sweep_flags.attach(sweep);
  sweep->add_option("--param", sweep_param, "Parameter to sweep");
  sweep->add_option("--from", sweep_from, "First value");
  sweep->add_option("--to", sweep_to, "Last value");
  sweep->add_option("--count", sweep_count, "Number of points (>= 2)");
  sweep->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  sweep->add_option("--out", sweep_out, "Output file (default stdout)");

  auto* selftest = app.add_subcommand("selftest", "Run the acceptance checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "ParseError: " << e.what() << '\n';
    return 2;
  }

  try {
    if (run->parsed()) {
      const auto config = run_flags.load(run);
      cli::validate(config);
      const auto result = qslcorr::qsl::run_scenario(config.scenario());
      write_output(run_out, cli::emit_trajectory_csv(result));
    } else if (sweep->parsed()) {
      auto config = sweep_flags.load(sweep);
      if (!config.sweep) config.sweep.emplace();
      if (sweep->count("--param")) config.sweep->param = sweep_param;
      if (sweep->count("--from")) config.sweep->from = sweep_from;
      if (sweep->count("--to")) config.sweep->to = sweep_to;
      if (sweep->count("--count")) config.sweep->count = sweep_count;
      write_output(sweep_out, cli::emit_sweep_csv(cli::run_sweep(config, jobs)));
    } else if (selftest->parsed()) {
      return qslcorr::selftest::run_all(std::cout) == 0 ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "InternalError: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
