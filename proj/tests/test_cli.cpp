#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "qslcorr/config.hpp"
#include "qslcorr/csv.hpp"
#include "qslcorr/error.hpp"
#include "qslcorr/sweep.hpp"

using namespace qslcorr;
using namespace qslcorr::cli;

namespace {

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

std::size_t line_count(const std::string& text) {
  std::size_t n = 0;
  for (char c : text) n += c == '\n';
  return n;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("parse_config defaults") {
  const auto c = parse_config("model: oun\ninitial: bell-psi-plus\nmeasure: entanglement\n");
  const auto s = c.scenario();
  const auto& p = std::get<channels::OunParams>(s.params);
  CHECK(p.kappa == 1.0);
  CHECK(p.lambda == doctest::Approx(0.1));
  CHECK(s.tau == 1.0);
  CHECK(s.steps == 2000);
  CHECK(s.reference == qsl::EndTimeReference::Initial);
}

TEST_CASE("parse_config grammar") {
  const auto c = parse_config(
      "# collective run\n"
      "model = collective\n"
      "initial: g1e2   # trailing comment\n"
      "\n"
      "Lambda: 2\n"
      "tau: 0.5\n"
      "reference: segment\n");
  const auto s = c.scenario();
  const auto& p = std::get<channels::CollectiveParams>(s.params);
  CHECK(p.Lambda == 2.0);
  CHECK(p.Lambda12 == doctest::Approx(1.9));
  CHECK(p.M12 == doctest::Approx(9.3));
  CHECK(s.steps == 1000);
  CHECK(s.reference == qsl::EndTimeReference::Segment);
}

TEST_CASE("config errors") {
  try {
    parse_config("model: oun\nkapa: 2\n");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(e.message().find("line 2") != std::string::npos);
  }
  try {
    parse_config("model: collective\nmeasure: discord\n");
    FAIL("expected ValidationError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ValidationError);
    CHECK(e.message().find("UnsupportedScenario") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config("kappa: fast\n"), Error);
  CHECK_THROWS_AS(parse_config("kappa: -1\n"), Error);
  CHECK_THROWS_AS(parse_config("model: oun\ninitial: g1e2\n"), Error);
  CHECK_THROWS_AS(parse_config("steps: 11\n"), Error);
}

TEST_CASE("sweep values") {
  const auto v = sweep_values({"kappa", 0.1, 5.0, 50});
  REQUIRE(v.size() == 50);
  CHECK(v.front() == 0.1);
  CHECK(v.back() == 5.0);
}

TEST_CASE("kappa sweep") {
  auto c = parse_config("tau: 0.5\n");
  c.sweep = SweepSpec{"kappa", 0.1, 5.0, 50};
  const auto rows = run_sweep(c, 4);
  REQUIRE(rows.size() == 50);
  const auto csv = emit_sweep_csv(rows);
  CHECK(first_line(csv) == "sweep_value,delta_Q,tau_unified,tau_op,tau_tr,tau_hs");
  CHECK(line_count(csv) == 51);
  CHECK(csv == emit_sweep_csv(run_sweep(c, 1)));
  for (const auto& r : rows) CHECK(r.result.tau_unified > 0.0);
}

TEST_CASE("sweep errors name the first failing point") {
  auto c = parse_config("");
  c.sweep = SweepSpec{"Lambda12", 0.5, 2.0, 4};
  c.model = qsl::Model::Collective;
  CHECK_THROWS_AS(run_sweep(c, 2), Error);
}

TEST_CASE("trajectory csv") {
  const auto c = parse_config("");
  const auto run = qsl::run_scenario(c.scenario());
  const auto csv = emit_trajectory_csv(run);
  CHECK(first_line(csv) ==
        "t,concurrence,E_bures,D_bures,F_P,K_op,K_tr,K_hs,tau_op,tau_tr,tau_hs,tau_unified");
  CHECK(line_count(csv) == 2002);
  std::istringstream rows(csv);
  std::string header, row;
  std::getline(rows, header);
  std::getline(rows, row);
  std::vector<std::string> cells;
  std::stringstream cs(row);
  for (std::string cell; std::getline(cs, cell, ',');) cells.push_back(cell);
  REQUIRE(cells.size() >= 5);
  CHECK(std::stod(cells[0]) == 0.0);
  CHECK(std::stod(cells[1]) == 1.0);
  CHECK(std::abs(std::stod(cells[2]) - 0.292893218813) < 1e-11);
  CHECK(std::stod(cells[4]) == 0.5);
  CHECK(csv == emit_trajectory_csv(qsl::run_scenario(c.scenario())));
}

TEST_CASE("zero dynamics gives zero bounds in the csv") {
  auto s = parse_config("steps: 10\n").scenario();
  const auto csv = emit_trajectory_csv(qsl::run_scenario(s, channels::Generator::zero()));
  std::istringstream rows(csv);
  std::string row;
  std::getline(rows, row);
  while (std::getline(rows, row)) {
    CHECK(row.substr(row.size() - 8) == ",0,0,0,0");
  }
}

TEST_CASE("format_number") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(0.0) == "0");
}

TEST_CASE("command-line binary") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "qslcorr_cli_test";
  fs::create_directories(dir);
  const fs::path cfg = dir / "run.cfg";
  std::ofstream(cfg) << "model: collective\ninitial: g1e2\ntau: 0.2\n";
  const fs::path out = dir / "out.csv";
  const fs::path err = dir / "err.txt";

  std::string cmd = std::string("\"") + QSLCORR_CLI + "\" run --config \"" + cfg.string() +
                    "\" --tau 0.1 --out \"" + out.string() + "\" 2> \"" + err.string() + "\"";
  REQUIRE(std::system(cmd.c_str()) == 0);
  const auto csv = slurp(out);
  // The flag overrides the file: 0.1 * 2000 steps.
  CHECK(line_count(csv) == 202);
  CHECK(slurp(err).empty());

  cmd = std::string("\"") + QSLCORR_CLI + "\" sweep --param kappa --from 0.5 --to 1 --count 3" +
        " --tau 0.1 --jobs 2 --out \"" + out.string() + "\"";
  REQUIRE(std::system(cmd.c_str()) == 0);
  CHECK(line_count(slurp(out)) == 4);

  cmd = std::string("\"") + QSLCORR_CLI + "\" run --kappa nope 2> \"" + err.string() + "\"";
  CHECK(std::system(cmd.c_str()) != 0);
  CHECK(slurp(err).rfind("ParseError: ", 0) == 0);
  fs::remove_all(dir);
}
