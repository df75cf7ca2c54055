#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "qslcorr/dynamics.hpp"
#include "qslcorr/error.hpp"
#include "qslcorr/qsl.hpp"

using namespace qslcorr;
using namespace qslcorr::dynamics;
using channels::CollectiveParams;
using channels::OunParams;

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

std::vector<double> grid(double tau, int intervals) {
  std::vector<double> t(intervals + 1);
  for (int k = 0; k <= intervals; ++k) t[k] = tau * k / intervals;
  return t;
}

double max_error(const Trajectory& coarse, const Trajectory& fine) {
  const std::size_t stride = (fine.size() - 1) / (coarse.size() - 1);
  double err = 0.0;
  for (std::size_t k = 0; k < coarse.size(); ++k) {
    err = std::max(err, (coarse.states[k].matrix() - fine.states[k * stride].matrix())
                            .cwiseAbs().maxCoeff());
  }
  return err;
}

}  // namespace

TEST_CASE("default_steps") {
  CHECK(default_steps(1.0) == 2000);
  CHECK(default_steps(0.001) == 10);
  CHECK(default_steps(2.5) == 5000);
  CHECK(default_steps(0.0011) % 2 == 0);
}

TEST_CASE("zero generator leaves the state unchanged") {
  const auto rho = states::bell_psi_plus();
  const auto traj = evolve(channels::Generator::zero(), rho, 1.0, 10);
  REQUIRE(traj.size() == 11);
  for (const auto& s : traj.states) CHECK((s.matrix() - rho.matrix()).norm() < 1e-15);
  CHECK(traj.tau() == 1.0);
}

TEST_CASE("OUN coherence follows p_t^2 / 2") {
  const OunParams p{1.0, 0.1};
  const auto traj = evolve(channels::Generator::oun(p), states::bell_psi_plus(), 5.0, 1000);
  for (std::size_t k = 0; k < traj.size(); k += 50) {
    const double pt = channels::oun_decoherence_function(p, traj.times[k]);
    CHECK(std::abs(traj.states[k].matrix()(1, 2).real() - 0.5 * pt * pt) < 1e-8);
  }
}

TEST_CASE("halving the step reduces the error by at least 12") {
  const CollectiveParams p{1.0, 0.95, 4.65, 0.0};
  const auto gen = channels::Generator::collective(p);
  const auto rho0 = states::state_g1e2();
  const auto reference = evolve(gen, rho0, 1.0, 16000);
  const double e20 = max_error(evolve(gen, rho0, 1.0, 20), reference);
  const double e40 = max_error(evolve(gen, rho0, 1.0, 40), reference);
  CHECK(e20 / e40 >= 12.0);
}

TEST_CASE("step count validation") {
  const auto gen = channels::Generator::zero();
  const auto rho = states::bell_psi_plus();
  CHECK(code_of([&] { evolve(gen, rho, 1.0, 8); }) == ErrorCode::BadSteps);
  CHECK(code_of([&] { evolve(gen, rho, 1.0, 11); }) == ErrorCode::BadSteps);
  CHECK(code_of([&] { evolve(gen, rho, 0.0, 10); }) == ErrorCode::BadParams);
}

TEST_CASE("trace drift stays at rounding level") {
  const auto oun = evolve(channels::Generator::oun({2.0, 0.5}), states::bell_psi_plus(), 5.0, 10000);
  CHECK(oun.diagnostics.max_trace_drift <= 1e-9);
  const auto col = evolve(channels::Generator::collective({1.0, 0.95, 4.65, 1.0}),
                          states::state_g1e2(), 5.0, 10000);
  CHECK(col.diagnostics.max_trace_drift <= 1e-9);
  for (const auto& s : col.states) CHECK(std::abs(s.matrix().trace().real() - 1.0) <= 1e-12);
}

TEST_CASE("dephasing never increases purity") {
  const auto traj = evolve(channels::Generator::oun({1.0, 0.1}), states::bell_psi_plus(), 5.0, 2000);
  for (std::size_t k = 1; k < traj.size(); ++k) {
    CHECK(traj.states[k].purity() <= traj.states[k - 1].purity() + 1e-14);
  }
}

TEST_CASE("time_average examples") {
  const auto t = grid(1.0, 10);
  CHECK(time_average(std::vector<double>(11, 3.0), t) == doctest::Approx(3.0));
  CHECK(std::abs(time_average(t, t) - 0.5) < 1e-15);

  for (int intervals : {1000, 1001}) {
    const auto ts = grid(std::numbers::pi, intervals);
    std::vector<double> s(ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k) s[k] = std::sin(ts[k]);
    CHECK(std::abs(time_average(s, ts) - 2.0 / std::numbers::pi) < 1e-8);
  }

  // A single interval falls back to the trapezoid.
  const std::vector<double> two_t{0.0, 2.0}, two_v{1.0, 3.0};
  CHECK(time_average(two_v, two_t) == doctest::Approx(2.0));
}

TEST_CASE("time_average rejects bad grids") {
  const std::vector<double> t{0.0, 0.5, 1.0};
  CHECK(code_of([&] { time_average(std::vector<double>{1.0, 2.0}, t); }) == ErrorCode::GridMismatch);
  CHECK(code_of([] { time_average(std::vector<double>{1.0}, std::vector<double>{0.0}); }) ==
        ErrorCode::GridMismatch);
  CHECK(code_of([] { time_average(std::vector<double>{1.0, 1.0, 1.0}, std::vector<double>{0.0, 0.1, 1.0}); }) ==
        ErrorCode::GridMismatch);
}

TEST_CASE("prefix averages") {
  const auto t = grid(2.0, 20);
  const auto avg = prefix_time_averages(t, t);
  REQUIRE(avg.size() == t.size());
  CHECK(avg[0] == 0.0);
  for (std::size_t k = 1; k < t.size(); ++k) CHECK(std::abs(avg[k] - t[k] / 2.0) < 1e-14);
  std::vector<double> c(t.size(), 0.7);
  for (double a : prefix_time_averages(c, t)) CHECK(a == doctest::Approx(0.7));
  CHECK(integrate_nodes(t, 0.1, 4, 4) == 0.0);
}

TEST_CASE("Simpson and trapezoid agree on the norm integrands") {
  qsl::Scenario s;
  s.model = qsl::Model::Collective;
  s.initial = states::InitialState::G1E2;
  s.params = CollectiveParams{1.0, 0.95, 4.65, 0.0};
  const auto run = qsl::run_scenario(s);
  const auto& t = run.trajectory.times;
  std::vector<double> op(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) op[k] = run.samples[k].norms.sum().op;
  double trap = 0.0;
  for (std::size_t k = 1; k < t.size(); ++k) trap += 0.5 * (op[k] + op[k - 1]) * (t[k] - t[k - 1]);
  trap /= t.back();
  CHECK(std::abs(time_average(op, t) - trap) < 1e-5);
  CHECK(std::abs(time_average(op, t) - run.final_result().K.op) < 1e-12);
}
