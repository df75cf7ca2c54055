#include "qslcorr/selftest.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>

#include "qslcorr/channels.hpp"
#include "qslcorr/correlations.hpp"
#include "qslcorr/dynamics.hpp"
#include "qslcorr/qsl.hpp"
#include "qslcorr/random.hpp"
#include "qslcorr/states.hpp"

namespace qslcorr::selftest {

using channels::CollectiveParams;
using channels::OunParams;
using linalg::Matrix4;
using linalg::Matrix16;
using states::InitialState;

namespace {

constexpr std::uint64_t kSeed = 20240917;

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Check check(std::string label, bool ok, std::string detail) {
  return {std::move(label), ok, std::move(detail)};
}

// max |observed - limit| must stay within tol.
Check within(std::string label, double worst, double tol) {
  return check(std::move(label), worst <= tol, "max deviation " + sci(worst) + " <= " + sci(tol));
}

Check budget(double seconds, double limit) {
  return check("runtime", seconds < limit, sci(seconds) + " s < " + sci(limit) + " s");
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

CollectiveParams figure_two_params() { return {1.0, 0.95, 4.65, 0.0}; }

struct Golden {
  const char* name;
  qsl::Scenario scenario;
};

std::vector<Golden> golden_scenarios() {
  qsl::Scenario oun_e;
  oun_e.params = OunParams{1.0, 0.1};
  qsl::Scenario oun_d = oun_e;
  oun_d.measure = qsl::Measure::Discord;
  qsl::Scenario creation;
  creation.model = qsl::Model::Collective;
  creation.initial = InitialState::G1E2;
  creation.params = figure_two_params();
  qsl::Scenario decay = creation;
  decay.initial = InitialState::BellPsiPlus;
  return {{"oun bell-psi-plus entanglement", oun_e},
          {"oun bell-psi-plus discord", oun_d},
          {"collective g1e2 entanglement", creation},
          {"collective bell-psi-plus entanglement", decay}};
}

double max_norm_diff(const Matrix4& a, const Matrix4& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// Runs `body` for `cases` seeded cases and returns the worst value it reports.
double worst_over(int cases, random::Rng& rng, const std::function<double(random::Rng&)>& body) {
  double worst = 0.0;
  for (int i = 0; i < cases; ++i) worst = std::max(worst, body(rng));
  return worst;
}

}  // namespace

bool CriterionReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

CriterionReport bell_reference_values() {
  CriterionReport r{1, "Bell-state reference values", {}, 0.0};
  const Stopwatch clock;
  const auto psi = states::bell_psi_plus();
  const double e = correlations::bures_entanglement(correlations::concurrence(psi));
  const double d = correlations::bures_discord_bell_diagonal(states::bell_coeffs(psi));
  const double target = 1.0 - 1.0 / std::sqrt(2.0);
  r.checks.push_back(within("E(psi+) = 1 - 1/sqrt(2)", std::abs(e - target), 1e-10));
  r.checks.push_back(within("D(psi+) = 1 - 1/sqrt(2)", std::abs(d - target), 1e-10));
  r.seconds = clock.seconds();
  return r;
}

CriterionReport oun_closed_form() {
  CriterionReport r{2, "OUN closed form", {}, 0.0};
  const Stopwatch clock;
  const OunParams p{1.0, 0.1};
  const auto traj =
      dynamics::evolve(channels::oun_generator(p), states::bell_psi_plus(), 1.0, 2000);
  double fp_dev = 0.0, ed_dev = 0.0;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const double c = correlations::concurrence(traj.states[k]);
    const double fp = correlations::separable_fidelity_from_concurrence(c);
    fp_dev = std::max(fp_dev, std::abs(fp - channels::oun_bell_separable_fidelity(p, traj.times[k])));
    const double e = correlations::bures_entanglement(c);
    const double d = correlations::bures_discord_bell_diagonal(states::bell_coeffs(traj.states[k]));
    ed_dev = std::max(ed_dev, std::abs(e - d));
  }
  r.checks.push_back(within("F_P(rho_t) vs closed form, 2001 nodes", fp_dev, 1e-6));
  r.checks.push_back(within("E(t) = D(t), 2001 nodes", ed_dev, 1e-8));
  r.seconds = clock.seconds();
  r.checks.push_back(budget(r.seconds, 1.0));
  return r;
}

CriterionReport collective_closed_forms() {
  CriterionReport r{3, "Collective closed forms", {}, 0.0};
  const Stopwatch clock;
  const auto p = figure_two_params();
  const auto gen = channels::collective_generator(p);
  {
    const Stopwatch part;
    const auto traj = dynamics::evolve(gen, states::state_g1e2(), 1.0, 2000);
    double dev = 0.0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
      dev = std::max(dev, std::abs(correlations::concurrence(traj.states[k]) -
                                   channels::collective_g1e2_concurrence(p, traj.times[k])));
    }
    const double seconds = part.seconds();
    r.checks.push_back(within("g1e2 concurrence vs closed form", dev, 1e-6));
    r.checks.push_back(check("g1e2 runtime", seconds < 2.0, sci(seconds) + " s < 2 s"));
  }
  {
    const Stopwatch part;
    const auto traj = dynamics::evolve(gen, states::bell_psi_plus(), 1.0, 2000);
    double dev = 0.0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
      const double fp = correlations::separable_fidelity_from_concurrence(
          correlations::concurrence(traj.states[k]));
      dev = std::max(dev, std::abs(fp - channels::collective_psi_plus_separable_fidelity(
                                            p, traj.times[k])));
    }
    const double seconds = part.seconds();
    r.checks.push_back(within("psi+ F_P vs closed form", dev, 1e-6));
    r.checks.push_back(check("psi+ runtime", seconds < 2.0, sci(seconds) + " s < 2 s"));
  }
  r.seconds = clock.seconds();
  return r;
}

CriterionReport bound_ordering_and_validity() {
  CriterionReport r{4, "Bound ordering and validity", {}, 0.0};
  const Stopwatch clock;
  for (const auto& g : golden_scenarios()) {
    const auto run = qsl::run_scenario(g.scenario);
    const auto& res = run.final_result();
    const bool ordered = res.tau_op >= res.tau_hs && res.tau_hs >= res.tau_tr;
    r.checks.push_back(check(std::string(g.name) + ": tau_op >= tau_hs >= tau_tr", ordered,
                             sci(res.tau_op) + " >= " + sci(res.tau_hs) + " >= " +
                                 sci(res.tau_tr)));
    r.checks.push_back(check(std::string(g.name) + ": tau_unified = tau_op",
                             std::abs(res.tau_unified - res.tau_op) <= 1e-12,
                             "difference " + sci(std::abs(res.tau_unified - res.tau_op))));
    r.checks.push_back(check(std::string(g.name) + ": tau_unified <= tau_actual + 1e-6",
                             res.bound_satisfied(),
                             sci(res.tau_unified) + " vs tau_actual " + sci(res.tau_actual)));
  }
  r.seconds = clock.seconds();
  return r;
}

CriterionReport shape_checks() {
  CriterionReport r{5, "Shape checks", {}, 0.0};
  const Stopwatch clock;

  constexpr int kPoints = 50;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < kPoints; ++i) {
    const double kappa = 0.5 + 9.5 * i / (kPoints - 1);
    qsl::Scenario s;
    s.params = OunParams{kappa, 0.1 * kappa};
    const double tau = qsl::run_scenario(s).final_result().tau_unified;
    sx += kappa;
    sy += tau;
    sxx += kappa * kappa;
    sxy += kappa * tau;
  }
  const double slope = (kPoints * sxy - sx * sy) / (kPoints * sxx - sx * sx);
  r.checks.push_back(check("OUN kappa-sweep regression slope < 0", slope < 0.0,
                           "slope " + sci(slope)));

  qsl::Scenario creation;
  creation.model = qsl::Model::Collective;
  creation.initial = InitialState::G1E2;
  creation.params = figure_two_params();
  const auto run = qsl::run_scenario(creation);
  std::vector<double> peaks;
  const auto& e = run.end_time_results;
  for (std::size_t k = 1; k + 1 < e.size(); ++k) {
    if (e[k].tau_unified > e[k - 1].tau_unified && e[k].tau_unified > e[k + 1].tau_unified) {
      peaks.push_back(e[k].tau_unified);
    }
  }
  std::string list;
  for (double v : peaks) list += (list.empty() ? "" : ", ") + sci(v);
  r.checks.push_back(check("collective creation tau(t) has >= 2 local maxima",
                           peaks.size() >= 2, std::to_string(peaks.size()) + " maxima"));
  r.checks.push_back(check("peak envelope decreases",
                           peaks.size() >= 2 && std::is_sorted(peaks.rbegin(), peaks.rend(),
                                                               std::less_equal<>()),
                           "peaks " + list));
  r.seconds = clock.seconds();
  r.checks.push_back(budget(r.seconds, 30.0));
  return r;
}

CriterionReport property_suites() {
  CriterionReport r{6, "Property suites", {}, 0.0};
  const Stopwatch clock;
  random::Rng rng(kSeed);
  constexpr int kCases = 200;

  {
    int bad = 0;
    for (int i = 0; i < kCases; ++i) {
      const auto n4 = linalg::norms<4>(random::ginibre<4>(rng));
      const auto n16 = linalg::norms<16>(random::hermitian<16>(rng));
      for (const auto& n : {n4, n16}) {
        const double slack = 1e-12 * n.trace;
        if (!(n.op <= n.hs + slack && n.hs <= n.trace + slack)) ++bad;
      }
    }
    r.checks.push_back(check("norm ordering op <= hs <= tr", bad == 0,
                             std::to_string(bad) + " violations in " +
                                 std::to_string(2 * kCases) + " matrices"));
  }
  {
    double sym = 0.0, self = 0.0;
    for (int i = 0; i < kCases; ++i) {
      const auto a = random::density_matrix(rng, 1 + i % 4);
      const auto b = random::density_matrix(rng, 1 + (i / 4) % 4);
      sym = std::max(sym, std::abs(states::fidelity(a, b) - states::fidelity(b, a)));
      self = std::max(self, std::abs(states::fidelity(a, a) - 1.0));
    }
    r.checks.push_back(within("fidelity symmetry", sym, 1e-9));
    r.checks.push_back(within("unit self-fidelity", self, 1e-12));
  }
  r.checks.push_back(within("purification roundtrip", worst_over(kCases, rng, [](auto& g) {
    const auto rho = random::density_matrix(g, 1 + static_cast<int>(g.uniform(0.0, 4.0)) % 4);
    return max_norm_diff(states::purify(rho).reduced().matrix(), rho.matrix());
  }), 1e-10));
  {
    double trace = 0.0, herm = 0.0;
    for (int i = 0; i < kCases; ++i) {
      const auto gen = i % 2 == 0 ? channels::oun_generator(random::oun_params(rng))
                                  : channels::collective_generator(random::collective_params(rng));
      const auto rho = random::density_matrix(rng);
      const Matrix4 out = gen.apply(rng.uniform(0.0, 5.0), rho.matrix());
      trace = std::max(trace, std::abs(out.trace()));
      herm = std::max(herm, linalg::hermiticity_error<4>(out));
    }
    r.checks.push_back(within("generator output traceless", trace, 1e-10));
    r.checks.push_back(within("generator output Hermitian", herm, 1e-10));
  }
  r.checks.push_back(within("extended generator commutes with partial trace",
                            worst_over(kCases, rng, [](auto& g) {
    const auto gen = g.uniform() < 0.5 ? channels::oun_generator(random::oun_params(g))
                                       : channels::collective_generator(random::collective_params(g));
    const Matrix16 x = random::ginibre<16>(g);
    const double t = g.uniform(0.0, 5.0);
    const Matrix4 lhs = linalg::partial_trace(gen.apply_extended(t, x), linalg::Subsystem::System);
    const Matrix4 rhs = gen.apply(t, linalg::partial_trace(x, linalg::Subsystem::System));
    return max_norm_diff(lhs, rhs) / std::max(1.0, rhs.cwiseAbs().maxCoeff());
  }), 1e-10));
  {
    double worst = 0.0;
    int cases = 0;
    for (int s = 0; s < 20; ++s) {
      const auto rho = random::density_matrix(rng, 1 + s % 4);
      const double e0 = correlations::bures_entanglement(correlations::concurrence(rho));
      for (int u = 0; u < 100; ++u, ++cases) {
        const Matrix4 local = linalg::kron(random::unitary<2>(rng), random::unitary<2>(rng));
        Matrix4 m = local * rho.matrix() * local.adjoint();
        m = linalg::hermitian_part<4>(m);
        const double e = correlations::bures_entanglement(
            correlations::concurrence(states::DensityMatrix(m)));
        worst = std::max(worst, std::abs(e - e0));
      }
    }
    auto c = within("local-unitary invariance of E (" + std::to_string(cases) + " cases)", worst,
                    1e-9);
    r.checks.push_back(c);
  }
  r.checks.push_back(within("b_max permutation symmetry", worst_over(kCases, rng, [](auto& g) {
    const auto c = random::bell_coeffs(g);
    std::array<double, 3> v{c.c1, c.c2, c.c3};
    std::sort(v.begin(), v.end());
    const double ref = correlations::b_max(c);
    double worst = 0.0;
    do {
      worst = std::max(worst, std::abs(correlations::b_max({v[0], v[1], v[2]}) - ref));
    } while (std::next_permutation(v.begin(), v.end()));
    return worst;
  }), 1e-12));

  r.seconds = clock.seconds();
  r.checks.push_back(budget(r.seconds, 60.0));
  return r;
}

CriterionReport convergence() {
  CriterionReport r{7, "Convergence", {}, 0.0};
  const Stopwatch clock;
  for (const auto& g : golden_scenarios()) {
    if (g.scenario.measure == qsl::Measure::Discord) continue;  // same taus as entanglement
    auto coarse = g.scenario;
    coarse.steps = 2000;
    auto fine = g.scenario;
    fine.steps = 4000;
    const double a = qsl::run_scenario(coarse).final_result().tau_unified;
    const double b = qsl::run_scenario(fine).final_result().tau_unified;
    const double rel = std::abs(a - b) / std::max(std::abs(b), 1e-300);
    r.checks.push_back(check(std::string(g.name) + ": tau 2000 vs 4000 steps", rel < 1e-4,
                             "relative change " + sci(rel) + " < 1e-4"));
  }

  // Step halving on coarse grids, where truncation error dominates roundoff.
  struct Case {
    const char* name;
    channels::Generator gen;
    states::DensityMatrix rho0;
  };
  const std::vector<Case> cases{
      {"oun", channels::oun_generator(OunParams{1.0, 0.1}), states::bell_psi_plus()},
      {"collective", channels::collective_generator(figure_two_params()), states::state_g1e2()}};
  for (const auto& c : cases) {
    const Matrix4 ref = dynamics::evolve(c.gen, c.rho0, 1.0, 2560).states.back().matrix();
    std::array<double, 3> err{};
    const std::array<int, 3> steps{20, 40, 80};
    for (int i = 0; i < 3; ++i) {
      err[i] = (dynamics::evolve(c.gen, c.rho0, 1.0, steps[i]).states.back().matrix() - ref).norm();
    }
    const double order = std::min(std::log2(err[0] / err[1]), std::log2(err[1] / err[2]));
    r.checks.push_back(check(std::string(c.name) + ": RK4 order >= 3.5", order >= 3.5,
                             "observed order " + sci(order) + " (errors " + sci(err[0]) + ", " +
                                 sci(err[1]) + ", " + sci(err[2]) + ")"));
  }
  r.seconds = clock.seconds();
  r.checks.push_back(budget(r.seconds, 10.0));
  return r;
}

void print(std::ostream& os, const CriterionReport& report) {
  char head[160];
  std::snprintf(head, sizeof head, "%s %d %s (%.3f s)", report.passed() ? "PASS" : "FAIL",
                report.id, report.title.c_str(), report.seconds);
  os << head << '\n';
  for (const auto& c : report.checks) {
    os << "    " << (c.passed ? "ok   " : "FAIL ") << c.label << ": " << c.detail << '\n';
  }
  os.flush();
}

int run_all(std::ostream& os) {
  const std::array<CriterionReport (*)(), 7> criteria{
      bell_reference_values,  oun_closed_form, collective_closed_forms,
      bound_ordering_and_validity, shape_checks, property_suites, convergence};
  int failed = 0;
  for (auto* run : criteria) {
    const auto report = run();
    print(os, report);
    if (!report.passed()) ++failed;
  }
  return failed;
}

}  // namespace qslcorr::selftest
