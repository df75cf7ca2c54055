#include "qslcorr/csv.hpp"

#include <cstdio>

namespace qslcorr::cli {

std::string format_number(double v) {
  // snprintf honours LC_NUMERIC; the CLI never changes it from "C".
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

void append_row(std::string& out, std::initializer_list<std::string> fields) {
  bool first = true;
  for (const auto& f : fields) {
    if (!first) out += ',';
    out += f;
    first = false;
  }
  out += '\n';
}

}  // namespace

std::string emit_trajectory_csv(const qsl::ScenarioRun& run) {
  std::string out = "t,concurrence,E_bures,D_bures,F_P,K_op,K_tr,K_hs,tau_op,tau_tr,tau_hs,tau_unified\n";
  for (std::size_t k = 0; k < run.samples.size(); ++k) {
    const auto& s = run.samples[k];
    const auto& r = run.end_time_results[k];
    append_row(out, {format_number(s.t), format_number(s.concurrence),
                     format_number(s.entanglement),
                     s.discord ? format_number(*s.discord) : std::string(),
                     format_number(s.separable_fidelity), format_number(r.K.op),
                     format_number(r.K.tr), format_number(r.K.hs), format_number(r.tau_op),
                     format_number(r.tau_tr), format_number(r.tau_hs),
                     format_number(r.tau_unified)});
  }
  return out;
}

std::string emit_sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "sweep_value,delta_Q,tau_unified,tau_op,tau_tr,tau_hs\n";
  for (const auto& row : rows) {
    const auto& r = row.result;
    append_row(out, {format_number(row.sweep_value), format_number(r.amount.change),
                     format_number(r.tau_unified), format_number(r.tau_op),
                     format_number(r.tau_tr), format_number(r.tau_hs)});
  }
  return out;
}

}  // namespace qslcorr::cli
