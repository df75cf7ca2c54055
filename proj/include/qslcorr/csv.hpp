#pragma once

#include <string>
#include <vector>

#include "qslcorr/qsl.hpp"

namespace qslcorr::cli {

/// One row of a parameter sweep; the bound is evaluated at the final time.
struct SweepRow {
  double sweep_value = 0.0;
  qsl::QslResult result;
};

/// Numbers as "%.12g" in the C locale.
std::string format_number(double v);

/// Header t,concurrence,E_bures,D_bures,F_P,K_op,K_tr,K_hs,tau_op,tau_tr,tau_hs,tau_unified
/// and one row per grid node. D_bures is empty where the state is not
/// Bell-diagonal.
std::string emit_trajectory_csv(const qsl::ScenarioRun& run);

/// Header sweep_value,delta_Q,tau_unified,tau_op,tau_tr,tau_hs.
std::string emit_sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace qslcorr::cli
