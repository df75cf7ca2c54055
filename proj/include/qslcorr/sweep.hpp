#pragma once

#include <vector>

#include "qslcorr/config.hpp"
#include "qslcorr/csv.hpp"

namespace qslcorr::cli {

/// `count` evenly spaced values from `from` to `to`, both included.
std::vector<double> sweep_values(const SweepSpec& spec);

/// Runs the scenario once per sweep value on up to `jobs` threads. Rows come
/// back in sweep order. The first failing point's error is rethrown.
std::vector<SweepRow> run_sweep(const ScenarioConfig& config, int jobs = 1);

}  // namespace qslcorr::cli
