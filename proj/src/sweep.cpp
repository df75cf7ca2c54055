#include "qslcorr/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "qslcorr/error.hpp"

namespace qslcorr::cli {

std::vector<double> sweep_values(const SweepSpec& spec) {
  std::vector<double> out(spec.count);
  for (int i = 0; i < spec.count; ++i) {
    out[i] = i + 1 == spec.count
                 ? spec.to
                 : spec.from + (spec.to - spec.from) * i / (spec.count - 1);
  }
  return out;
}

std::vector<SweepRow> run_sweep(const ScenarioConfig& config, int jobs) {
  if (!config.sweep) throw Error(ErrorCode::ValidationError, "no sweep configured");
  validate(config);
  const auto values = sweep_values(*config.sweep);
  std::vector<SweepRow> rows(values.size());

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::size_t failed_at = values.size();
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < values.size(); i = next++) {
      try {
        ScenarioConfig point = config;
        point.sweep.reset();
        set_parameter(point, config.sweep->param, values[i]);
        validate(point);
        rows[i] = {values[i], qsl::run_scenario(point.scenario()).final_result()};
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (i < failed_at) {
          failed_at = i;
          failure = std::current_exception();
        }
      }
    }
  };

  const int threads = std::clamp(jobs, 1, static_cast<int>(values.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

}  // namespace qslcorr::cli
