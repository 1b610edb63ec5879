#pragma once

#include <cstddef>
#include <functional>

#include <json.hpp>

#include "config.hpp"

namespace ultrachirp::cli {

using json = nlohmann::json;

inline constexpr const char* kWorkersEnv = "ULTRACHIRP_WORKERS";

/// Worker count from ULTRACHIRP_WORKERS, else the hardware concurrency.
std::size_t worker_count();

/// Runs fn(0..n-1) on up to `workers` threads. Every index runs; the
/// exception of the lowest failing index is rethrown after all finish.
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& fn);

/// Writes the requested CSVs and manifest.json into cfg.output_dir and
/// returns the manifest. Integrator errors propagate.
json run_scenario(const ScenarioConfig& cfg, std::size_t workers);

/// One scenario per value, summary.csv plus a manifest per point and one for
/// the sweep. A failing point is recorded in its row.
json run_sweep(const SweepConfig& cfg, std::size_t workers);

/// Oracle cross-checks; "pass" is false when any check misses its limit.
json selftest();

}  // namespace ultrachirp::cli
