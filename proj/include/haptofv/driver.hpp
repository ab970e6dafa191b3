#pragma once

#include <functional>
#include <string>

#include "haptofv/config.hpp"
#include "haptofv/diagnostics.hpp"
#include "haptofv/integrate.hpp"

namespace haptofv {

/// Outcome of a configured run.
struct RunResult {
  RunReport report;
  DiagnosticsRecord final_record;
  int snapshots_written = 0;
  std::string diagnostics_path;
};

using ProgressCallback = std::function<void(const DiagnosticsRecord&)>;

/// End-to-end driver: validates the config, generates the seeded initial
/// state, runs the simulation, writes snapshots plus a diagnostics.csv
/// table into config.output_dir, and reports the outcome. `progress` (may
/// be empty) is invoked once per emitted record. Throws on config and I/O
/// errors; solver failures are reported, not thrown.
RunResult run_with_config(const RunConfig& config,
                          const ProgressCallback& progress = {});

} // namespace haptofv
