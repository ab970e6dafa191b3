#include "haptofv/driver.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "haptofv/initial.hpp"
#include "haptofv/snapshot.hpp"

namespace haptofv {

RunResult run_with_config(const RunConfig& config,
                          const ProgressCallback& progress) {
  config.validate();
  const Grid grid(config.nx, config.ny);
  const State initial =
      generate_initial_state(grid, InitialConditionSpec{}, config.rng_seed);

  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec)
    throw std::runtime_error("cannot create output directory '" +
                             config.output_dir + "': " + ec.message());
  RunResult result;
  result.diagnostics_path =
      (std::filesystem::path(config.output_dir) / "diagnostics.csv").string();
  std::ofstream diag(result.diagnostics_path, std::ios::binary);
  if (!diag)
    throw std::runtime_error("cannot open '" + result.diagnostics_path +
                             "' for writing");
  diag << DiagnosticsRecord::csv_header() << "\n";

  auto sink = [&](const SnapshotEvent& event) {
    write_snapshot(event.state, grid, event.time, config,
                   result.snapshots_written);
    ++result.snapshots_written;
    diag << event.record.csv_row() << "\n";
    result.final_record = event.record;
    if (progress) progress(event.record);
  };

  run_simulation(initial, grid, config.params, config.time,
                 config.snapshot_interval, sink, &result.report);
  diag.flush();
  if (!diag)
    throw std::runtime_error("write failed for '" + result.diagnostics_path +
                             "'");
  return result;
}

} // namespace haptofv
