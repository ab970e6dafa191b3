#pragma once

#include <cstdint>
#include <string>

#include "haptofv/integrate.hpp"
#include "haptofv/model.hpp"

namespace haptofv {

enum class OutputFormat { CsvGrid, VtkLegacy };

/// Full run configuration. Defaults are the published parameter table and
/// study setup: 200x200 cells, dt = 0.01, t_end = 1000.
struct RunConfig {
  int nx = 200;
  int ny = 200;
  TimeStepConfig time;
  ModelParams params;
  std::uint64_t rng_seed = 1;
  double snapshot_interval = 10.0;
  std::string output_dir = "out";
  OutputFormat output_format = OutputFormat::CsvGrid;
  bool emit_heatmaps = false;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Applies one key=value pair; throws std::invalid_argument for unknown
/// keys or unparseable values, naming the key.
void apply_config_entry(RunConfig& config, const std::string& key,
                        const std::string& value);

/// Parses a plain-text config file (one key=value per line, '#' comments,
/// blank lines ignored) over the given defaults. Throws
/// std::invalid_argument on parse errors (with line number) and
/// std::runtime_error if the file cannot be read.
RunConfig load_config_file(const std::string& path,
                           RunConfig defaults = RunConfig{});

const char* to_string(OutputFormat format);
const char* to_string(TaxisVariant variant);
OutputFormat parse_output_format(const std::string& text);
TaxisVariant parse_taxis_variant(const std::string& text);

} // namespace haptofv
