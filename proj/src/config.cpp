#include "haptofv/config.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <string>

namespace haptofv {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const double x = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0')
    throw std::invalid_argument("config key '" + key +
                                "': cannot parse number from '" + value + "'");
  return x;
}

long long parse_int(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const long long x = std::strtoll(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0')
    throw std::invalid_argument("config key '" + key +
                                "': cannot parse integer from '" + value + "'");
  return x;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "yes" || value == "on")
    return true;
  if (value == "0" || value == "false" || value == "no" || value == "off")
    return false;
  throw std::invalid_argument("config key '" + key +
                              "': cannot parse boolean from '" + value + "'");
}

} // namespace

const char* to_string(OutputFormat format) {
  return format == OutputFormat::CsvGrid ? "csv_grid" : "vtk_legacy";
}

const char* to_string(TaxisVariant variant) {
  return variant == TaxisVariant::ContinuousModel ? "continuous" : "numerics";
}

OutputFormat parse_output_format(const std::string& text) {
  if (text == "csv_grid" || text == "csv") return OutputFormat::CsvGrid;
  if (text == "vtk_legacy" || text == "vtk") return OutputFormat::VtkLegacy;
  throw std::invalid_argument("unknown output format '" + text +
                              "' (expected csv_grid or vtk_legacy)");
}

TaxisVariant parse_taxis_variant(const std::string& text) {
  if (text == "continuous") return TaxisVariant::ContinuousModel;
  if (text == "numerics") return TaxisVariant::NumericsSection;
  throw std::invalid_argument("unknown taxis variant '" + text +
                              "' (expected continuous or numerics)");
}

void apply_config_entry(RunConfig& config, const std::string& key,
                        const std::string& value) {
  if (key == "nx") config.nx = static_cast<int>(parse_int(key, value));
  else if (key == "ny") config.ny = static_cast<int>(parse_int(key, value));
  else if (key == "dt") config.time.dt = parse_double(key, value);
  else if (key == "t_end") config.time.t_end = parse_double(key, value);
  else if (key == "newton_tol") config.time.newton_tol = parse_double(key, value);
  else if (key == "newton_max_iter")
    config.time.newton_max_iter = static_cast<int>(parse_int(key, value));
  else if (key == "linear_tol") config.time.linear_tol = parse_double(key, value);
  else if (key == "alpha") config.params.alpha = parse_double(key, value);
  else if (key == "beta") config.params.beta = parse_double(key, value);
  else if (key == "kappa_m") config.params.kappa_m = parse_double(key, value);
  else if (key == "kappa_v") config.params.kappa_v = parse_double(key, value);
  else if (key == "mu_p") config.params.mu_p = parse_double(key, value);
  else if (key == "mu_v") config.params.mu_v = parse_double(key, value);
  else if (key == "eta") config.params.eta = parse_double(key, value);
  else if (key == "lambda") config.params.lambda = parse_double(key, value);
  else if (key == "eps1") config.params.eps1 = parse_double(key, value);
  else if (key == "taxis_variant")
    config.params.taxis_variant = parse_taxis_variant(value);
  else if (key == "seed")
    config.rng_seed = static_cast<std::uint64_t>(parse_int(key, value));
  else if (key == "snapshot_interval")
    config.snapshot_interval = parse_double(key, value);
  else if (key == "output_dir") config.output_dir = value;
  else if (key == "output_format")
    config.output_format = parse_output_format(value);
  else if (key == "emit_heatmaps")
    config.emit_heatmaps = parse_bool(key, value);
  else
    throw std::invalid_argument("unknown config key '" + key + "'");
}

RunConfig load_config_file(const std::string& path, RunConfig defaults) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  RunConfig config = std::move(defaults);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected key=value, got '" + line + "'");
    try {
      apply_config_entry(config, trim(line.substr(0, eq)),
                         trim(line.substr(eq + 1)));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": " +
                                  e.what());
    }
  }
  return config;
}

void RunConfig::validate() const {
  if (nx < 2 || ny < 2)
    throw std::invalid_argument("nx and ny must be at least 2, got " +
                                std::to_string(nx) + "x" + std::to_string(ny));
  time.validate();
  params.validate();
  if (!(snapshot_interval >= time.dt))
    throw std::invalid_argument("snapshot_interval must be at least dt, got " +
                                std::to_string(snapshot_interval));
  if (output_dir.empty())
    throw std::invalid_argument("output_dir must not be empty");
}

} // namespace haptofv
