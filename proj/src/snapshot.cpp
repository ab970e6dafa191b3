#include "haptofv/snapshot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace haptofv {

namespace {

std::string format_g17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string snapshot_stem(const RunConfig& config, int index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snap_%08d", index);
  return (std::filesystem::path(config.output_dir) / buf).string();
}

void write_csv_field(const std::string& path, const char* field,
                     const std::vector<double>& values, const Grid& grid,
                     double time) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << "# field=" << field << " t=" << format_g17(time)
      << " nx=" << grid.nx() << " ny=" << grid.ny() << "\n";
  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i < grid.nx(); ++i) {
      if (i) out << ',';
      out << format_g17(values[grid.cell_index(i, j)]);
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

void write_vtk(const std::string& path, const Grid& grid, double time,
               const std::vector<const std::vector<double>*>& fields,
               const std::vector<const char*>& names) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << "# vtk DataFile Version 3.0\n"
      << "haptofv fields t=" << format_g17(time) << "\n"
      << "ASCII\n"
      << "DATASET STRUCTURED_POINTS\n"
      << "DIMENSIONS " << grid.nx() + 1 << ' ' << grid.ny() + 1 << " 1\n"
      << "ORIGIN 0 0 0\n"
      << "SPACING " << format_g17(grid.hx()) << ' ' << format_g17(grid.hy())
      << " 1\n"
      << "CELL_DATA " << grid.cell_count() << "\n";
  for (std::size_t f = 0; f < fields.size(); ++f) {
    out << "SCALARS " << names[f] << " double 1\nLOOKUP_TABLE default\n";
    for (double x : *fields[f]) out << format_g17(x) << '\n';
  }
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

void write_pgm(const std::string& path, const Grid& grid,
               const std::vector<double>& values, double lo, double hi) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << "P5\n" << grid.nx() << ' ' << grid.ny() << "\n255\n";
  const double span = hi - lo;
  // Image convention: top line is the row j = ny-1.
  for (int j = grid.ny() - 1; j >= 0; --j) {
    for (int i = 0; i < grid.nx(); ++i) {
      const double x = values[grid.cell_index(i, j)];
      const double scaled = span > 0.0 ? (x - lo) / span * 255.0 : 0.0;
      const int pixel =
          std::clamp(static_cast<int>(std::lround(scaled)), 0, 255);
      out.put(static_cast<char>(pixel));
    }
  }
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

} // namespace

std::vector<std::string> write_snapshot(const State& state, const Grid& grid,
                                        double time, const RunConfig& config,
                                        int index) {
  if (state.size() != grid.cell_count())
    throw std::invalid_argument("snapshot state does not match the grid");
  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec)
    throw std::runtime_error("cannot create output directory '" +
                             config.output_dir + "': " + ec.message());

  std::vector<double> c_field(state.size());
  for (std::size_t i = 0; i < state.size(); ++i)
    c_field[i] = state.m[i] + state.p[i];
  const std::vector<const std::vector<double>*> fields = {&state.m, &state.p,
                                                          &state.v, &c_field};
  const std::vector<const char*> names = {"m", "p", "v", "c"};
  const std::string stem = snapshot_stem(config, index);

  std::vector<std::string> written;
  if (config.output_format == OutputFormat::CsvGrid) {
    for (std::size_t f = 0; f < fields.size(); ++f) {
      const std::string path = stem + "_" + names[f] + ".csv";
      write_csv_field(path, names[f], *fields[f], grid, time);
      written.push_back(path);
    }
  } else {
    const std::string path = stem + ".vtk";
    write_vtk(path, grid, time, fields, names);
    written.push_back(path);
  }

  if (config.emit_heatmaps) {
    std::ofstream scale(stem + "_heatmap_scale.txt");
    if (!scale)
      throw std::runtime_error("cannot open '" + stem +
                               "_heatmap_scale.txt' for writing");
    scale << "# field min max (linear map min->0, max->255), t="
          << format_g17(time) << "\n";
    for (std::size_t f = 0; f < fields.size(); ++f) {
      double lo = (*fields[f])[0], hi = (*fields[f])[0];
      for (double x : *fields[f]) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
      }
      const std::string path = stem + "_" + names[f] + ".pgm";
      write_pgm(path, grid, *fields[f], lo, hi);
      scale << names[f] << ' ' << format_g17(lo) << ' ' << format_g17(hi)
            << '\n';
      written.push_back(path);
    }
    written.push_back(stem + "_heatmap_scale.txt");
  }
  return written;
}

CsvField read_csv_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open snapshot '" + path + "'");
  CsvField out;
  std::string header;
  if (!std::getline(in, header))
    throw std::runtime_error("empty snapshot '" + path + "'");
  char field[8] = {0};
  if (std::sscanf(header.c_str(), "# field=%7s t=%lf nx=%d ny=%d", field,
                  &out.time, &out.nx, &out.ny) != 4)
    throw std::runtime_error("malformed snapshot header in '" + path + "': " +
                             header);
  out.field = field;
  if (out.nx <= 0 || out.ny <= 0)
    throw std::runtime_error("bad dimensions in snapshot '" + path + "'");
  out.values.reserve(static_cast<std::size_t>(out.nx) * out.ny);
  std::string line;
  for (int j = 0; j < out.ny; ++j) {
    if (!std::getline(in, line))
      throw std::runtime_error("truncated snapshot '" + path + "' at row " +
                               std::to_string(j));
    const char* cursor = line.c_str();
    for (int i = 0; i < out.nx; ++i) {
      char* end = nullptr;
      const double x = std::strtod(cursor, &end);
      if (end == cursor)
        throw std::runtime_error("bad value in snapshot '" + path + "' row " +
                                 std::to_string(j));
      out.values.push_back(x);
      cursor = end;
      if (*cursor == ',') ++cursor;
    }
  }
  return out;
}

} // namespace haptofv
