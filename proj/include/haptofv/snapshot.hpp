#pragma once

#include <string>
#include <vector>

#include "haptofv/config.hpp"
#include "haptofv/grid.hpp"
#include "haptofv/model.hpp"

namespace haptofv {

/// Writes one snapshot of the fields m, p, v and c = m+p under
/// `config.output_dir`, named snap_<index:08d>_*.
///
/// csv_grid: one file per field, body of ny lines with nx comma-separated
/// values at 17 significant digits (lossless round-trip), row j of the
/// grid on line j, after a header line
///   # field=<m|p|v|c> t=<time> nx=<nx> ny=<ny>
/// vtk_legacy: a single ASCII STRUCTURED_POINTS file with the four fields
/// as CELL_DATA scalars.
/// With emit_heatmaps, additionally one 8-bit binary portable graymap per
/// field (row ny-1 on top), linearly scaled field-min -> 0, field-max ->
/// 255, with the scaling recorded in snap_<index>_heatmap_scale.txt.
///
/// Returns the paths written. Filesystem errors carry the path.
std::vector<std::string> write_snapshot(const State& state, const Grid& grid,
                                        double time, const RunConfig& config,
                                        int index);

/// One field parsed back from a csv_grid file.
struct CsvField {
  std::string field; ///< "m", "p", "v" or "c"
  double time = 0.0;
  int nx = 0;
  int ny = 0;
  std::vector<double> values; ///< row-major, nx*ny
};

/// Reads a csv_grid snapshot file; throws std::runtime_error with the path
/// on I/O or format errors.
CsvField read_csv_field(const std::string& path);

} // namespace haptofv
