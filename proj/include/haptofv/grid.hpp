#pragma once

#include <cstdint>
#include <vector>

namespace haptofv {

/// Axis along which an inner edge's normal points.
enum class Axis : std::uint8_t { X, Y };

/// One inner edge of the grid. Boundary faces are never represented, which
/// builds the no-flux boundary condition into the connectivity itself.
///
/// `left` and `right` are linearized cell indices; in the grid's canonical
/// edge list left < right always holds (right = left+1 for X edges,
/// left+nx for Y edges). `measure` is the edge length |e| and `dist` the
/// distance d(c,c') between the two adjacent cell centers.
struct EdgeRef {
  std::int32_t left;
  std::int32_t right;
  Axis axis;
  double measure;
  double dist;
};

/// Uniform structured quadrilateral grid on the unit square (0,1)^2.
/// Cells are linearized row-major: cell(i,j) = i + nx*j.
/// Immutable after construction; safe to share across threads.
class Grid {
public:
  /// Requires nx >= 2 and ny >= 2 (smaller grids have no inner edges in
  /// one direction); throws std::invalid_argument otherwise.
  Grid(int nx, int ny);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double hx() const { return hx_; }
  double hy() const { return hy_; }
  /// Cell measure |c| = hx*hy, identical for every cell.
  double cell_measure() const { return hx_ * hy_; }

  std::size_t cell_count() const { return static_cast<std::size_t>(nx_) * ny_; }
  std::size_t inner_edge_count() const { return edges_.size(); }

  std::int32_t cell_index(int i, int j) const { return i + nx_ * j; }
  double center_x(std::int32_t cell) const { return (cell % nx_ + 0.5) * hx_; }
  double center_y(std::int32_t cell) const { return (cell / nx_ + 0.5) * hy_; }

  /// Canonical inner-edge list: all X edges first, then all Y edges.
  const std::vector<EdgeRef>& edges() const { return edges_; }

  /// Inner edges incident to `cell`, each presented with left == cell
  /// (flipped relative to the canonical list where needed). 2, 3 or 4
  /// entries. Throws std::out_of_range for an invalid index.
  std::vector<EdgeRef> neighbors(std::int32_t cell) const;

private:
  int nx_;
  int ny_;
  double hx_;
  double hy_;
  std::vector<EdgeRef> edges_;
  // CSR-style cell -> incident edge index adjacency, built once.
  std::vector<std::int32_t> adj_offsets_;
  std::vector<std::int32_t> adj_edges_;
};

/// Convenience factory matching the constructor.
inline Grid build_grid(int nx, int ny) { return Grid(nx, ny); }

} // namespace haptofv
