#include "haptofv/grid.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace haptofv {

Grid::Grid(int nx, int ny) : nx_(nx), ny_(ny) {
  if (nx < 2 || ny < 2) {
    throw std::invalid_argument("grid dimensions must satisfy nx >= 2 and "
                                "ny >= 2, got " +
                                std::to_string(nx) + "x" + std::to_string(ny));
  }
  hx_ = 1.0 / nx;
  hy_ = 1.0 / ny;

  const std::size_t n_x_edges = static_cast<std::size_t>(nx - 1) * ny;
  const std::size_t n_y_edges = static_cast<std::size_t>(nx) * (ny - 1);
  edges_.reserve(n_x_edges + n_y_edges);

  // X edges: between (i,j) and (i+1,j); |e| = hy, d = hx.
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i + 1 < nx; ++i) {
      const std::int32_t c = cell_index(i, j);
      edges_.push_back({c, c + 1, Axis::X, hy_, hx_});
    }
  }
  // Y edges: between (i,j) and (i,j+1); |e| = hx, d = hy.
  for (int j = 0; j + 1 < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::int32_t c = cell_index(i, j);
      edges_.push_back({c, c + nx, Axis::Y, hx_, hy_});
    }
  }

  // Two-pass CSR adjacency over the canonical edge list.
  adj_offsets_.assign(cell_count() + 1, 0);
  for (const EdgeRef& e : edges_) {
    ++adj_offsets_[e.left + 1];
    ++adj_offsets_[e.right + 1];
  }
  for (std::size_t c = 1; c < adj_offsets_.size(); ++c)
    adj_offsets_[c] += adj_offsets_[c - 1];
  adj_edges_.resize(2 * edges_.size());
  std::vector<std::int32_t> cursor(adj_offsets_.begin(), adj_offsets_.end() - 1);
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    adj_edges_[cursor[edges_[k].left]++] = static_cast<std::int32_t>(k);
    adj_edges_[cursor[edges_[k].right]++] = static_cast<std::int32_t>(k);
  }
}

std::vector<EdgeRef> Grid::neighbors(std::int32_t cell) const {
  if (cell < 0 || static_cast<std::size_t>(cell) >= cell_count())
    throw std::out_of_range("cell index " + std::to_string(cell) +
                            " outside grid of " + std::to_string(cell_count()) +
                            " cells");
  std::vector<EdgeRef> out;
  out.reserve(4);
  for (std::int32_t k = adj_offsets_[cell]; k < adj_offsets_[cell + 1]; ++k) {
    EdgeRef e = edges_[adj_edges_[k]];
    if (e.right == cell) std::swap(e.left, e.right);
    out.push_back(e);
  }
  return out;
}

} // namespace haptofv
