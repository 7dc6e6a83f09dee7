#include "eit/tiles.hpp"

#include <algorithm>
#include <stdexcept>

namespace eit {

TileGrid::TileGrid(std::size_t width, std::size_t height, std::size_t tile_edge)
    : width_(width), height_(height), tile_edge_(tile_edge) {
  if (width == 0 || height == 0 || tile_edge == 0) {
    throw std::invalid_argument("tile_partition: width, height and tile_edge must be >= 1");
  }
  cols_ = std::max<std::size_t>(1, width / tile_edge);
  rows_ = std::max<std::size_t>(1, height / tile_edge);
}

TileRect TileGrid::tile(std::size_t row, std::size_t col) const noexcept {
  TileRect r;
  r.x = col * tile_edge_;
  r.y = row * tile_edge_;
  r.width = (col + 1 == cols_) ? width_ - r.x : tile_edge_;
  r.height = (row + 1 == rows_) ? height_ - r.y : tile_edge_;
  return r;
}

TileGrid tile_partition(std::size_t width, std::size_t height, std::size_t tile_edge) {
  return TileGrid(width, height, tile_edge);
}

}  // namespace eit
