#pragma once

#include <cstddef>

namespace eit {

struct TileRect {
  std::size_t x = 0;
  std::size_t y = 0;
  std::size_t width = 0;
  std::size_t height = 0;

  friend bool operator==(const TileRect&, const TileRect&) = default;
};

enum class RemainderPolicy { kAbsorbIntoLast };

/// Square tiling of an image. Interior tiles are tile_edge x tile_edge; the
/// right and bottom remainders are absorbed into the last column/row, so
/// cols = max(1, width / tile_edge) and rows = max(1, height / tile_edge).
class TileGrid {
 public:
  TileGrid(std::size_t width, std::size_t height, std::size_t tile_edge);

  std::size_t tile_edge() const noexcept { return tile_edge_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return cols_ * rows_; }
  std::size_t image_width() const noexcept { return width_; }
  std::size_t image_height() const noexcept { return height_; }
  RemainderPolicy remainder_policy() const noexcept { return RemainderPolicy::kAbsorbIntoLast; }

  TileRect tile(std::size_t row, std::size_t col) const noexcept;
  /// Tile in raster order, index = row * cols + col.
  TileRect tile(std::size_t index) const noexcept { return tile(index / cols_, index % cols_); }

 private:
  std::size_t width_;
  std::size_t height_;
  std::size_t tile_edge_;
  std::size_t cols_;
  std::size_t rows_;
};

/// Throws std::invalid_argument if any argument is zero. A tile edge larger
/// than the image yields a single tile along that axis.
TileGrid tile_partition(std::size_t width, std::size_t height, std::size_t tile_edge);

}  // namespace eit
