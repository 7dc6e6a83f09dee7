#include "eit/block_transforms.hpp"

#include <cstring>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "eit/random.hpp"

namespace eit {

namespace {

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
}

void check_grid(std::size_t grid_size) {
  if (grid_size == 0) throw std::invalid_argument("grid_size must be >= 1");
}

std::vector<std::size_t> tile_positions(const ImageBuffer& img, const TileRect& t) {
  std::vector<std::size_t> out;
  out.reserve(t.width * t.height);
  for (std::size_t y = t.y; y < t.y + t.height; ++y) {
    const std::size_t row = y * img.width();
    for (std::size_t x = t.x; x < t.x + t.width; ++x) out.push_back(row + x);
  }
  return out;
}

void copy_tile(const ImageBuffer& src, const TileRect& from, ImageBuffer& dst, const TileRect& to) {
  const std::size_t c = src.channels();
  const std::size_t row_bytes = from.width * c;
  auto src_data = src.data();
  auto dst_data = dst.data();
  for (std::size_t dy = 0; dy < from.height; ++dy) {
    const std::size_t s = ((from.y + dy) * src.width() + from.x) * c;
    const std::size_t d = ((to.y + dy) * dst.width() + to.x) * c;
    std::memcpy(dst_data.data() + d, src_data.data() + s, row_bytes);
  }
}

}  // namespace

void shuffle_positions(const ImageBuffer& src, ImageBuffer& dst,
                       std::span<const std::size_t> positions, double p, std::uint64_t seed) {
  check_probability(p);
  const auto picked = bernoulli_select(mix64(seed, 1), positions.size(), p);
  if (picked.size() < 2) return;
  const auto perm = seeded_permutation(mix64(seed, 2), picked.size());
  for (std::size_t i = 0; i < picked.size(); ++i) {
    dst.copy_pixel_from(src, positions[picked[perm[i]]], positions[picked[i]]);
  }
}

ImageBuffer full_random_shuffle(const ImageBuffer& img, double p, std::uint64_t seed) {
  check_probability(p);
  ImageBuffer out = img;
  std::vector<std::size_t> all(img.pixel_count());
  std::iota(all.begin(), all.end(), std::size_t{0});
  shuffle_positions(img, out, all, p, seed);
  return out;
}

ImageBuffer grid_shuffle(const ImageBuffer& img, std::size_t grid_size, std::uint64_t seed) {
  check_grid(grid_size);
  const TileGrid grid = tile_partition(img.width(), img.height(), grid_size);

  // At most four shapes exist: interior, last column, last row, corner.
  std::vector<std::pair<TileRect, std::vector<std::size_t>>> classes;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const TileRect t = grid.tile(i);
    auto it = classes.begin();
    for (; it != classes.end(); ++it) {
      if (it->first.width == t.width && it->first.height == t.height) break;
    }
    if (it == classes.end()) {
      classes.push_back({t, {i}});
    } else {
      it->second.push_back(i);
    }
  }

  ImageBuffer out = img;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    const auto& members = classes[k].second;
    if (members.size() < 2) continue;
    const auto perm = seeded_permutation(mix64(seed, k), members.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (perm[i] == i) continue;
      copy_tile(img, grid.tile(members[perm[i]]), out, grid.tile(members[i]));
    }
  }
  return out;
}

ImageBuffer within_grid_shuffle(const ImageBuffer& img, std::size_t grid_size, double p,
                                std::uint64_t seed) {
  check_grid(grid_size);
  check_probability(p);
  ImageBuffer out = img;
  if (p == 0.0) return out;
  const TileGrid grid = tile_partition(img.width(), img.height(), grid_size);
  for (std::size_t r = 0; r < grid.rows(); ++r) {
    for (std::size_t c = 0; c < grid.cols(); ++c) {
      const auto positions = tile_positions(img, grid.tile(r, c));
      shuffle_positions(img, out, positions, p, mix64(mix64(seed, r), c));
    }
  }
  return out;
}

ImageBuffer local_structure_shuffle(const ImageBuffer& img, std::size_t grid_size, double p,
                                    std::uint64_t seed, bool swap) {
  ImageBuffer shuffled = within_grid_shuffle(img, grid_size, p, mix64(seed, 1));
  if (!swap) return shuffled;
  return grid_shuffle(shuffled, grid_size, mix64(seed, 2));
}

ImageBuffer color_flatten(const ImageBuffer& img) {
  if (img.channels() != 3) {
    throw std::invalid_argument("color_flatten: expected 3 channels, got " +
                                std::to_string(img.channels()));
  }
  const std::size_t plane = img.pixel_count();
  ImageBuffer out(img.width(), img.height() * 3, 1);
  auto src = img.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < plane; ++i) {
    dst[i] = src[i * 3];
    dst[plane + i] = src[i * 3 + 1];
    dst[2 * plane + i] = src[i * 3 + 2];
  }
  return out;
}

ImageBuffer color_unflatten(const ImageBuffer& flat) {
  if (flat.channels() != 1 || flat.height() % 3 != 0) {
    throw std::invalid_argument("color_unflatten: expected a 1-channel image with height divisible by 3");
  }
  const std::size_t height = flat.height() / 3;
  const std::size_t plane = flat.width() * height;
  ImageBuffer out(flat.width(), height, 3);
  auto src = flat.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < plane; ++i) {
    dst[i * 3] = src[i];
    dst[i * 3 + 1] = src[plane + i];
    dst[i * 3 + 2] = src[2 * plane + i];
  }
  return out;
}

}  // namespace eit
