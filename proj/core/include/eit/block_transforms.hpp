#pragma once

// The five non-segmentation transforms. All are pure: the input is never
// modified and identical arguments give byte-identical output. Pixels always
// move as whole tuples.
//
// Sub-seed layout (mix64 from random.hpp):
//   select-then-permute over a position list:  selection stream mix64(seed, 1),
//                                              permutation stream mix64(seed, 2)
//   within-grid tile (r, c):                   mix64(mix64(seed, r), c)
//   grid shuffle, shape class k:               mix64(seed, k)
//   local structure, pixel stage / tile stage: mix64(seed, 1) / mix64(seed, 2)

#include <cstddef>
#include <cstdint>
#include <span>

#include "eit/image.hpp"
#include "eit/tiles.hpp"

namespace eit {

/// Select-then-permute restricted to `positions` (raster indices, in the
/// order given). Each position is selected with probability p; the selected
/// ones are permuted among themselves: dst[sel[i]] = src[sel[perm[i]]].
/// Positions not selected are left untouched in `dst`.
void shuffle_positions(const ImageBuffer& src, ImageBuffer& dst,
                       std::span<const std::size_t> positions, double p, std::uint64_t seed);

ImageBuffer full_random_shuffle(const ImageBuffer& img, double p, std::uint64_t seed);

/// Permutes whole tiles. Tiles only trade places with tiles of the same
/// shape; shape classes are numbered by first appearance in raster tile order.
ImageBuffer grid_shuffle(const ImageBuffer& img, std::size_t grid_size, std::uint64_t seed);

/// Tiles stay put; pixels are shuffled inside each tile independently.
ImageBuffer within_grid_shuffle(const ImageBuffer& img, std::size_t grid_size, double p,
                                std::uint64_t seed);

/// Within-tile pixel shuffle followed by a tile permutation. With
/// `swap == false` the tile stage is skipped.
ImageBuffer local_structure_shuffle(const ImageBuffer& img, std::size_t grid_size, double p,
                                    std::uint64_t seed, bool swap = true);

/// 3-channel image -> 1-channel image of height 3 * height holding the R, G
/// and B planes stacked top to bottom.
ImageBuffer color_flatten(const ImageBuffer& img);

/// Inverse of color_flatten.
ImageBuffer color_unflatten(const ImageBuffer& flat);

}  // namespace eit
