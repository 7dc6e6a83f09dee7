#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "eit/image.hpp"

namespace eit {

/// Per-pixel superpixel labels in raster order. Labels are 0..n_labels-1,
/// each used by at least one pixel, numbered by first appearance in raster
/// order.
struct SegmentMap {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint32_t> labels;
  std::uint32_t n_labels = 0;

  std::uint32_t label(std::size_t x, std::size_t y) const { return labels.at(y * width + x); }

  /// Raster indices of every label's pixels, each list in raster order.
  std::vector<std::vector<std::size_t>> members() const;

  friend bool operator==(const SegmentMap&, const SegmentMap&) = default;
};

struct SlicOptions {
  double compactness = 10.0;
  int iterations = 10;
};

/// SLIC superpixels: k-means over (L, a, b, x * m / S, y * m / S) with
/// S = sqrt(pixels / n_segments) and m = compactness, seeded on a regular
/// grid, each center searching only its surrounding window. Colour is CIELAB
/// (D65) for 3-channel input and intensity scaled to [0, 100] for 1-channel.
/// Afterwards every label is made 4-connected: stray fragments and regions
/// under a quarter of the mean segment size are merged into their largest
/// adjacent region.
///
/// Deterministic. Throws std::invalid_argument if n_segments is 0 or exceeds
/// the pixel count, or if iterations < 1 or compactness <= 0.
SegmentMap superpixel_segment(const ImageBuffer& img, std::size_t n_segments,
                              double compactness = SlicOptions{}.compactness,
                              int iterations = SlicOptions{}.iterations);

/// Moves segment contents: with pi = seeded_permutation(seed, n_labels), the
/// pixels of segment i (raster order) receive the values of segment pi(i)
/// (raster order), cycling the donor when it is smaller and truncating when
/// it is larger.
ImageBuffer segmentation_displacement_shuffle(const ImageBuffer& img, const SegmentMap& seg,
                                              std::uint64_t seed);

/// Select-then-permute inside each segment independently, segment l using
/// sub-seed mix64(seed, l). Pixels never leave their segment.
ImageBuffer segmentation_within_shuffle(const ImageBuffer& img, const SegmentMap& seg, double p,
                                        std::uint64_t seed);

/// Grayscale picture of the labels, label * 255 / (n_labels - 1).
ImageBuffer render_segment_labels(const SegmentMap& seg);

}  // namespace eit
