#pragma once

#include <cstddef>
#include <cstdint>
#include <cstring>
#include <span>
#include <vector>

namespace eit {

/// Interleaved 8-bit raster, row-major, 1 or 3 channels.
/// data().size() == width * height * channels always holds.
class ImageBuffer {
 public:
  ImageBuffer() = default;

  /// Zero-filled image. Throws std::invalid_argument on a zero dimension or
  /// a channel count other than 1 or 3.
  ImageBuffer(std::size_t width, std::size_t height, std::size_t channels);

  /// Takes ownership of existing samples; throws if the length does not match.
  ImageBuffer(std::size_t width, std::size_t height, std::size_t channels,
              std::vector<std::uint8_t> data);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t channels() const noexcept { return channels_; }
  std::size_t pixel_count() const noexcept { return width_ * height_; }
  bool empty() const noexcept { return data_.empty(); }

  std::span<const std::uint8_t> data() const noexcept { return data_; }
  std::span<std::uint8_t> data() noexcept { return data_; }

  /// Samples of pixel (x, y). Throws std::out_of_range outside the image.
  std::span<const std::uint8_t> at(std::size_t x, std::size_t y) const;
  std::span<std::uint8_t> at(std::size_t x, std::size_t y);

  /// Samples of the pixel at raster index `index` (= y * width + x), unchecked.
  std::span<const std::uint8_t> pixel(std::size_t index) const noexcept {
    return {data_.data() + index * channels_, channels_};
  }
  std::span<std::uint8_t> pixel(std::size_t index) noexcept {
    return {data_.data() + index * channels_, channels_};
  }

  /// Copies a whole pixel tuple from `src` (raster index `from`) into this
  /// image at raster index `to`. Channel counts must agree.
  void copy_pixel_from(const ImageBuffer& src, std::size_t from, std::size_t to) noexcept {
    std::memcpy(data_.data() + to * channels_, src.data_.data() + from * channels_, channels_);
  }

  bool same_shape(const ImageBuffer& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_ && channels_ == other.channels_;
  }

  friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::size_t channels_ = 0;
  std::vector<std::uint8_t> data_;
};

/// Encoding-independent identity of an image: FNV-1a 64 over width, height
/// and channels (each as 4 little-endian bytes) followed by the raw samples.
std::uint64_t content_digest(const ImageBuffer& img) noexcept;

/// Pixel tuples of `img` sorted lexicographically; two images hold the same
/// multiset of pixels iff these compare equal.
std::vector<std::uint8_t> sorted_pixel_tuples(const ImageBuffer& img);

bool same_pixel_multiset(const ImageBuffer& a, const ImageBuffer& b);

}  // namespace eit
