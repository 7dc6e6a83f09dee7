#include "eit/image.hpp"

#include "eit/random.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>
#include <string>

namespace eit {

namespace {

void check_shape(std::size_t width, std::size_t height, std::size_t channels) {
  if (width == 0 || height == 0) {
    throw std::invalid_argument("ImageBuffer: width and height must be >= 1");
  }
  if (channels != 1 && channels != 3) {
    throw std::invalid_argument("ImageBuffer: channels must be 1 or 3, got " +
                                std::to_string(channels));
  }
}

}  // namespace

ImageBuffer::ImageBuffer(std::size_t width, std::size_t height, std::size_t channels)
    : width_(width), height_(height), channels_(channels) {
  check_shape(width, height, channels);
  data_.assign(width * height * channels, 0);
}

ImageBuffer::ImageBuffer(std::size_t width, std::size_t height, std::size_t channels,
                         std::vector<std::uint8_t> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
  check_shape(width, height, channels);
  if (data_.size() != width * height * channels) {
    throw std::invalid_argument("ImageBuffer: data length " + std::to_string(data_.size()) +
                                " does not match " + std::to_string(width) + "x" +
                                std::to_string(height) + "x" + std::to_string(channels));
  }
}

std::span<const std::uint8_t> ImageBuffer::at(std::size_t x, std::size_t y) const {
  if (x >= width_ || y >= height_) throw std::out_of_range("ImageBuffer::at: pixel outside image");
  return pixel(y * width_ + x);
}

std::span<std::uint8_t> ImageBuffer::at(std::size_t x, std::size_t y) {
  if (x >= width_ || y >= height_) throw std::out_of_range("ImageBuffer::at: pixel outside image");
  return pixel(y * width_ + x);
}

std::uint64_t content_digest(const ImageBuffer& img) noexcept {
  std::array<std::uint8_t, 12> header{};
  const std::array<std::uint32_t, 3> dims{static_cast<std::uint32_t>(img.width()),
                                          static_cast<std::uint32_t>(img.height()),
                                          static_cast<std::uint32_t>(img.channels())};
  for (std::size_t i = 0; i < dims.size(); ++i) {
    for (std::size_t b = 0; b < 4; ++b) {
      header[i * 4 + b] = static_cast<std::uint8_t>(dims[i] >> (8 * b));
    }
  }
  return fnv1a64(img.data(), fnv1a64(header));
}

std::vector<std::uint8_t> sorted_pixel_tuples(const ImageBuffer& img) {
  const std::size_t c = img.channels();
  std::vector<std::uint32_t> keys(img.pixel_count());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const auto px = img.pixel(i);
    std::uint32_t k = 0;
    for (std::size_t ch = 0; ch < c; ++ch) k = (k << 8) | px[ch];
    keys[i] = k;
  }
  std::sort(keys.begin(), keys.end());
  std::vector<std::uint8_t> out(keys.size() * c);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    for (std::size_t ch = 0; ch < c; ++ch) {
      out[i * c + ch] = static_cast<std::uint8_t>(keys[i] >> (8 * (c - 1 - ch)));
    }
  }
  return out;
}

bool same_pixel_multiset(const ImageBuffer& a, const ImageBuffer& b) {
  if (a.channels() != b.channels() || a.pixel_count() != b.pixel_count()) return false;
  return sorted_pixel_tuples(a) == sorted_pixel_tuples(b);
}

}  // namespace eit
