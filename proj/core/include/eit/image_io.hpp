#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "eit/image.hpp"

namespace eit {

class ImageDecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ImageWriteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lossless output encodings.
enum class OutputFormat { kPng, kBmp };

std::string_view format_name(OutputFormat f) noexcept;
std::optional<OutputFormat> parse_format(std::string_view name) noexcept;
/// ".png" / ".bmp"
std::string_view format_extension(OutputFormat f) noexcept;

/// Decodes an 8-bit PNG/JPEG (or anything else the codec stack reads) into
/// RGB or gray samples. Alpha is dropped; other bit depths are rejected.
ImageBuffer read_image(const std::filesystem::path& path);

/// Encodes losslessly, creating parent directories as needed.
void write_image(const std::filesystem::path& path, const ImageBuffer& img, OutputFormat format);

}  // namespace eit
