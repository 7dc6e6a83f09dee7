#include "eit/image_io.hpp"

#include <cstdio>
#include <cstring>
#include <vector>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

namespace eit {

std::string_view format_name(OutputFormat f) noexcept {
  return f == OutputFormat::kPng ? "png" : "bmp";
}

std::optional<OutputFormat> parse_format(std::string_view name) noexcept {
  if (name == "png") return OutputFormat::kPng;
  if (name == "bmp") return OutputFormat::kBmp;
  return std::nullopt;
}

std::string_view format_extension(OutputFormat f) noexcept {
  return f == OutputFormat::kPng ? ".png" : ".bmp";
}

ImageBuffer read_image(const std::filesystem::path& path) {
  cv::Mat raw;
  try {
    raw = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
  } catch (const cv::Exception& e) {
    throw ImageDecodeError("cannot decode " + path.string() + ": " + e.what());
  }
  if (raw.empty()) throw ImageDecodeError("cannot decode " + path.string());
  if (raw.depth() != CV_8U) {
    throw ImageDecodeError("unsupported bit depth in " + path.string() + " (8-bit only)");
  }

  cv::Mat rgb;
  std::size_t channels = 3;
  switch (raw.channels()) {
    case 1:
      rgb = raw;
      channels = 1;
      break;
    case 2: {
      cv::extractChannel(raw, rgb, 0);
      channels = 1;
      break;
    }
    case 3:
      cv::cvtColor(raw, rgb, cv::COLOR_BGR2RGB);
      break;
    case 4:
      cv::cvtColor(raw, rgb, cv::COLOR_BGRA2RGB);
      break;
    default:
      throw ImageDecodeError("unsupported channel count in " + path.string());
  }
  if (!rgb.isContinuous()) rgb = rgb.clone();

  const auto width = static_cast<std::size_t>(rgb.cols);
  const auto height = static_cast<std::size_t>(rgb.rows);
  std::vector<std::uint8_t> data(width * height * channels);
  std::memcpy(data.data(), rgb.ptr(), data.size());
  return ImageBuffer(width, height, channels, std::move(data));
}

void write_image(const std::filesystem::path& path, const ImageBuffer& img, OutputFormat format) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw ImageWriteError("cannot create " + path.parent_path().string() + ": " + ec.message());
  }
  const int type = img.channels() == 1 ? CV_8UC1 : CV_8UC3;
  // cv::Mat over our buffer is read-only here.
  const cv::Mat view(static_cast<int>(img.height()), static_cast<int>(img.width()), type,
                     const_cast<std::uint8_t*>(img.data().data()));
  cv::Mat bgr;
  if (img.channels() == 3) {
    cv::cvtColor(view, bgr, cv::COLOR_RGB2BGR);
  } else {
    bgr = view;
  }

  std::vector<int> params;
  if (format == OutputFormat::kPng) params = {cv::IMWRITE_PNG_COMPRESSION, 3};
  // Encode explicitly so the extension of `path` never picks the codec.
  std::vector<std::uint8_t> encoded;
  bool ok = false;
  try {
    ok = cv::imencode(std::string(format_extension(format)), bgr, encoded, params);
  } catch (const cv::Exception& e) {
    throw ImageWriteError("cannot encode " + path.string() + ": " + e.what());
  }
  if (!ok) throw ImageWriteError("cannot encode " + path.string());

  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (f == nullptr) throw ImageWriteError("cannot open " + path.string() + " for writing");
  const std::size_t written = std::fwrite(encoded.data(), 1, encoded.size(), f);
  const bool closed = std::fclose(f) == 0;
  if (written != encoded.size() || !closed) throw ImageWriteError("short write to " + path.string());
}

}  // namespace eit
