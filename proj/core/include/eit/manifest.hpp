#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace eit {

/// One processed image. Serialized as a single JSON object per line:
///
///   {"key":"cat/001.jpg","class":"cat","input":"/data/in/cat/001.jpg",
///    "input_digest":"9c1f...","spec":{"kind":"grid-shuffle","grid":112,"swap":true},
///    "seed":"6f3d...","output":"cat/001.png","output_digest":"41aa..."}
///
/// Digests and seeds are 16-digit lowercase hex strings. "output" is relative
/// to the directory holding the manifest. Failed images carry an "error"
/// string and null digests where nothing could be computed.
struct ManifestRecord {
  std::string image_key;
  std::string class_label;
  std::string input_path;
  std::optional<std::uint64_t> input_digest;
  nlohmann::ordered_json spec;
  std::uint64_t seed = 0;
  std::string output_path;
  std::optional<std::uint64_t> output_digest;
  std::optional<std::string> error;

  nlohmann::ordered_json to_json() const;
  static ManifestRecord from_json(const nlohmann::ordered_json& j);

  friend bool operator==(const ManifestRecord&, const ManifestRecord&) = default;
};

struct Manifest {
  std::vector<ManifestRecord> records;

  /// UTF-8, one record per line, LF endings, trailing LF after the last record.
  std::string to_jsonl() const;
  /// Throws std::runtime_error naming the line on malformed input.
  static Manifest parse_jsonl(std::string_view text);

  static Manifest load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

  std::size_t failures() const noexcept;

  friend bool operator==(const Manifest&, const Manifest&) = default;
};

std::string to_hex64(std::uint64_t value);
/// Throws std::invalid_argument unless `text` is 1..16 hex digits.
std::uint64_t parse_hex64(std::string_view text);

}  // namespace eit
