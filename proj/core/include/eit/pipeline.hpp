#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "eit/apply.hpp"
#include "eit/image_io.hpp"
#include "eit/manifest.hpp"

namespace eit {

/// Job-level failure: bad configuration or an output that cannot be written.
class JobError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kDefaultImageGlob = "*.png;*.jpg;*.jpeg";
inline constexpr std::string_view kManifestFileName = "manifest.jsonl";
inline constexpr std::string_view kJobFileName = "job.json";

struct JobConfig {
  std::filesystem::path input_root;
  std::filesystem::path output_root;
  Operation operation = TransformSpec{};
  std::uint64_t master_seed = 0;
  std::size_t workers = 1;
  /// ';'-separated file-name patterns (* and ?), matched case-insensitively.
  std::string image_glob{kDefaultImageGlob};
  OutputFormat format = OutputFormat::kPng;

  /// Throws JobError (missing input root, zero workers) or SpecError.
  void validate() const;

  nlohmann::ordered_json to_json() const;
  /// Inverse of to_json; every field except "workers", "image_glob" and
  /// "format" is required.
  static JobConfig from_json(const nlohmann::json& j);
};

bool glob_match(std::string_view patterns, std::string_view file_name);

/// Image keys under `root`: '/'-separated relative paths of regular files
/// whose name matches `glob`, sorted.
std::vector<std::string> list_images(const std::filesystem::path& root, std::string_view glob);

/// Output location (relative to output_root) for each key, same order. The
/// extension is replaced by the format's; if two keys would collide the
/// format extension is appended to the full key instead.
std::vector<std::string> output_paths(const std::vector<std::string>& keys, OutputFormat format);

/// Decodes, transforms, encodes and digests one image. Decode and transform
/// problems become an error record; write failures throw ImageWriteError.
ManifestRecord process_image(const JobConfig& cfg, const std::string& key,
                             const std::string& output_rel);

/// Runs the whole job on `cfg.workers` threads. Writes outputs mirroring the
/// input tree, then manifest.jsonl and job.json in output_root. Records are
/// sorted by key; results do not depend on the worker count.
///
/// Throws JobError if the configuration is invalid or any output cannot be
/// written. Undecodable images only produce error records.
Manifest run_job(const JobConfig& cfg);

struct RecordCheck {
  std::string image_key;
  bool passed = true;
  std::vector<std::string> problems;
};

struct VerifyReport {
  std::vector<RecordCheck> records;

  std::size_t failed() const noexcept;
  bool all_passed() const noexcept { return failed() == 0; }
};

/// Re-decodes inputs and outputs, re-checks both digests, and for
/// rearranging transforms re-checks that input and output hold the same
/// pixel multiset. Relative output paths resolve against `output_root`.
VerifyReport verify_outputs(const Manifest& manifest, const std::filesystem::path& output_root);
VerifyReport verify_outputs(const std::filesystem::path& manifest_path);

/// For every segmentation record, writes the input's label image next to
/// its output as "<output stem>.segments.png". Returns the files written.
std::vector<std::filesystem::path> dump_segments(const Manifest& manifest,
                                                 const std::filesystem::path& output_root);

}  // namespace eit
