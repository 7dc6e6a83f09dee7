#include "eit/pipeline.hpp"

#include <algorithm>

#include "eit/segmentation.hpp"

namespace eit {

namespace fs = std::filesystem;

std::size_t VerifyReport::failed() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const RecordCheck& c) { return !c.passed; }));
}

VerifyReport verify_outputs(const Manifest& manifest, const fs::path& output_root) {
  VerifyReport report;
  report.records.reserve(manifest.records.size());
  for (const auto& rec : manifest.records) {
    RecordCheck check;
    check.image_key = rec.image_key;
    auto fail = [&](std::string why) {
      check.passed = false;
      check.problems.push_back(std::move(why));
    };

    if (rec.error) {
      fail("job recorded an error: " + *rec.error);
      report.records.push_back(std::move(check));
      continue;
    }

    std::optional<ImageBuffer> input;
    std::optional<ImageBuffer> output;
    try {
      input = read_image(rec.input_path);
      if (!rec.input_digest || content_digest(*input) != *rec.input_digest) fail("input digest mismatch");
    } catch (const std::exception& e) {
      fail(std::string("input unreadable: ") + e.what());
    }
    try {
      output = read_image(output_root / fs::path(rec.output_path));
      if (!rec.output_digest || content_digest(*output) != *rec.output_digest) {
        fail("output digest mismatch");
      }
    } catch (const std::exception& e) {
      fail(std::string("output unreadable: ") + e.what());
    }

    if (input && output) {
      try {
        const Operation op = operation_from_json(rec.spec);
        if (preserves_pixel_multiset(op) && !same_pixel_multiset(*input, *output)) {
          fail("pixel multiset differs between input and output");
        }
      } catch (const std::exception& e) {
        fail(std::string("unreadable spec: ") + e.what());
      }
    }
    report.records.push_back(std::move(check));
  }
  return report;
}

VerifyReport verify_outputs(const fs::path& manifest_path) {
  return verify_outputs(Manifest::load(manifest_path), manifest_path.parent_path());
}

std::vector<fs::path> dump_segments(const Manifest& manifest, const fs::path& output_root) {
  std::vector<fs::path> written;
  for (const auto& rec : manifest.records) {
    if (rec.error) continue;
    const Operation op = operation_from_json(rec.spec);
    if (!is_segmentation(op)) continue;
    const auto& spec = std::get<TransformSpec>(op);
    const ImageBuffer input = read_image(rec.input_path);
    const SegmentMap seg = superpixel_segment(input, *spec.n_segments);
    fs::path target = output_root / fs::path(rec.output_path);
    target.replace_filename(target.stem().string() + ".segments.png");
    write_image(target, render_segment_labels(seg), OutputFormat::kPng);
    written.push_back(std::move(target));
  }
  return written;
}

}  // namespace eit
