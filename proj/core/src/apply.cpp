#include "eit/apply.hpp"

#include "eit/block_transforms.hpp"

namespace eit {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

ImageBuffer apply(const ImageBuffer& img, const TransformSpec& spec, const SegmentMap& seg,
                  std::uint64_t seed) {
  spec.validate();
  switch (spec.kind) {
    case TransformKind::kSegmentationDisplacementShuffle:
      if (!spec.swap) return img;
      return segmentation_displacement_shuffle(img, seg, seed);
    case TransformKind::kSegmentationWithinShuffle:
      return segmentation_within_shuffle(img, seg, *spec.p, seed);
    default:
      return apply(img, spec, seed);
  }
}

ImageBuffer apply(const ImageBuffer& img, const TransformSpec& spec, std::uint64_t seed) {
  spec.validate();
  switch (spec.kind) {
    case TransformKind::kFullRandomShuffle:
      return full_random_shuffle(img, *spec.p, seed);
    case TransformKind::kGridShuffle:
      if (!spec.swap) return img;
      return grid_shuffle(img, *spec.grid_size, seed);
    case TransformKind::kWithinGridShuffle:
      return within_grid_shuffle(img, *spec.grid_size, *spec.p, seed);
    case TransformKind::kLocalStructureShuffle:
      return local_structure_shuffle(img, *spec.grid_size, *spec.p, seed, spec.swap);
    case TransformKind::kColorFlatten:
      return color_flatten(img);
    case TransformKind::kSegmentationDisplacementShuffle:
    case TransformKind::kSegmentationWithinShuffle:
      return apply(img, spec, superpixel_segment(img, *spec.n_segments), seed);
  }
  throw std::logic_error("unhandled transform kind");
}

ImageBuffer apply(const ImageBuffer& img, const Operation& op, std::uint64_t seed) {
  return std::visit(overloaded{
                        [&](const TransformSpec& s) { return apply(img, s, seed); },
                        [&](const GaussianNoiseSpec& g) { return gaussian_noise(img, g.severity, seed); },
                    },
                    op);
}

ImageBuffer apply_mapping(const ImageBuffer& img, const nlohmann::json& spec, std::uint64_t seed) {
  return apply(img, TransformSpec::from_json(spec), seed);
}

ImageBuffer gaussian(const ImageBuffer& img, int severity, std::uint64_t seed) {
  if (severity < 1 || severity > 5) throw SpecError("severity", "must be in 1..5");
  return gaussian_noise(img, Severity(severity), seed);
}

std::vector<std::string> kinds() {
  std::vector<std::string> out;
  for (const auto k : kAllTransformKinds) out.emplace_back(kind_name(k));
  return out;
}

nlohmann::ordered_json operation_to_json(const Operation& op) {
  return std::visit([](const auto& s) { return s.to_json(); }, op);
}

Operation operation_from_json(const nlohmann::json& j) {
  if (j.is_object() && j.contains("kind") && j["kind"] == "gaussian-noise") {
    return GaussianNoiseSpec::from_json(j);
  }
  return TransformSpec::from_json(j);
}

bool preserves_pixel_multiset(const Operation& op) noexcept {
  const auto* spec = std::get_if<TransformSpec>(&op);
  return spec != nullptr && preserves_pixel_multiset(spec->kind);
}

bool is_segmentation(const Operation& op) noexcept {
  const auto* spec = std::get_if<TransformSpec>(&op);
  return spec != nullptr && uses_segments(spec->kind);
}

}  // namespace eit
