#pragma once

// Single entry point over every transform and the noise corruption. This is
// the surface the pipeline and language bindings call; both produce the same
// bytes for the same (image, spec, seed).

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "eit/corruption.hpp"
#include "eit/image.hpp"
#include "eit/segmentation.hpp"
#include "eit/transform_spec.hpp"

namespace eit {

using Operation = std::variant<TransformSpec, GaussianNoiseSpec>;

/// Applies a transform. Segmentation kinds compute their SegmentMap from
/// `img` with default SLIC options. Throws SpecError for an invalid spec and
/// std::invalid_argument when the image does not suit the kind (color-flatten
/// on a 1-channel image).
ImageBuffer apply(const ImageBuffer& img, const TransformSpec& spec, std::uint64_t seed);

/// Same, reusing a segmentation computed earlier for this exact image.
ImageBuffer apply(const ImageBuffer& img, const TransformSpec& spec, const SegmentMap& seg,
                  std::uint64_t seed);

ImageBuffer apply(const ImageBuffer& img, const Operation& op, std::uint64_t seed);

/// Binding-style call: spec given as a mapping with command-line field names.
ImageBuffer apply_mapping(const ImageBuffer& img, const nlohmann::json& spec, std::uint64_t seed);

/// Binding-style gaussian noise; severity outside 1..5 raises SpecError("severity").
ImageBuffer gaussian(const ImageBuffer& img, int severity, std::uint64_t seed);

/// Kebab-case names of the seven transforms, in canonical order.
std::vector<std::string> kinds();

nlohmann::ordered_json operation_to_json(const Operation& op);
/// Dispatches on "kind": "gaussian-noise" or one of kinds().
Operation operation_from_json(const nlohmann::json& j);

bool preserves_pixel_multiset(const Operation& op) noexcept;
bool is_segmentation(const Operation& op) noexcept;

}  // namespace eit
