#include "eit/transform_spec.hpp"

#include <cmath>

namespace eit {

namespace {

constexpr std::array<std::string_view, 7> kKindNames{
    "full-random-shuffle",
    "grid-shuffle",
    "within-grid-shuffle",
    "local-structure-shuffle",
    "color-flatten",
    "segmentation-displacement-shuffle",
    "segmentation-within-shuffle",
};

std::size_t read_count(const nlohmann::json& j, const char* field) {
  const auto& v = j.at(field);
  if (v.is_number_unsigned()) return v.get<std::size_t>();
  if (v.is_number_integer()) {
    if (v.get<long long>() < 1) throw SpecError(field, "must be >= 1");
    return static_cast<std::size_t>(v.get<long long>());
  }
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d >= 1.0 && std::floor(d) == d) return static_cast<std::size_t>(d);
  }
  throw SpecError(field, "expected a positive integer");
}

}  // namespace

std::string_view kind_name(TransformKind kind) noexcept {
  return kKindNames[static_cast<std::size_t>(kind)];
}

std::optional<TransformKind> parse_kind(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == name) return static_cast<TransformKind>(i);
  }
  return std::nullopt;
}

void TransformSpec::validate() const {
  const std::string kind_str(kind_name(kind));
  if (uses_probability(kind)) {
    if (!p) throw SpecError("p", "required for kind " + kind_str);
    if (!(*p >= 0.0 && *p <= 1.0)) throw SpecError("p", "must lie in [0, 1]");
  }
  if (uses_grid(kind)) {
    if (!grid_size) throw SpecError("grid", "required for kind " + kind_str);
    if (*grid_size < 1) throw SpecError("grid", "must be >= 1");
  }
  if (uses_segments(kind)) {
    if (!n_segments) throw SpecError("segments", "required for kind " + kind_str);
    if (*n_segments < 1) throw SpecError("segments", "must be >= 1");
  }
}

TransformSpec TransformSpec::normalized() const {
  TransformSpec out;
  out.kind = kind;
  if (uses_probability(kind)) out.p = p;
  if (uses_grid(kind)) out.grid_size = grid_size;
  if (uses_segments(kind)) out.n_segments = n_segments;
  out.swap = uses_swap(kind) ? swap : true;
  return out;
}

nlohmann::ordered_json TransformSpec::to_json() const {
  validate();
  nlohmann::ordered_json j;
  j["kind"] = std::string(kind_name(kind));
  if (uses_probability(kind)) j["p"] = *p;
  if (uses_grid(kind)) j["grid"] = *grid_size;
  if (uses_segments(kind)) j["segments"] = *n_segments;
  if (uses_swap(kind)) j["swap"] = swap;
  return j;
}

TransformSpec TransformSpec::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw SpecError("kind", "transform spec must be a mapping");
  for (const auto& [key, value] : j.items()) {
    if (key != "kind" && key != "p" && key != "grid" && key != "segments" && key != "swap") {
      throw SpecError(key, "unknown field");
    }
  }
  if (!j.contains("kind")) throw SpecError("kind", "missing");
  if (!j["kind"].is_string()) throw SpecError("kind", "expected a string");
  const auto kind = parse_kind(j["kind"].get<std::string>());
  if (!kind) throw SpecError("kind", "unknown transform kind '" + j["kind"].get<std::string>() + "'");

  TransformSpec spec;
  spec.kind = *kind;
  if (j.contains("p")) {
    if (!j["p"].is_number()) throw SpecError("p", "expected a number");
    spec.p = j["p"].get<double>();
  }
  if (j.contains("grid")) spec.grid_size = read_count(j, "grid");
  if (j.contains("segments")) spec.n_segments = read_count(j, "segments");
  if (j.contains("swap")) {
    if (!j["swap"].is_boolean()) throw SpecError("swap", "expected a boolean");
    spec.swap = j["swap"].get<bool>();
  }
  spec.validate();
  return spec.normalized();
}

}  // namespace eit
