#include "eit/corruption.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "eit/random.hpp"
#include "eit/transform_spec.hpp"

namespace eit {

Severity::Severity(int level) : level_(level) {
  if (level < 1 || level > 5) {
    throw std::invalid_argument("severity must be in 1..5, got " + std::to_string(level));
  }
}

double severity_sigma(Severity level) noexcept {
  return kGaussianNoiseSigma[static_cast<std::size_t>(level.level() - 1)];
}

ImageBuffer gaussian_noise(const ImageBuffer& img, Severity level, std::uint64_t seed) {
  const double sigma = severity_sigma(level);
  ImageBuffer out = img;
  auto data = out.data();
  SplitMix64 rng(seed);
  double spare = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    double z;
    if (i % 2 == 0) {
      const double u1 = 1.0 - rng.uniform();
      const double u2 = rng.uniform();
      const double r = std::sqrt(-2.0 * std::log(u1));
      const double theta = 2.0 * std::numbers::pi * u2;
      z = r * std::cos(theta);
      spare = r * std::sin(theta);
    } else {
      z = spare;
    }
    const double x = std::clamp(data[i] / 255.0 + sigma * z, 0.0, 1.0);
    data[i] = static_cast<std::uint8_t>(std::round(x * 255.0));
  }
  return out;
}

nlohmann::ordered_json GaussianNoiseSpec::to_json() const {
  nlohmann::ordered_json j;
  j["kind"] = "gaussian-noise";
  j["severity"] = severity.level();
  return j;
}

GaussianNoiseSpec GaussianNoiseSpec::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || j["kind"] != "gaussian-noise") {
    throw SpecError("kind", "expected \"gaussian-noise\"");
  }
  for (const auto& [key, value] : j.items()) {
    if (key != "kind" && key != "severity") throw SpecError(key, "unknown field");
  }
  if (!j.contains("severity") || !j["severity"].is_number_integer()) {
    throw SpecError("severity", "expected an integer in 1..5");
  }
  const auto level = j["severity"].get<long long>();
  if (level < 1 || level > 5) throw SpecError("severity", "must be in 1..5");
  return GaussianNoiseSpec{Severity(static_cast<int>(level))};
}

}  // namespace eit
