#pragma once

#include <array>
#include <cstdint>

#include <nlohmann/json.hpp>

#include "eit/image.hpp"

namespace eit {

/// Corruption severity, 1 (mildest) to 5.
class Severity {
 public:
  /// Throws std::invalid_argument outside 1..5.
  explicit Severity(int level);
  int level() const noexcept { return level_; }
  friend bool operator==(const Severity&, const Severity&) = default;

 private:
  int level_;
};

/// ImageNet-C gaussian noise standard deviations on the [0, 1] scale.
inline constexpr std::array<double, 5> kGaussianNoiseSigma{0.08, 0.12, 0.18, 0.26, 0.38};

double severity_sigma(Severity level) noexcept;

/// x' = round(clip(x / 255 + sigma * z, 0, 1) * 255), one z per sample in
/// data order, rounding half away from zero.
///
/// z comes from SplitMix64(seed) by Box-Muller: each pair of samples consumes
/// u1 = 1 - uniform() and u2 = uniform() (in that order), and gets
/// r * cos(2 pi u2) then r * sin(2 pi u2) with r = sqrt(-2 ln u1).
ImageBuffer gaussian_noise(const ImageBuffer& img, Severity level, std::uint64_t seed);

/// Job-level description of a gaussian-noise corruption.
struct GaussianNoiseSpec {
  Severity severity{3};

  nlohmann::ordered_json to_json() const;
  /// {"kind": "gaussian-noise", "severity": 1..5}
  static GaussianNoiseSpec from_json(const nlohmann::json& j);

  friend bool operator==(const GaussianNoiseSpec&, const GaussianNoiseSpec&) = default;
};

}  // namespace eit
