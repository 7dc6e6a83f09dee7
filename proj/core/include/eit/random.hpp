#pragma once

// Deterministic randomness for every transform in the engine.
//
// All streams are reproducible in any language from the reference algorithms
// below; tests/oracle/reference.py is one such reimplementation.
//
//   fmix64(z)      z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//                  z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//                  return z ^ (z >> 31)                  (SplitMix64 finalizer)
//   SplitMix64     state += 0x9E3779B97F4A7C15; return fmix64(state)
//   fnv1a64(b)     FNV-1a, offset 0xCBF29CE484222325, prime 0x100000001B3
//   mix64(a, b)    fmix64(a ^ fmix64(b + 0x9E3779B97F4A7C15))
//   uniform()      (next() >> 11) * 2^-53, in [0, 1)
//   bounded(n)     Lemire multiply-shift with rejection, in [0, n)
//
// Arithmetic is modulo 2^64 throughout.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace eit {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t fmix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Order-sensitive combination of two 64-bit values. Used for every
/// sub-seed in the engine (per tile, per segment, per stage).
constexpr std::uint64_t mix64(std::uint64_t a, std::uint64_t b) noexcept {
  return fmix64(a ^ fmix64(b + kGoldenGamma));
}

constexpr std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes,
                                std::uint64_t hash = 0xCBF29CE484222325ULL) noexcept {
  for (std::uint8_t b : bytes) {
    hash ^= b;
    hash *= 0x100000001B3ULL;
  }
  return hash;
}

constexpr std::uint64_t fnv1a64(std::string_view text) noexcept {
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  for (char c : text) {
    hash ^= static_cast<std::uint8_t>(c);
    hash *= 0x100000001B3ULL;
  }
  return hash;
}

/// SplitMix64 (Steele, Lea, Flood 2014). Satisfies UniformRandomBitGenerator
/// so it can drive standard distributions, though the engine itself only uses
/// the documented helpers below.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  constexpr result_type operator()() noexcept { return next(); }

  constexpr std::uint64_t next() noexcept {
    state_ += kGoldenGamma;
    return fmix64(state_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  constexpr double uniform() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Unbiased integer in [0, bound). bound must be non-zero.
  std::uint64_t bounded(std::uint64_t bound) noexcept;

 private:
  std::uint64_t state_;
};

/// A master seed plus a stable per-image identifier.
struct SeedContext {
  std::uint64_t master_seed = 0;
  std::string image_key;
};

/// mix64(master_seed, fnv1a64(utf8 bytes of image_key)).
/// Throws std::invalid_argument for an empty key.
std::uint64_t derive_image_seed(const SeedContext& ctx);
std::uint64_t derive_image_seed(std::uint64_t master_seed, std::string_view image_key);

/// Fisher-Yates over 0..n-1 driven by SplitMix64(seed):
/// for i = n-1 down to 1, swap(perm[i], perm[bounded(i + 1)]).
std::vector<std::size_t> seeded_permutation(std::uint64_t seed, std::size_t n);

/// Indices i in 0..n-1 (ascending) for which the i-th draw of
/// SplitMix64(seed).uniform() is < p. Throws std::invalid_argument unless
/// 0 <= p <= 1.
std::vector<std::size_t> bernoulli_select(std::uint64_t seed, std::size_t n, double p);

}  // namespace eit
