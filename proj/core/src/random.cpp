#include "eit/random.hpp"

#include <numeric>
#include <stdexcept>
#include <utility>

namespace eit {

namespace {
__extension__ using u128 = unsigned __int128;
}  // namespace

std::uint64_t SplitMix64::bounded(std::uint64_t bound) noexcept {
  // Lemire, "Fast Random Integer Generation in an Interval" (2019).
  std::uint64_t x = next();
  u128 m = static_cast<u128>(x) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      x = next();
      m = static_cast<u128>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

std::uint64_t derive_image_seed(std::uint64_t master_seed, std::string_view image_key) {
  if (image_key.empty()) {
    throw std::invalid_argument("derive_image_seed: image_key must not be empty");
  }
  return mix64(master_seed, fnv1a64(image_key));
}

std::uint64_t derive_image_seed(const SeedContext& ctx) {
  return derive_image_seed(ctx.master_seed, ctx.image_key);
}

std::vector<std::size_t> seeded_permutation(std::uint64_t seed, std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  SplitMix64 rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.bounded(i));
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

std::vector<std::size_t> bernoulli_select(std::uint64_t seed, std::size_t n, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("bernoulli_select: p must lie in [0, 1]");
  }
  std::vector<std::size_t> picked;
  if (p == 0.0) return picked;
  if (p == 1.0) {
    // uniform() < 1 always holds, so every index is taken.
    picked.resize(n);
    std::iota(picked.begin(), picked.end(), std::size_t{0});
    return picked;
  }
  picked.reserve(static_cast<std::size_t>(static_cast<double>(n) * p) + 16);
  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    if (rng.uniform() < p) picked.push_back(i);
  }
  return picked;
}

}  // namespace eit
