#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace eit {

struct SplitCounts {
  std::size_t train = 0;
  std::size_t val = 0;
  std::size_t test = 0;
};

/// Must each be >= 0 and sum to 1 within 1e-9. Sizes are
/// floor(train * n), floor(val * n), and the remainder goes to test.
struct SplitRatios {
  double train = 1.0;
  double val = 0.0;
  double test = 0.0;
};

struct SplitSpec {
  std::variant<SplitCounts, SplitRatios> sizes = SplitRatios{};
  std::uint64_t seed = 0;
  /// Split each class (parent directory of the key) separately with the
  /// ratios, then concatenate classes in sorted order. Ratio mode only.
  bool stratify = false;
};

struct SplitResult {
  std::vector<std::string> train;
  std::vector<std::string> val;
  std::vector<std::string> test;
};

/// Sorts the keys, shuffles them with seeded_permutation(seed, n), and cuts
/// contiguous train / val / test blocks. With stratification each class uses
/// seed mix64(seed, fnv1a64(class)).
///
/// Throws std::invalid_argument for empty or duplicate keys, counts that do
/// not sum to the number of keys, bad ratios, or stratify with counts.
SplitResult split_corpus(std::vector<std::string> keys, const SplitSpec& split);

/// Immediate parent directory name of a '/'-separated key ("" at top level).
std::string class_of_key(std::string_view key);

}  // namespace eit
