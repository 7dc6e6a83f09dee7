#include "eit/split.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "eit/random.hpp"

namespace eit {

namespace {

SplitCounts counts_from_ratios(const SplitRatios& r, std::size_t n) {
  const double sum = r.train + r.val + r.test;
  if (r.train < 0 || r.val < 0 || r.test < 0 || std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("split ratios must be non-negative and sum to 1");
  }
  const auto nd = static_cast<double>(n);
  SplitCounts c;
  c.train = std::min(n, static_cast<std::size_t>(std::floor(r.train * nd)));
  c.val = std::min(n - c.train, static_cast<std::size_t>(std::floor(r.val * nd)));
  c.test = n - c.train - c.val;
  return c;
}

void cut(std::vector<std::string> sorted_keys, const SplitCounts& c, std::uint64_t seed,
         SplitResult& out) {
  const std::size_t n = sorted_keys.size();
  if (c.train + c.val + c.test != n) {
    throw std::invalid_argument("split counts sum to " + std::to_string(c.train + c.val + c.test) +
                                " but the corpus has " + std::to_string(n) + " images");
  }
  const auto perm = seeded_permutation(seed, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& key = sorted_keys[perm[i]];
    if (i < c.train) {
      out.train.push_back(std::move(key));
    } else if (i < c.train + c.val) {
      out.val.push_back(std::move(key));
    } else {
      out.test.push_back(std::move(key));
    }
  }
}

}  // namespace

std::string class_of_key(std::string_view key) {
  const auto slash = key.rfind('/');
  if (slash == std::string_view::npos) return {};
  const auto dir = key.substr(0, slash);
  const auto prev = dir.rfind('/');
  return std::string(prev == std::string_view::npos ? dir : dir.substr(prev + 1));
}

SplitResult split_corpus(std::vector<std::string> keys, const SplitSpec& split) {
  if (keys.empty()) throw std::invalid_argument("split_corpus: no keys");
  std::sort(keys.begin(), keys.end());
  if (std::adjacent_find(keys.begin(), keys.end()) != keys.end()) {
    throw std::invalid_argument("split_corpus: duplicate key '" +
                                *std::adjacent_find(keys.begin(), keys.end()) + "'");
  }

  SplitResult out;
  if (!split.stratify) {
    const SplitCounts counts = std::holds_alternative<SplitCounts>(split.sizes)
                                   ? std::get<SplitCounts>(split.sizes)
                                   : counts_from_ratios(std::get<SplitRatios>(split.sizes), keys.size());
    cut(std::move(keys), counts, split.seed, out);
    return out;
  }

  if (!std::holds_alternative<SplitRatios>(split.sizes)) {
    throw std::invalid_argument("split_corpus: stratification requires ratios, not counts");
  }
  const auto& ratios = std::get<SplitRatios>(split.sizes);
  std::map<std::string, std::vector<std::string>> by_class;
  for (auto& k : keys) by_class[class_of_key(k)].push_back(std::move(k));
  for (auto& [cls, members] : by_class) {
    const SplitCounts counts = counts_from_ratios(ratios, members.size());
    cut(std::move(members), counts, mix64(split.seed, fnv1a64(cls)), out);
  }
  return out;
}

}  // namespace eit
