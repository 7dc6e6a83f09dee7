#include <benchmark/benchmark.h>

#include <random>

#include "eit/block_transforms.hpp"
#include "eit/corruption.hpp"
#include "eit/random.hpp"
#include "eit/segmentation.hpp"

namespace {

eit::ImageBuffer noise_image(std::size_t edge) {
  eit::ImageBuffer img(edge, edge, 3);
  std::mt19937_64 rng(edge);
  for (auto& v : img.data()) v = static_cast<std::uint8_t>(rng());
  return img;
}

void BM_GridShuffle(benchmark::State& state) {
  const auto img = noise_image(224);
  const auto grid = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(eit::grid_shuffle(img, grid, ++seed));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_GridShuffle)->Arg(14)->Arg(56)->Arg(112);

void BM_WithinGridShuffle(benchmark::State& state) {
  const auto img = noise_image(224);
  const auto grid = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(eit::within_grid_shuffle(img, grid, 0.5, ++seed));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_WithinGridShuffle)->Arg(14)->Arg(112);

void BM_FullRandomShuffle(benchmark::State& state) {
  const auto img = noise_image(224);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(eit::full_random_shuffle(img, 1.0, ++seed));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_FullRandomShuffle);

void BM_Superpixels(benchmark::State& state) {
  const auto img = noise_image(224);
  const auto k = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(eit::superpixel_segment(img, k));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Superpixels)->Arg(8)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_GaussianNoise(benchmark::State& state) {
  const auto img = noise_image(224);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(eit::gaussian_noise(img, eit::Severity(3), ++seed));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_GaussianNoise);

void BM_SeededPermutation(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(eit::seeded_permutation(++seed, n));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_SeededPermutation)->Arg(1 << 10)->Arg(1 << 16);

}  // namespace

BENCHMARK_MAIN();
