// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <random>

#include "gdn/scanline_graph.hpp"
#include "gdn/synthetic.hpp"

namespace {

void BM_ScanLineGraph(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const gdn::PointCloud pc = gdn::random_voxel_cloud(n, 10, 1);
  for (auto _ : state) benchmark::DoNotOptimize(gdn::build_slg(pc));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ScanLineGraph)->RangeMultiplier(10)->Range(1000, 1000000)->Unit(benchmark::kMillisecond);

void BM_WeightedScanLineGraph(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const gdn::PointCloud pc = gdn::random_voxel_cloud(n, 10, 1);
  for (auto _ : state) benchmark::DoNotOptimize(gdn::build_weighted_slg(pc));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_WeightedScanLineGraph)->RangeMultiplier(10)->Range(1000, 1000000)->Unit(benchmark::kMillisecond);

void BM_BruteForceKnn(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const gdn::PointCloud pc = gdn::random_voxel_cloud(n, 10, 1);
  for (auto _ : state) benchmark::DoNotOptimize(gdn::build_knn_brute(pc, 6));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BruteForceKnn)->RangeMultiplier(10)->Range(1000, 100000)->Unit(benchmark::kMillisecond);

void BM_RadixSort(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::vector<std::uint64_t> keys(static_cast<std::size_t>(state.range(0)));
  for (auto& k : keys) k = rng() >> 34;  // 30-bit keys, as for b = 10
  for (auto _ : state) benchmark::DoNotOptimize(gdn::radix_sort_permutation(keys, 30));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RadixSort)->RangeMultiplier(10)->Range(1000, 1000000);

}  // namespace
