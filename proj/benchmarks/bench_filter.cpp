// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "gdn/graph_filter.hpp"
#include "gdn/metrics.hpp"
#include "gdn/noise_estimation.hpp"
#include "gdn/pipeline.hpp"
#include "gdn/scanline_graph.hpp"
#include "gdn/synthetic.hpp"

namespace {

gdn::PointCloud noisy_two_tone(std::size_t n) {
  return gdn::add_gaussian_noise(gdn::make_synthetic(gdn::SyntheticKind::TwoTone, n).cloud, 20.0, 3);
}

void BM_FilterStep(benchmark::State& state) {
  const gdn::PointCloud pc = noisy_two_tone(static_cast<std::size_t>(state.range(0)));
  const gdn::Graph g = gdn::build_weighted_slg(pc);
  gdn::Signal out;
  for (auto _ : state) {
    gdn::filter_step(g, pc.colors, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FilterStep)->RangeMultiplier(10)->Range(10000, 1000000)->Unit(benchmark::kMicrosecond);

void BM_EstimateNoise(benchmark::State& state) {
  const gdn::PointCloud pc = noisy_two_tone(static_cast<std::size_t>(state.range(0)));
  const gdn::Graph g = gdn::build_weighted_slg(pc);
  for (auto _ : state) benchmark::DoNotOptimize(gdn::estimate_noise(pc, g));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EstimateNoise)->RangeMultiplier(10)->Range(10000, 1000000)->Unit(benchmark::kMillisecond);

void BM_Denoise(benchmark::State& state) {
  const gdn::PointCloud pc = noisy_two_tone(static_cast<std::size_t>(state.range(0)));
  const gdn::FilterConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(gdn::denoise(pc, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Denoise)->RangeMultiplier(10)->Range(10000, 1000000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
