// SPDX-License-Identifier: Apache-2.0

#include "gdn/pipeline.hpp"

#include <chrono>

#include "gdn/scanline_graph.hpp"

namespace gdn {
namespace {

class StageTimer {
 public:
  StageTimer(DenoiseReport& report, const char* stage)
      : report_(report), stage_(stage), start_(std::chrono::steady_clock::now()) {}
  ~StageTimer() {
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
    report_.stage_timings[stage_] += elapsed.count();
  }
  StageTimer(const StageTimer&) = delete;
  StageTimer& operator=(const StageTimer&) = delete;

 private:
  DenoiseReport& report_;
  const char* stage_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

DenoiseResult denoise(const PointCloud& noisy, const FilterConfig& cfg, std::optional<std::size_t> cached_q) {
  require_quantized(noisy, "denoising");
  validate(noisy);

  DenoiseResult result;
  result.cloud = noisy;
  auto& report = result.report;
  report.num_points = noisy.size();
  report.stage_timings = {{kStageGraph, 0.0}, {kStageNoise, 0.0}, {kStageFilter, 0.0}};
  if (noisy.size() < 2) {
    report.sigma_cached = cached_q.has_value();
    return result;
  }

  Graph g;
  {
    StageTimer t(report, kStageGraph);
    g = build_weighted_slg(noisy);
  }
  report.sigma_g = g.sigma_g;
  report.num_edges = g.num_edges();

  if (cached_q) {
    {
      StageTimer t(report, kStageFilter);
      result.cloud.colors = apply_filter(g, noisy.colors, *cached_q);
    }
    report.sigma_cached = true;
    report.selected_q = *cached_q;
    return result;
  }

  PatchSet patches;
  NoiseEstimate estimate;
  {
    StageTimer t(report, kStageNoise);
    patches = extract_patches(noisy, g, cfg.patch_size);
    estimate = estimate_noise(patches, cfg.noise);
  }
  report.sigma_est = estimate.sigma_est;
  report.per_channel_sigma = estimate.per_channel_sigma;

  {
    StageTimer t(report, kStageFilter);
    FslrMask mask = FslrMask::all(noisy.size());
    if (cfg.fslr_enabled) {
      try {
        mask = fslr_mask(patches, noisy.size(), estimate.sigma_est, cfg.fslr_sigma_floor);
      } catch (const PipelineError&) {
        report.fslr_fallback = true;
      }
    }
    report.masked_fraction = mask.excluded_fraction();

    auto selection = select_q(noisy.colors, g, estimate.sigma_est, cfg, mask, estimate.per_channel_sigma);
    report.selected_q = selection.q;
    report.criterion = selection.criterion;
    report.converged = selection.converged;
    result.cloud.colors = std::move(selection.filtered);
  }
  return result;
}

}  // namespace gdn
