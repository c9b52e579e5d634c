// SPDX-License-Identifier: Apache-2.0

#ifndef GDN_PIPELINE_HPP
#define GDN_PIPELINE_HPP

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>

#include "gdn/graph_filter.hpp"
#include "gdn/point_cloud.hpp"

namespace gdn {

/// Stage names used in DenoiseReport::stage_timings.
inline constexpr const char* kStageGraph = "graph_construction";
inline constexpr const char* kStageNoise = "noise_estimation";
inline constexpr const char* kStageFilter = "lowpass_filter";

struct DenoiseReport {
  std::size_t num_points = 0;
  std::size_t selected_q = 0;
  double sigma_est = 0.0;
  std::array<double, 3> per_channel_sigma{};
  /// q came from a previous frame; noise was not estimated.
  bool sigma_cached = false;
  /// Fraction of points the region mask kept out of filter selection.
  double masked_fraction = 0.0;
  /// The region mask excluded everything and selection used all points.
  bool fslr_fallback = false;
  double criterion = 0.0;
  bool converged = false;
  double sigma_g = 0.0;
  std::size_t num_edges = 0;
  std::map<std::string, double> stage_timings;
  std::optional<double> psnr_db;
};

struct DenoiseResult {
  PointCloud cloud;
  DenoiseReport report;
};

/// Full color denoising of one quantized cloud: scan-line graph, patch-based
/// noise estimate, masked filter selection and q low-pass steps. With
/// `cached_q` the estimate and selection are skipped. Clouds with fewer than
/// two points come back unchanged with q = 0. Geometry is never modified.
DenoiseResult denoise(const PointCloud& noisy, const FilterConfig& cfg,
                      std::optional<std::size_t> cached_q = std::nullopt);

}  // namespace gdn

#endif  // GDN_PIPELINE_HPP
