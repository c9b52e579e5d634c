// SPDX-License-Identifier: Apache-2.0

#ifndef GDN_GRAPH_FILTER_HPP
#define GDN_GRAPH_FILTER_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "gdn/graph.hpp"
#include "gdn/noise_estimation.hpp"
#include "gdn/point_cloud.hpp"

namespace gdn {

/// How the power-loss criterion pools the color channels.
enum class CriterionMode {
  /// One deviation from sigma_est^2 over all 3 * included entries.
  Pooled,
  /// Mean over channels of each channel's deviation from its own sigma^2.
  PerChannel,
};

struct FilterConfig {
  std::size_t q_max = 64;
  /// Criterion value below which a selection is reported as converged;
  /// unset means 1e-3 * sigma_est^2.
  std::optional<double> epsilon;
  bool fslr_enabled = true;
  std::size_t patch_size = kDefaultPatchSize;
  /// Frames between noise re-estimations in a sequence.
  std::size_t noise_reestimate_interval = 10;
  /// Below this sigma_est the region mask keeps every point.
  double fslr_sigma_floor = 0.5;
  CriterionMode criterion = CriterionMode::Pooled;
  NoiseEstimatorOptions noise;
  /// Evaluate every q up to q_max instead of stopping after three
  /// consecutive increases past the best value.
  bool exhaustive = false;
};

/// One step of the random-walk low-pass filter with self-loops:
/// out_i = (d_i f_i + sum_j w_ij f_j) / (2 d_i), d_i = sum_j w_ij.
/// Vertices with d_i = 0 keep their value. Unweighted graphs use w = 1.
void filter_step(const Graph& g, const Signal& in, Signal& out);
Signal filter_step(const Graph& g, const Signal& in);

/// q repeated filter steps.
Signal apply_filter(const Graph& g, Signal signal, std::size_t q);

/// Frequency response (1 - lambda / 2)^q of q filter steps.
double spectral_response(double lambda, std::size_t q);

/// Points allowed to take part in filter selection.
struct FslrMask {
  std::vector<std::uint8_t> include;
  std::size_t included_count = 0;

  static FslrMask all(std::size_t n) { return {std::vector<std::uint8_t>(n, 1), n}; }
  double excluded_fraction() const {
    return include.empty() ? 0.0 : 1.0 - double(included_count) / double(include.size());
  }
};

/// Excludes points whose patch has mean per-channel standard deviation above
/// 2 * sigma_est. Points without a patch stay included. Below `sigma_floor`
/// every point is included. Throws PipelineError if nothing is left, in
/// which case selection should fall back to FslrMask::all().
FslrMask fslr_mask(const PatchSet& patches, std::size_t num_points, double sigma_est,
                   double sigma_floor = 0.5);

/// |sigma_est^2 - (sum y^2 - sum x_q^2) / (3 * included)| over included points.
double selection_criterion(const Signal& y, const Signal& x_q, const FslrMask& mask, double sigma_est);

/// Per-channel variant: mean over c of |sigma_c^2 - loss_c|.
double selection_criterion(const Signal& y, const Signal& x_q, const FslrMask& mask,
                           const std::array<double, 3>& channel_sigma);

struct FilterSelection {
  std::size_t q = 0;
  Signal filtered;
  double criterion = 0.0;
  /// Criterion for q = 0, 1, ... as evaluated.
  std::vector<double> criteria;
  bool converged = false;
};

/// Chooses the integer q in [0, q_max] minimizing the criterion (ties to the
/// smaller q) and returns the signal filtered q times.
FilterSelection select_q(const Signal& noisy, const Graph& g, double sigma_est,
                         const FilterConfig& cfg, const FslrMask& mask,
                         const std::optional<std::array<double, 3>>& channel_sigma = std::nullopt);
FilterSelection select_q(const Signal& noisy, const Graph& g, double sigma_est, const FilterConfig& cfg);

}  // namespace gdn

#endif  // GDN_GRAPH_FILTER_HPP
