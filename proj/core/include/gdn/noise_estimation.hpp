// SPDX-License-Identifier: Apache-2.0

#ifndef GDN_NOISE_ESTIMATION_HPP
#define GDN_NOISE_ESTIMATION_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gdn/graph.hpp"
#include "gdn/jacobi.hpp"
#include "gdn/point_cloud.hpp"

namespace gdn {

inline constexpr std::size_t kDefaultPatchSize = 7;

/// Distance-ordered neighborhood patches, one matrix per color channel.
///
/// Patch k belongs to point `points[k]`. Its first entry is that point's
/// value; the remaining D - 1 entries are its nearest graph neighbors by
/// Euclidean distance (ties by index). Points with fewer than D - 1
/// neighbors have no patch.
struct PatchSet {
  std::size_t patch_size = 0;
  std::vector<std::uint32_t> points;
  std::array<std::vector<double>, 3> channels;

  std::size_t eligible_count() const { return points.size(); }
  std::span<const double> patch(int channel, std::size_t k) const {
    return {channels[channel].data() + k * patch_size, patch_size};
  }
};

PatchSet extract_patches(const PointCloud& pc, const Graph& g, std::size_t patch_size);

/// Population covariance (divisor = eligible count) of one channel's patches.
SquareMatrix patch_covariance(const PatchSet& patches, int channel);

/// How the tail mean is normalized. `TailLength` divides the sum of the
/// D - m tail eigenvalues by D - m; `TailLengthPlusOne` divides by D - m + 1.
enum class TailDivisor { TailLength, TailLengthPlusOne };

/// Which m the tail search returns.
enum class TailRule {
  /// Smallest m whose tail mean exceeds the tail median.
  FirstSkewed,
  /// Drop leading eigenvalues while the tail mean exceeds its median; m is
  /// the first tail that is no longer skewed upward.
  FirstBalanced,
};

struct TailSelection {
  /// Number of leading eigenvalues attributed to signal.
  std::size_t m = 0;
  double tau = 0.0;
  /// True when no m satisfied the rule and m = floor(D / 2) was used.
  bool fallback = false;
};

/// Searches m in [1, D - 2] over tails {lambda_(m+1) .. lambda_D}, comparing
/// the tail mean against the tail median (strictly greater counts as skewed).
/// Eigenvalues must be descending, D >= 3. Without a qualifying m the result
/// is m = floor(D / 2) with `fallback` set.
TailSelection select_tail(std::span<const double> eigenvalues,
                          TailDivisor divisor = TailDivisor::TailLength,
                          TailRule rule = TailRule::FirstBalanced);

struct NoiseEstimate {
  double sigma_est = 0.0;
  std::array<double, 3> per_channel_sigma{};
  std::array<std::vector<double>, 3> eigenvalues;
  std::array<TailSelection, 3> tail{};
  std::size_t eligible_count = 0;
};

struct NoiseEstimatorOptions {
  TailDivisor divisor = TailDivisor::TailLength;
  TailRule rule = TailRule::FirstBalanced;
};

NoiseEstimate estimate_noise(const PatchSet& patches, const NoiseEstimatorOptions& options = {});
NoiseEstimate estimate_noise(const PointCloud& pc, const Graph& g,
                             std::size_t patch_size = kDefaultPatchSize,
                             const NoiseEstimatorOptions& options = {});

}  // namespace gdn

#endif  // GDN_NOISE_ESTIMATION_HPP
