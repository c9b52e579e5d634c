// SPDX-License-Identifier: Apache-2.0

#ifndef GDN_SYNTHETIC_HPP
#define GDN_SYNTHETIC_HPP

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "gdn/point_cloud.hpp"

namespace gdn {

/// Deterministic test clouds.
///
/// Constant, Ramp and TwoTone fill the first n sites of a k x k x k lattice
/// (k = ceil(cbrt(n))) in x-fastest order. Grid needs n = k^3 and colors the
/// full lattice with a per-axis gradient.
enum class SyntheticKind { Constant, Ramp, TwoTone, Grid };

std::optional<SyntheticKind> parse_synthetic_kind(std::string_view name);
std::string_view to_string(SyntheticKind kind);

inline constexpr Rgb kMidGray{128.0, 128.0, 128.0};
inline constexpr Rgb kToneA{170.0, 80.0, 60.0};
inline constexpr Rgb kToneB{70.0, 150.0, 190.0};

struct SyntheticCloud {
  PointCloud cloud;
  /// TwoTone only: 0 for points with x below the boundary plane, 1 otherwise.
  std::vector<std::uint8_t> labels;
  /// TwoTone only: x coordinate of the first lattice column on side 1.
  std::uint32_t boundary_x = 0;
};

SyntheticCloud make_synthetic(SyntheticKind kind, std::size_t n, int bits = 10);

/// n points drawn uniformly (with repetition) from a cube about twice as
/// large as n voxels, colored uniformly in [0, 255]. Used for graph benchmarks.
PointCloud random_voxel_cloud(std::size_t n, int bits, std::uint64_t seed);

}  // namespace gdn

#endif  // GDN_SYNTHETIC_HPP
