// SPDX-License-Identifier: Apache-2.0

#ifndef GDN_POINT_CLOUD_HPP
#define GDN_POINT_CLOUD_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gdn {

/// Largest supported bit depth; three b-bit coordinates must fit a 64-bit code.
inline constexpr int kMaxBitDepth = 21;

using Coord = std::array<std::uint32_t, 3>;
using Position = std::array<double, 3>;
using Rgb = std::array<double, 3>;

/// N x 3 color signal, one RGB triple per point.
using Signal = std::vector<Rgb>;

/// Raised for malformed or unsupported input files.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a pipeline stage cannot produce a result for valid-looking input.
class PipelineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A colored point cloud on an integer voxel grid.
///
/// Clouds read from files with floating point positions keep them in
/// `positions` until quantize_coordinates() maps them onto the grid;
/// graph construction refuses such clouds.
struct PointCloud {
  std::vector<Coord> coords;
  Signal colors;
  int bit_depth = 1;
  std::vector<Position> positions;

  std::size_t size() const { return colors.size(); }
  bool empty() const { return colors.empty(); }
  bool quantized() const { return positions.empty(); }
};

/// Smallest b such that every coordinate is below 2^b (at least 1).
int required_bit_depth(const std::vector<Coord>& coords);

/// Throws std::invalid_argument when the cloud violates its invariants:
/// sizes disagree, coordinates outside the b-bit grid, or colors outside [0,255].
void validate(const PointCloud& pc);

/// Requires a quantized cloud; used as a precondition by graph builders.
void require_quantized(const PointCloud& pc, const char* what);

/// Maps each axis affinely from [min, max] onto [0, 2^b - 1] with rounding.
/// Degenerate axes map to 0. Quantized clouds whose coordinates already fit
/// the b-bit grid are passed through unchanged, with bit depth b.
PointCloud quantize_coordinates(const PointCloud& pc, int bits);

/// Reinterprets floating point positions as voxel coordinates when every value
/// is a nonnegative integer below 2^21; the bit depth is the smallest that fits.
/// Returns nullopt otherwise. Quantized clouds are returned as-is.
std::optional<PointCloud> integral_voxels(const PointCloud& pc);

}  // namespace gdn

#endif  // GDN_POINT_CLOUD_HPP
