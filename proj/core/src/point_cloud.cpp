// SPDX-License-Identifier: Apache-2.0

#include "gdn/point_cloud.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace gdn {

int required_bit_depth(const std::vector<Coord>& coords) {
  std::uint32_t max_value = 0;
  for (const auto& c : coords) max_value = std::max({max_value, c[0], c[1], c[2]});
  return std::max(1, static_cast<int>(std::bit_width(max_value)));
}

void validate(const PointCloud& pc) {
  if (pc.bit_depth < 1 || pc.bit_depth > kMaxBitDepth)
    throw std::invalid_argument("bit depth must lie in [1, 21], got " +
                                std::to_string(pc.bit_depth));
  if (pc.quantized() && pc.coords.size() != pc.colors.size())
    throw std::invalid_argument("coordinate and color counts differ");
  if (!pc.quantized() && pc.positions.size() != pc.colors.size())
    throw std::invalid_argument("position and color counts differ");
  const std::uint64_t limit = std::uint64_t{1} << pc.bit_depth;
  for (const auto& c : pc.coords) {
    if (c[0] >= limit || c[1] >= limit || c[2] >= limit)
      throw std::invalid_argument("coordinate outside the " + std::to_string(pc.bit_depth) +
                                  "-bit grid");
  }
  for (const auto& rgb : pc.colors) {
    for (double v : rgb) {
      if (!std::isfinite(v) || v < 0.0 || v > 255.0)
        throw std::invalid_argument("color component outside [0, 255]");
    }
  }
}

void require_quantized(const PointCloud& pc, const char* what) {
  if (!pc.quantized())
    throw std::invalid_argument(std::string(what) +
                                " needs integer voxel coordinates; quantize the cloud first");
}

namespace {

bool integral_within(const std::vector<Position>& positions, std::uint64_t limit) {
  return std::all_of(positions.begin(), positions.end(), [&](const Position& p) {
    return std::all_of(p.begin(), p.end(), [&](double v) {
      return v >= 0.0 && v < static_cast<double>(limit) && v == std::floor(v);
    });
  });
}

}  // namespace

std::optional<PointCloud> integral_voxels(const PointCloud& pc) {
  if (pc.quantized()) return pc;
  if (!integral_within(pc.positions, std::uint64_t{1} << kMaxBitDepth)) return std::nullopt;
  PointCloud out;
  out.colors = pc.colors;
  out.coords.reserve(pc.positions.size());
  for (const auto& p : pc.positions)
    out.coords.push_back({static_cast<std::uint32_t>(p[0]), static_cast<std::uint32_t>(p[1]),
                          static_cast<std::uint32_t>(p[2])});
  out.bit_depth = required_bit_depth(out.coords);
  return out;
}

PointCloud quantize_coordinates(const PointCloud& pc, int bits) {
  if (bits < 1 || bits > kMaxBitDepth)
    throw std::invalid_argument("quantization bits must lie in [1, 21]");
  const std::uint64_t limit = std::uint64_t{1} << bits;

  PointCloud out;
  out.colors = pc.colors;
  out.bit_depth = bits;

  if (pc.quantized()) {
    const bool fits = std::all_of(pc.coords.begin(), pc.coords.end(), [&](const Coord& c) {
      return c[0] < limit && c[1] < limit && c[2] < limit;
    });
    if (fits) {
      out.coords = pc.coords;
      return out;
    }
  }

  std::vector<Position> source;
  if (pc.quantized()) {
    source.reserve(pc.coords.size());
    for (const auto& c : pc.coords) source.push_back({double(c[0]), double(c[1]), double(c[2])});
  }
  const auto& pos = pc.quantized() ? source : pc.positions;

  Position lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
              std::numeric_limits<double>::infinity()};
  Position hi{-lo[0], -lo[1], -lo[2]};
  for (const auto& p : pos) {
    for (int a = 0; a < 3; ++a) {
      if (!std::isfinite(p[a])) throw std::invalid_argument("non-finite coordinate");
      lo[a] = std::min(lo[a], p[a]);
      hi[a] = std::max(hi[a], p[a]);
    }
  }

  const double top = static_cast<double>(limit - 1);
  out.coords.resize(pos.size());
  for (std::size_t i = 0; i < pos.size(); ++i) {
    for (int a = 0; a < 3; ++a) {
      const double span = hi[a] - lo[a];
      if (span <= 0.0) {
        out.coords[i][a] = 0;
        continue;
      }
      const double scaled = std::round((pos[i][a] - lo[a]) / span * top);
      out.coords[i][a] = static_cast<std::uint32_t>(std::clamp(scaled, 0.0, top));
    }
  }
  return out;
}

}  // namespace gdn
