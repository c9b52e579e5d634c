// SPDX-License-Identifier: Apache-2.0

#include "gdn/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace gdn {
namespace {

std::uint32_t lattice_side(std::size_t n) {
  auto k = static_cast<std::uint32_t>(std::cbrt(static_cast<double>(n)));
  while (std::uint64_t{k} * k * k < n) ++k;
  while (k > 1 && std::uint64_t{k - 1} * (k - 1) * (k - 1) >= n) --k;
  return std::max<std::uint32_t>(k, 1);
}

void check_fits(std::uint32_t side, int bits) {
  if (bits < 1 || bits > kMaxBitDepth) throw std::invalid_argument("bits must lie in [1, 21]");
  if (side > (std::uint64_t{1} << bits))
    throw std::invalid_argument("a lattice of side " + std::to_string(side) + " does not fit in " +
                                std::to_string(bits) + " bits");
}

}  // namespace

std::optional<SyntheticKind> parse_synthetic_kind(std::string_view name) {
  if (name == "constant") return SyntheticKind::Constant;
  if (name == "ramp") return SyntheticKind::Ramp;
  if (name == "two-tone") return SyntheticKind::TwoTone;
  if (name == "grid") return SyntheticKind::Grid;
  return std::nullopt;
}

std::string_view to_string(SyntheticKind kind) {
  switch (kind) {
    case SyntheticKind::Constant: return "constant";
    case SyntheticKind::Ramp: return "ramp";
    case SyntheticKind::TwoTone: return "two-tone";
    case SyntheticKind::Grid: return "grid";
  }
  return "?";
}

SyntheticCloud make_synthetic(SyntheticKind kind, std::size_t n, int bits) {
  if (n == 0) throw std::invalid_argument("synthetic clouds need at least one point");
  const std::uint32_t k = lattice_side(n);
  if (kind == SyntheticKind::Grid && std::uint64_t{k} * k * k != n)
    throw std::invalid_argument("grid clouds need n = k^3, got " + std::to_string(n));
  check_fits(k, bits);

  SyntheticCloud out;
  auto& pc = out.cloud;
  pc.bit_depth = bits;
  pc.coords.resize(n);
  pc.colors.resize(n);
  out.boundary_x = k / 2;
  if (kind == SyntheticKind::TwoTone) out.labels.resize(n);

  const double span = k > 1 ? double(k - 1) : 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = static_cast<std::uint32_t>(i % k);
    const auto y = static_cast<std::uint32_t>((i / k) % k);
    const auto z = static_cast<std::uint32_t>(i / (std::size_t{k} * k));
    pc.coords[i] = {x, y, z};
    switch (kind) {
      case SyntheticKind::Constant: pc.colors[i] = kMidGray; break;
      case SyntheticKind::Ramp: {
        const double t = (double(x) + double(y) + double(z)) / (3.0 * span);
        pc.colors[i] = {112.0 + 32.0 * t, 144.0 - 32.0 * t, 120.0 + 16.0 * t};
        break;
      }
      case SyntheticKind::TwoTone: {
        const bool side = x >= out.boundary_x;
        out.labels[i] = side ? 1 : 0;
        pc.colors[i] = side ? kToneB : kToneA;
        break;
      }
      case SyntheticKind::Grid:
        pc.colors[i] = {40.0 + 175.0 * x / span, 40.0 + 175.0 * y / span, 40.0 + 175.0 * z / span};
        break;
    }
  }
  return out;
}

PointCloud random_voxel_cloud(std::size_t n, int bits, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("random clouds need at least one point");
  const std::uint32_t side = lattice_side(2 * n);
  check_fits(side, bits);
  std::mt19937_64 engine(seed);
  std::uniform_int_distribution<std::uint32_t> coord(0, side - 1);
  std::uniform_int_distribution<int> color(0, 255);
  PointCloud pc;
  pc.bit_depth = bits;
  pc.coords.resize(n);
  pc.colors.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    pc.coords[i] = {coord(engine), coord(engine), coord(engine)};
    pc.colors[i] = {double(color(engine)), double(color(engine)), double(color(engine))};
  }
  return pc;
}

}  // namespace gdn
