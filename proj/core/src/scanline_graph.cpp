// SPDX-License-Identifier: Apache-2.0

#include "gdn/scanline_graph.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "parallel.hpp"

namespace gdn {
namespace {

constexpr std::uint32_t kNoNeighbor = std::numeric_limits<std::uint32_t>::max();
constexpr std::size_t kGrain = 16384;

// (slow, middle, fast) axis indices for each scan line.
constexpr std::array<int, 3> axis_order(ScanLine line) {
  switch (line) {
    case ScanLine::ZYX: return {2, 1, 0};
    case ScanLine::XZY: return {0, 2, 1};
    case ScanLine::YXZ: return {1, 0, 2};
  }
  return {2, 1, 0};
}

double squared_distance(const Coord& a, const Coord& b) {
  double s = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double d = static_cast<double>(a[k]) - static_cast<double>(b[k]);
    s += d * d;
  }
  return s;
}

}  // namespace

ScanLineCodes scanline_codes(const PointCloud& pc, ScanLine line) {
  require_quantized(pc, "scan-line coding");
  const int b = pc.bit_depth;
  if (b < 1 || b > kMaxBitDepth)
    throw std::invalid_argument("scan-line codes need 1 <= b <= 21, got " + std::to_string(b));
  const auto [slow, mid, fast] = axis_order(line);
  ScanLineCodes out;
  out.key_bits = 3 * b;
  out.codes.resize(pc.size());
  detail::parallel_for(pc.size(), kGrain, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto& g = pc.coords[i];
      out.codes[i] = (std::uint64_t{g[slow]} << (2 * b)) | (std::uint64_t{g[mid]} << b) |
                     std::uint64_t{g[fast]};
    }
  });
  return out;
}

std::vector<std::uint32_t> radix_sort_permutation(std::span<const std::uint64_t> keys,
                                                  int key_bits) {
  const std::size_t n = keys.size();
  if (n > std::numeric_limits<std::uint32_t>::max())
    throw std::length_error("radix sort supports at most 2^32 - 1 keys");
  key_bits = std::clamp(key_bits, 1, 64);

  std::vector<std::uint64_t> key_a(keys.begin(), keys.end()), key_b(n);
  std::vector<std::uint32_t> idx_a(n), idx_b(n);
  for (std::size_t i = 0; i < n; ++i) idx_a[i] = static_cast<std::uint32_t>(i);

  const int passes = (key_bits + 7) / 8;
  for (int pass = 0; pass < passes; ++pass) {
    const int shift = 8 * pass;
    std::array<std::size_t, 256> count{};
    for (auto k : key_a) ++count[(k >> shift) & 0xFF];
    // A pass where every key shares one digit leaves the order unchanged.
    if (std::any_of(count.begin(), count.end(), [n](std::size_t c) { return c == n; })) continue;
    std::size_t sum = 0;
    for (auto& c : count) {
      const std::size_t here = c;
      c = sum;
      sum += here;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t dst = count[(key_a[i] >> shift) & 0xFF]++;
      key_b[dst] = key_a[i];
      idx_b[dst] = idx_a[i];
    }
    key_a.swap(key_b);
    idx_a.swap(idx_b);
  }
  return idx_a;
}

Graph build_slg(const PointCloud& pc) {
  require_quantized(pc, "scan-line graph construction");
  const std::size_t n = pc.size();
  Graph g;
  g.degree_bound = kScanLineDegreeBound;
  g.offsets.assign(n + 1, 0);
  if (n < 2) return g;

  // Slot 2*s holds the predecessor and 2*s+1 the successor in scan s.
  std::vector<std::array<std::uint32_t, kScanLineDegreeBound>> slots(n);
  for (auto& s : slots) s.fill(kNoNeighbor);

  for (int s = 0; s < 3; ++s) {
    const auto perm = sort_permutation(scanline_codes(pc, kScanLines[s]));
    detail::parallel_for(n, kGrain, [&](std::size_t begin, std::size_t end) {
      for (std::size_t k = begin; k < end; ++k) {
        auto& slot = slots[perm[k]];
        if (k > 0) slot[2 * s] = perm[k - 1];
        if (k + 1 < n) slot[2 * s + 1] = perm[k + 1];
      }
    });
  }

  std::vector<std::uint8_t> degree(n);
  detail::parallel_for(n, kGrain, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      auto& slot = slots[i];
      std::sort(slot.begin(), slot.end());
      auto last = std::unique(slot.begin(), slot.end());
      last = std::remove(slot.begin(), last, kNoNeighbor);
      degree[i] = static_cast<std::uint8_t>(last - slot.begin());
    }
  });

  for (std::size_t i = 0; i < n; ++i) g.offsets[i + 1] = g.offsets[i] + degree[i];
  g.neighbors.resize(g.offsets.back());
  detail::parallel_for(n, kGrain, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      std::copy_n(slots[i].begin(), degree[i], g.neighbors.begin() + g.offsets[i]);
  });
  return g;
}

double compute_sigma_g(const PointCloud& pc, const Graph& g) {
  require_quantized(pc, "sigma_g");
  if (g.num_edges() == 0) throw std::invalid_argument("sigma_g needs a graph with at least one edge");
  const double total = detail::chunked_sum(g.num_vertices(), kGrain, 0.0,
                                           [&](std::size_t begin, std::size_t end) {
                                             double s = 0.0;
                                             for (std::size_t i = begin; i < end; ++i)
                                               for (auto j : g.neighbors_of(i))
                                                 if (j > i)
                                                   s += std::sqrt(squared_distance(pc.coords[i],
                                                                                   pc.coords[j]));
                                             return s;
                                           });
  return total / static_cast<double>(g.num_edges());
}

Graph apply_gaussian_weights(const PointCloud& pc, Graph g, double sigma_g) {
  if (!(sigma_g > 0.0) || !std::isfinite(sigma_g))
    throw std::invalid_argument("sigma_g must be positive and finite");
  require_quantized(pc, "edge weighting");
  if (pc.size() != g.num_vertices()) throw std::invalid_argument("graph and cloud sizes differ");
  const double inv = 1.0 / (sigma_g * sigma_g);
  g.weights.resize(g.neighbors.size());
  detail::parallel_for(g.num_vertices(), kGrain, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t e = g.offsets[i]; e < g.offsets[i + 1]; ++e) {
        const double w = std::exp(-squared_distance(pc.coords[i], pc.coords[g.neighbors[e]]) * inv);
        g.weights[e] = std::max(w, std::numeric_limits<double>::min());
      }
  });
  g.sigma_g = sigma_g;
  return g;
}

Graph build_weighted_slg(const PointCloud& pc) {
  Graph g = build_slg(pc);
  if (g.num_edges() == 0) return g;
  const double sigma_g = compute_sigma_g(pc, g);
  // Every edge joins coincident points; any positive scale yields unit weights.
  return apply_gaussian_weights(pc, std::move(g), sigma_g > 0.0 ? sigma_g : 1.0);
}

}  // namespace gdn
