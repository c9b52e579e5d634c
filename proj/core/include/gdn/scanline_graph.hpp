// SPDX-License-Identifier: Apache-2.0

#ifndef GDN_SCANLINE_GRAPH_HPP
#define GDN_SCANLINE_GRAPH_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "gdn/graph.hpp"
#include "gdn/point_cloud.hpp"

namespace gdn {

/// Axis orderings of the three raster scans, slowest axis first:
/// line 1 = (z, y, x), line 2 = (x, z, y), line 3 = (y, x, z).
enum class ScanLine : int { ZYX = 1, XZY = 2, YXZ = 3 };

inline constexpr ScanLine kScanLines[] = {ScanLine::ZYX, ScanLine::XZY, ScanLine::YXZ};

/// Degree limit of a scan-line graph: two neighbors per scan.
inline constexpr std::size_t kScanLineDegreeBound = 6;

struct ScanLineCodes {
  std::vector<std::uint64_t> codes;
  /// Number of significant key bits, 3b.
  int key_bits = 0;
};

/// Place-value code 2^(2b) * slow + 2^b * middle + fast for each point.
ScanLineCodes scanline_codes(const PointCloud& pc, ScanLine line);

/// Stable LSD radix sort with 8-bit digits over the low `key_bits` bits.
/// Returns perm with keys[perm[k]] <= keys[perm[k+1]]; ties keep input order.
std::vector<std::uint32_t> radix_sort_permutation(std::span<const std::uint64_t> keys,
                                                  int key_bits = 64);

inline std::vector<std::uint32_t> sort_permutation(const ScanLineCodes& codes) {
  return radix_sort_permutation(codes.codes, codes.key_bits);
}

/// Connects rank-consecutive points of each scan and unions the three edge
/// sets. The result is unweighted; see apply_gaussian_weights().
Graph build_slg(const PointCloud& pc);

/// Mean Euclidean length over unique undirected edges.
double compute_sigma_g(const PointCloud& pc, const Graph& g);

/// Sets w_ij = exp(-|g_i - g_j|^2 / sigma_g^2) and records sigma_g.
/// Weights that underflow are held at the smallest normal double so every
/// edge keeps a positive weight.
Graph apply_gaussian_weights(const PointCloud& pc, Graph g, double sigma_g);

/// build_slg() followed by compute_sigma_g() and apply_gaussian_weights().
/// A graph without edges is returned unweighted with sigma_g = 0.
Graph build_weighted_slg(const PointCloud& pc);

/// Exact k nearest neighbors per point (ties by index), symmetrized by union.
Graph build_knn_brute(const PointCloud& pc, std::size_t k);

}  // namespace gdn

#endif  // GDN_SCANLINE_GRAPH_HPP
