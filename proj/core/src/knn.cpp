// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <array>
#include <limits>
#include <stdexcept>
#include <vector>

#include "gdn/scanline_graph.hpp"
#include "parallel.hpp"

namespace gdn {
namespace {

constexpr std::size_t kBlock = 1024;

// Squared distances between integer coordinates are computed exactly: float
// is exact while 3 * (2^11 - 1)^2 < 2^24, double covers every valid bit depth.
template <typename Real>
void knn_rows(const std::vector<Real>& xs, const std::vector<Real>& ys, const std::vector<Real>& zs,
              std::size_t k, std::size_t begin, std::size_t end,
              std::vector<std::uint32_t>& result) {
  const std::size_t n = xs.size();
  std::vector<Real> dist(kBlock);
  std::vector<Real> best_d(k + 1);
  std::vector<std::uint32_t> best_j(k + 1);
  for (std::size_t i = begin; i < end; ++i) {
    const Real xi = xs[i], yi = ys[i], zi = zs[i];
    std::size_t filled = 0;
    Real worst = std::numeric_limits<Real>::infinity();
    for (std::size_t j0 = 0; j0 < n; j0 += kBlock) {
      const std::size_t len = std::min(kBlock, n - j0);
      const Real* px = xs.data() + j0;
      const Real* py = ys.data() + j0;
      const Real* pz = zs.data() + j0;
      for (std::size_t t = 0; t < len; ++t) {
        const Real dx = px[t] - xi, dy = py[t] - yi, dz = pz[t] - zi;
        dist[t] = dx * dx + dy * dy + dz * dz;
      }
      for (std::size_t t = 0; t < len; ++t) {
        // Candidates arrive in ascending index, so equal distances never displace.
        if (dist[t] >= worst && filled == k) continue;
        const std::size_t j = j0 + t;
        if (j == i) continue;
        std::size_t pos = filled;
        while (pos > 0 && best_d[pos - 1] > dist[t]) {
          best_d[pos] = best_d[pos - 1];
          best_j[pos] = best_j[pos - 1];
          --pos;
        }
        best_d[pos] = dist[t];
        best_j[pos] = static_cast<std::uint32_t>(j);
        if (filled < k) ++filled;
        if (filled == k) worst = best_d[k - 1];
      }
    }
    std::copy_n(best_j.begin(), k, result.begin() + i * k);
  }
}

}  // namespace

Graph build_knn_brute(const PointCloud& pc, std::size_t k) {
  require_quantized(pc, "brute-force kNN");
  const std::size_t n = pc.size();
  if (k == 0) throw std::invalid_argument("k must be positive");
  if (k >= n) throw std::invalid_argument("k must be smaller than the number of points");

  std::uint32_t max_coord = 0;
  for (const auto& c : pc.coords) max_coord = std::max({max_coord, c[0], c[1], c[2]});

  std::vector<std::uint32_t> nearest(n * k);
  auto run = [&](auto zero) {
    using Real = decltype(zero);
    std::vector<Real> xs(n), ys(n), zs(n);
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = static_cast<Real>(pc.coords[i][0]);
      ys[i] = static_cast<Real>(pc.coords[i][1]);
      zs[i] = static_cast<Real>(pc.coords[i][2]);
    }
    detail::parallel_for(n, 64, [&](std::size_t b, std::size_t e) {
      knn_rows(xs, ys, zs, k, b, e, nearest);
    });
  };
  if (max_coord < 2048)
    run(0.0f);
  else
    run(0.0);

  std::vector<Edge> edges;
  edges.reserve(n * k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t)
      edges.emplace_back(static_cast<std::uint32_t>(i), nearest[i * k + t]);
  return graph_from_edges(n, edges, n - 1);
}

}  // namespace gdn
