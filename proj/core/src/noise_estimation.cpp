// SPDX-License-Identifier: Apache-2.0

#include "gdn/noise_estimation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "parallel.hpp"

namespace gdn {
namespace {

constexpr std::size_t kGrain = 8192;
constexpr std::size_t kCovChunk = 4096;

double squared_distance(const Coord& a, const Coord& b) {
  double s = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double d = static_cast<double>(a[k]) - static_cast<double>(b[k]);
    s += d * d;
  }
  return s;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

PatchSet extract_patches(const PointCloud& pc, const Graph& g, std::size_t patch_size) {
  require_quantized(pc, "patch extraction");
  if (patch_size < 2) throw std::invalid_argument("patch size must be at least 2");
  if (patch_size > g.degree_bound + 1)
    throw std::invalid_argument("patch size " + std::to_string(patch_size) +
                                " exceeds 1 + the graph's degree bound (" +
                                std::to_string(g.degree_bound + 1) + ")");
  if (g.num_vertices() != pc.size()) throw std::invalid_argument("graph and cloud sizes differ");

  PatchSet out;
  out.patch_size = patch_size;
  for (std::size_t i = 0; i < pc.size(); ++i)
    if (g.degree(i) + 1 >= patch_size) out.points.push_back(static_cast<std::uint32_t>(i));
  for (auto& ch : out.channels) ch.resize(out.points.size() * patch_size);

  detail::parallel_for(out.points.size(), kGrain, [&](std::size_t begin, std::size_t end) {
    std::vector<std::pair<double, std::uint32_t>> order;
    for (std::size_t k = begin; k < end; ++k) {
      const std::uint32_t i = out.points[k];
      order.clear();
      for (auto j : g.neighbors_of(i)) order.emplace_back(squared_distance(pc.coords[i], pc.coords[j]), j);
      std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(patch_size - 1),
                        order.end());
      for (int c = 0; c < 3; ++c) {
        double* row = out.channels[c].data() + k * patch_size;
        row[0] = pc.colors[i][c];
        for (std::size_t t = 0; t + 1 < patch_size; ++t) row[t + 1] = pc.colors[order[t].second][c];
      }
    }
  });
  return out;
}

SquareMatrix patch_covariance(const PatchSet& patches, int channel) {
  if (channel < 0 || channel > 2) throw std::invalid_argument("channel must be 0, 1 or 2");
  const std::size_t n = patches.eligible_count();
  const std::size_t d = patches.patch_size;
  if (n < 2) throw std::invalid_argument("covariance needs at least 2 patches, have " + std::to_string(n));

  // Accumulate sums of (a - ref) and (a - ref)(a - ref)^T, with ref the first
  // patch, per fixed chunk; chunks are combined in order.
  const auto ref = patches.patch(channel, 0);
  const std::size_t chunks = (n + kCovChunk - 1) / kCovChunk;
  std::vector<std::vector<double>> partial(chunks);
  detail::parallel_for(chunks, 1, [&](std::size_t c0, std::size_t c1) {
    std::vector<double> diff(d);
    for (std::size_t c = c0; c < c1; ++c) {
      auto& acc = partial[c];
      acc.assign(d + d * d, 0.0);
      const std::size_t end = std::min(n, (c + 1) * kCovChunk);
      for (std::size_t k = c * kCovChunk; k < end; ++k) {
        const auto a = patches.patch(channel, k);
        for (std::size_t r = 0; r < d; ++r) {
          diff[r] = a[r] - ref[r];
          acc[r] += diff[r];
        }
        double* outer = acc.data() + d;
        for (std::size_t r = 0; r < d; ++r)
          for (std::size_t s = r; s < d; ++s) outer[r * d + s] += diff[r] * diff[s];
      }
    }
  });

  std::vector<double> total(d + d * d, 0.0);
  for (const auto& acc : partial)
    for (std::size_t t = 0; t < total.size(); ++t) total[t] += acc[t];

  const double inv_n = 1.0 / static_cast<double>(n);
  SquareMatrix cov(d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t s = r; s < d; ++s) {
      const double v = total[d + r * d + s] * inv_n - (total[r] * inv_n) * (total[s] * inv_n);
      cov(r, s) = v;
      cov(s, r) = v;
    }
  return cov;
}

TailSelection select_tail(std::span<const double> eigenvalues, TailDivisor divisor, TailRule rule) {
  const std::size_t d = eigenvalues.size();
  if (d < 3) throw std::invalid_argument("tail selection needs at least 3 eigenvalues");

  const double scale = std::max(std::abs(eigenvalues.front()), std::abs(eigenvalues.back()));
  // Equal eigenvalues can produce a mean a few ulps above the median; such
  // ties do not count as exceeding it.
  const double tie_tolerance = 1e-12 * scale;

  auto tail_tau = [&](std::size_t m) {
    const double sum = std::accumulate(eigenvalues.begin() + static_cast<std::ptrdiff_t>(m),
                                       eigenvalues.end(), 0.0);
    const double count = static_cast<double>(divisor == TailDivisor::TailLength ? d - m : d - m + 1);
    return sum / count;
  };

  auto skewed = [&](std::size_t m) {
    std::vector<double> tail(eigenvalues.begin() + static_cast<std::ptrdiff_t>(m), eigenvalues.end());
    const double mean = std::accumulate(tail.begin(), tail.end(), 0.0) / static_cast<double>(tail.size());
    return mean - median_of(std::move(tail)) > tie_tolerance;
  };

  if (rule == TailRule::FirstSkewed) {
    for (std::size_t m = 1; m + 2 <= d; ++m)
      if (skewed(m)) return {m, tail_tau(m), false};
  } else {
    // A two-element tail always has mean == median, so the search ends by D - 2.
    for (std::size_t m = 1; m + 2 <= d; ++m)
      if (!skewed(m)) return {m, tail_tau(m), false};
  }
  const std::size_t m = d / 2;
  return {m, tail_tau(m), true};
}

NoiseEstimate estimate_noise(const PatchSet& patches, const NoiseEstimatorOptions& options) {
  if (patches.patch_size < 3)
    throw std::invalid_argument("noise estimation needs patch size >= 3");
  if (patches.eligible_count() < 2)
    throw PipelineError("noise estimation needs at least 2 points with a full patch, have " +
                        std::to_string(patches.eligible_count()));
  NoiseEstimate est;
  est.eligible_count = patches.eligible_count();
  for (int c = 0; c < 3; ++c) {
    est.eigenvalues[c] = symmetric_eigenvalues(patch_covariance(patches, c));
    est.tail[c] = select_tail(est.eigenvalues[c], options.divisor, options.rule);
    est.per_channel_sigma[c] = std::sqrt(std::max(0.0, est.tail[c].tau));
  }
  est.sigma_est = (est.per_channel_sigma[0] + est.per_channel_sigma[1] + est.per_channel_sigma[2]) / 3.0;
  return est;
}

NoiseEstimate estimate_noise(const PointCloud& pc, const Graph& g, std::size_t patch_size,
                             const NoiseEstimatorOptions& options) {
  return estimate_noise(extract_patches(pc, g, patch_size), options);
}

}  // namespace gdn
