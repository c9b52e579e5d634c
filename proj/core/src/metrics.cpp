// SPDX-License-Identifier: Apache-2.0

#include "gdn/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "parallel.hpp"

namespace gdn {
namespace {

// Noise is drawn in fixed blocks of points, each with its own engine seeded
// from (seed, block), so results are independent of scheduling.
constexpr std::size_t kNoiseBlock = 4096;
constexpr std::size_t kSumChunk = 8192;

}  // namespace

double color_mse(const Signal& reference, const Signal& test) {
  if (reference.size() != test.size())
    throw std::invalid_argument("clouds differ in size: " + std::to_string(reference.size()) +
                                " vs " + std::to_string(test.size()));
  if (reference.empty()) throw std::invalid_argument("empty cloud");
  const double sse = detail::chunked_sum(reference.size(), kSumChunk, 0.0,
                                         [&](std::size_t b, std::size_t e) {
                                           double s = 0.0;
                                           for (std::size_t i = b; i < e; ++i)
                                             for (int c = 0; c < 3; ++c) {
                                               const double d = reference[i][c] - test[i][c];
                                               s += d * d;
                                             }
                                           return s;
                                         });
  return sse / (3.0 * static_cast<double>(reference.size()));
}

double psnr(const PointCloud& reference, const PointCloud& test, double cap) {
  const double mse = color_mse(reference.colors, test.colors);
  if (mse == 0.0) return cap;
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

PointCloud add_gaussian_noise(const PointCloud& pc, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("noise sigma must be nonnegative");
  PointCloud out = pc;
  if (sigma == 0.0) return out;

  const std::size_t n = pc.size();
  const std::size_t blocks = (n + kNoiseBlock - 1) / kNoiseBlock;
  detail::parallel_for(blocks, 1, [&](std::size_t b0, std::size_t b1) {
    for (std::size_t b = b0; b < b1; ++b) {
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
      std::mt19937_64 engine(seq);
      std::normal_distribution<double> noise(0.0, sigma);
      const std::size_t end = std::min(n, (b + 1) * kNoiseBlock);
      for (std::size_t i = b * kNoiseBlock; i < end; ++i)
        for (auto& v : out.colors[i]) v = std::clamp(v + noise(engine), 0.0, 255.0);
    }
  });
  return out;
}

}  // namespace gdn
