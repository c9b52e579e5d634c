// SPDX-License-Identifier: Apache-2.0

#ifndef GDN_METRICS_HPP
#define GDN_METRICS_HPP

#include <cstdint>

#include "gdn/point_cloud.hpp"

namespace gdn {

inline constexpr double kDefaultPsnrCap = 100.0;

/// Color PSNR with peak 255 and MSE pooled over all 3N channel values.
/// Both clouds must list the same points in the same order. Returns `cap`
/// when the clouds are identical.
double psnr(const PointCloud& reference, const PointCloud& test, double cap = kDefaultPsnrCap);

/// Mean squared color error over all channel values.
double color_mse(const Signal& reference, const Signal& test);

/// Adds i.i.d. N(0, sigma^2) to every color component and clips to [0, 255].
/// Output depends only on (pc, sigma, seed), never on thread count.
PointCloud add_gaussian_noise(const PointCloud& pc, double sigma, std::uint64_t seed);

}  // namespace gdn

#endif  // GDN_METRICS_HPP
