// SPDX-License-Identifier: Apache-2.0

#include "gdn/graph_filter.hpp"

#include <cmath>
#include <stdexcept>

#include "parallel.hpp"

namespace gdn {
namespace {

constexpr std::size_t kGrain = 16384;

// Per-channel sums of squares over included points, fixed chunk order.
std::array<double, 3> masked_power(const Signal& s, const FslrMask& mask) {
  constexpr std::size_t chunk = 8192;
  const std::size_t n = s.size();
  const std::size_t chunks = (n + chunk - 1) / chunk;
  std::vector<std::array<double, 3>> parts(chunks, {0.0, 0.0, 0.0});
  detail::parallel_for(chunks, 1, [&](std::size_t c0, std::size_t c1) {
    for (std::size_t c = c0; c < c1; ++c) {
      auto& p = parts[c];
      const std::size_t end = std::min(n, (c + 1) * chunk);
      for (std::size_t i = c * chunk; i < end; ++i) {
        if (!mask.include[i]) continue;
        for (int k = 0; k < 3; ++k) p[k] += s[i][k] * s[i][k];
      }
    }
  });
  std::array<double, 3> total{0.0, 0.0, 0.0};
  for (const auto& p : parts)
    for (int k = 0; k < 3; ++k) total[k] += p[k];
  return total;
}

void check_mask(const Signal& y, const Signal& x_q, const FslrMask& mask) {
  if (y.size() != x_q.size() || y.size() != mask.include.size())
    throw std::invalid_argument("signal and mask sizes differ");
  if (mask.included_count == 0) throw std::invalid_argument("selection mask includes no points");
}

double pooled_criterion(const std::array<double, 3>& py, const std::array<double, 3>& px,
                        std::size_t included, double sigma_est) {
  const double loss = ((py[0] + py[1] + py[2]) - (px[0] + px[1] + px[2])) / (3.0 * double(included));
  return std::abs(sigma_est * sigma_est - loss);
}

double channel_criterion(const std::array<double, 3>& py, const std::array<double, 3>& px,
                         std::size_t included, const std::array<double, 3>& sigma) {
  double sum = 0.0;
  for (int k = 0; k < 3; ++k) sum += std::abs(sigma[k] * sigma[k] - (py[k] - px[k]) / double(included));
  return sum / 3.0;
}

}  // namespace

void filter_step(const Graph& g, const Signal& in, Signal& out) {
  const std::size_t n = g.num_vertices();
  if (in.size() != n) throw std::invalid_argument("signal size does not match graph");
  out.resize(n);
  const bool weighted = g.weighted();
  detail::parallel_for(n, kGrain, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      Rgb acc{0.0, 0.0, 0.0};
      double d = 0.0;
      for (std::size_t e = g.offsets[i]; e < g.offsets[i + 1]; ++e) {
        const double w = weighted ? g.weights[e] : 1.0;
        const auto& f = in[g.neighbors[e]];
        d += w;
        acc[0] += w * f[0];
        acc[1] += w * f[1];
        acc[2] += w * f[2];
      }
      if (d > 0.0) {
        const double inv = 0.5 / d;
        for (int k = 0; k < 3; ++k) out[i][k] = (d * in[i][k] + acc[k]) * inv;
      } else {
        out[i] = in[i];
      }
    }
  });
}

Signal filter_step(const Graph& g, const Signal& in) {
  Signal out;
  filter_step(g, in, out);
  return out;
}

Signal apply_filter(const Graph& g, Signal signal, std::size_t q) {
  Signal scratch;
  for (std::size_t step = 0; step < q; ++step) {
    filter_step(g, signal, scratch);
    signal.swap(scratch);
  }
  return signal;
}

double spectral_response(double lambda, std::size_t q) {
  return std::pow(1.0 - 0.5 * lambda, static_cast<double>(q));
}

FslrMask fslr_mask(const PatchSet& patches, std::size_t num_points, double sigma_est,
                   double sigma_floor) {
  FslrMask mask = FslrMask::all(num_points);
  if (sigma_est < sigma_floor) return mask;
  const double threshold = 2.0 * sigma_est;
  const std::size_t d = patches.patch_size;
  for (std::size_t k = 0; k < patches.eligible_count(); ++k) {
    const std::uint32_t i = patches.points[k];
    if (i >= num_points) throw std::invalid_argument("patch set refers to a point outside the cloud");
    double spread = 0.0;
    for (int c = 0; c < 3; ++c) {
      const auto a = patches.patch(c, k);
      double mean = 0.0;
      for (double v : a) mean += v;
      mean /= double(d);
      double var = 0.0;
      for (double v : a) var += (v - mean) * (v - mean);
      spread += std::sqrt(var / double(d));
    }
    if (spread / 3.0 > threshold) {
      mask.include[i] = 0;
      --mask.included_count;
    }
  }
  if (mask.included_count == 0)
    throw PipelineError("region mask excludes every point; select the filter without a mask");
  return mask;
}

double selection_criterion(const Signal& y, const Signal& x_q, const FslrMask& mask, double sigma_est) {
  check_mask(y, x_q, mask);
  return pooled_criterion(masked_power(y, mask), masked_power(x_q, mask), mask.included_count, sigma_est);
}

double selection_criterion(const Signal& y, const Signal& x_q, const FslrMask& mask,
                           const std::array<double, 3>& channel_sigma) {
  check_mask(y, x_q, mask);
  return channel_criterion(masked_power(y, mask), masked_power(x_q, mask), mask.included_count,
                           channel_sigma);
}

FilterSelection select_q(const Signal& noisy, const Graph& g, double sigma_est, const FilterConfig& cfg,
                         const FslrMask& mask, const std::optional<std::array<double, 3>>& channel_sigma) {
  if (!(sigma_est >= 0.0)) throw std::invalid_argument("sigma_est must be nonnegative");
  check_mask(noisy, noisy, mask);
  if (noisy.size() != g.num_vertices()) throw std::invalid_argument("signal size does not match graph");

  const std::array<double, 3> sigmas =
      channel_sigma.value_or(std::array<double, 3>{sigma_est, sigma_est, sigma_est});
  const auto py = masked_power(noisy, mask);
  auto criterion = [&](const Signal& x) {
    const auto px = masked_power(x, mask);
    return cfg.criterion == CriterionMode::Pooled
               ? pooled_criterion(py, px, mask.included_count, sigma_est)
               : channel_criterion(py, px, mask.included_count, sigmas);
  };

  FilterSelection best;
  best.filtered = noisy;
  best.criterion = criterion(noisy);
  best.criteria.push_back(best.criterion);

  Signal current = noisy, next;
  std::size_t rising = 0;
  for (std::size_t q = 1; q <= cfg.q_max; ++q) {
    filter_step(g, current, next);
    current.swap(next);
    const double value = criterion(current);
    const double previous = best.criteria.back();
    best.criteria.push_back(value);
    if (value < best.criterion) {
      best.criterion = value;
      best.q = q;
      best.filtered = current;
      rising = 0;
    } else if (value > previous) {
      if (++rising >= 3 && !cfg.exhaustive) break;
    } else {
      rising = 0;
    }
  }
  const double epsilon = cfg.epsilon.value_or(1e-3 * sigma_est * sigma_est);
  best.converged = best.criterion <= epsilon;
  return best;
}

FilterSelection select_q(const Signal& noisy, const Graph& g, double sigma_est, const FilterConfig& cfg) {
  return select_q(noisy, g, sigma_est, cfg, FslrMask::all(noisy.size()));
}

}  // namespace gdn
