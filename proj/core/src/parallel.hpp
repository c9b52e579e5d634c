// SPDX-License-Identifier: Apache-2.0

#ifndef GDN_SRC_PARALLEL_HPP
#define GDN_SRC_PARALLEL_HPP

#include <tbb/blocked_range.h>
#include <tbb/parallel_for.h>

#include <algorithm>
#include <cstddef>
#include <vector>

namespace gdn::detail {

/// Runs body(begin, end) over [0, n) in grain-sized blocks.
template <typename Body>
void parallel_for(std::size_t n, std::size_t grain, Body&& body) {
  if (n == 0) return;
  tbb::parallel_for(tbb::blocked_range<std::size_t>(0, n, std::max<std::size_t>(grain, 1)),
                    [&](const tbb::blocked_range<std::size_t>& r) { body(r.begin(), r.end()); });
}

/// Sums partial(begin, end) over fixed-size chunks and combines them in
/// chunk order, so the result does not depend on thread scheduling.
template <typename T, typename Partial>
T chunked_sum(std::size_t n, std::size_t chunk, T zero, Partial&& partial) {
  if (n == 0) return zero;
  const std::size_t chunks = (n + chunk - 1) / chunk;
  std::vector<T> parts(chunks, zero);
  tbb::parallel_for(std::size_t{0}, chunks, [&](std::size_t c) {
    parts[c] = partial(c * chunk, std::min(n, (c + 1) * chunk));
  });
  T total = zero;
  for (const auto& p : parts) total += p;
  return total;
}

}  // namespace gdn::detail

#endif  // GDN_SRC_PARALLEL_HPP
