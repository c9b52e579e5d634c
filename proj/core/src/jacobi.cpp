// SPDX-License-Identifier: Apache-2.0

#include "gdn/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "gdn/point_cloud.hpp"

namespace gdn {
namespace {

double off_diagonal_norm(const SquareMatrix& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.n; ++r)
    for (std::size_t c = 0; c < a.n; ++c)
      if (r != c) s += a(r, c) * a(r, c);
  return std::sqrt(s);
}

// Zeroes a(p, q) with a two-sided plane rotation.
void rotate(SquareMatrix& a, std::size_t p, std::size_t q) {
  const double apq = a(p, q);
  if (apq == 0.0) return;
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  for (std::size_t k = 0; k < a.n; ++k) {
    const double akp = a(k, p), akq = a(k, q);
    a(k, p) = c * akp - s * akq;
    a(k, q) = s * akp + c * akq;
  }
  for (std::size_t k = 0; k < a.n; ++k) {
    const double apk = a(p, k), aqk = a(q, k);
    a(p, k) = c * apk - s * aqk;
    a(q, k) = s * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
}

}  // namespace

std::vector<double> symmetric_eigenvalues(const SquareMatrix& s, const JacobiOptions& options) {
  if (s.data.size() != s.n * s.n) throw std::invalid_argument("matrix storage does not match size");
  double max_abs = 0.0;
  for (double v : s.data) {
    if (!std::isfinite(v)) throw std::invalid_argument("matrix has non-finite entries");
    max_abs = std::max(max_abs, std::abs(v));
  }
  for (std::size_t r = 0; r < s.n; ++r)
    for (std::size_t c = r + 1; c < s.n; ++c)
      if (std::abs(s(r, c) - s(c, r)) > 1e-9 * max_abs)
        throw std::invalid_argument("matrix is not symmetric");

  SquareMatrix a = s;
  // Symmetrize exactly so rotations see a consistent matrix.
  for (std::size_t r = 0; r < a.n; ++r)
    for (std::size_t c = r + 1; c < a.n; ++c) a(r, c) = a(c, r) = 0.5 * (s(r, c) + s(c, r));

  double frobenius = 0.0;
  for (double v : a.data) frobenius += v * v;
  frobenius = std::sqrt(frobenius);
  const double target = options.relative_tolerance * frobenius;

  int sweep = 0;
  while (off_diagonal_norm(a) > target) {
    if (sweep++ == options.max_sweeps)
      throw PipelineError("Jacobi eigensolver did not converge in " +
                          std::to_string(options.max_sweeps) + " sweeps");
    for (std::size_t p = 0; p + 1 < a.n; ++p)
      for (std::size_t q = p + 1; q < a.n; ++q) rotate(a, p, q);
  }

  std::vector<double> eigenvalues(a.n);
  for (std::size_t i = 0; i < a.n; ++i) eigenvalues[i] = a(i, i);
  std::sort(eigenvalues.begin(), eigenvalues.end(), std::greater<>());
  return eigenvalues;
}

}  // namespace gdn
