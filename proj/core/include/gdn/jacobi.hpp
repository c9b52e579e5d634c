// SPDX-License-Identifier: Apache-2.0

#ifndef GDN_JACOBI_HPP
#define GDN_JACOBI_HPP

#include <cstddef>
#include <vector>

namespace gdn {

/// Dense square matrix, row-major.
struct SquareMatrix {
  std::size_t n = 0;
  std::vector<double> data;

  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t size) : n(size), data(size * size, 0.0) {}

  double& operator()(std::size_t r, std::size_t c) { return data[r * n + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * n + c]; }
};

struct JacobiOptions {
  int max_sweeps = 50;
  /// Stop once the off-diagonal Frobenius norm is below this fraction of |S|_F.
  double relative_tolerance = 1e-12;
};

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, descending.
///
/// The input must be symmetric to within 1e-9 * max|entry|
/// (std::invalid_argument otherwise). Failing to converge within
/// `max_sweeps` sweeps raises PipelineError.
std::vector<double> symmetric_eigenvalues(const SquareMatrix& s, const JacobiOptions& options = {});

}  // namespace gdn

#endif  // GDN_JACOBI_HPP
