// SPDX-License-Identifier: Apache-2.0

#ifndef GDN_GRAPH_HPP
#define GDN_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace gdn {

using Edge = std::pair<std::uint32_t, std::uint32_t>;

/// Undirected graph in compressed adjacency form.
///
/// Every edge is stored in both endpoint lists; each list is sorted by
/// neighbor index. `weights`, when present, is parallel to `neighbors`.
struct Graph {
  std::vector<std::size_t> offsets{0};
  std::vector<std::uint32_t> neighbors;
  std::vector<double> weights;
  double sigma_g = 0.0;
  /// Largest degree the builder can produce (6 for scan-line graphs).
  std::size_t degree_bound = 0;

  std::size_t num_vertices() const { return offsets.size() - 1; }
  std::size_t num_edges() const { return neighbors.size() / 2; }
  bool weighted() const { return !weights.empty(); }
  std::size_t degree(std::size_t i) const { return offsets[i + 1] - offsets[i]; }
  std::size_t max_degree() const;

  std::span<const std::uint32_t> neighbors_of(std::size_t i) const {
    return {neighbors.data() + offsets[i], degree(i)};
  }
  std::span<const double> weights_of(std::size_t i) const {
    return {weights.data() + offsets[i], degree(i)};
  }
};

/// Builds an unweighted graph from an edge list. Edges are symmetrized;
/// self-loops and duplicates are dropped.
Graph graph_from_edges(std::size_t num_vertices, std::span<const Edge> edges,
                       std::size_t degree_bound);

/// Unique undirected edges (i < j), ascending by i then j.
std::vector<Edge> edge_list(const Graph& g);

/// Text dump, one "i j w" line per undirected edge in edge_list() order.
/// Unweighted graphs print w = 1.
void write_edge_list(std::ostream& out, const Graph& g);

}  // namespace gdn

#endif  // GDN_GRAPH_HPP
