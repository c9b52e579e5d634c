// SPDX-License-Identifier: Apache-2.0

#include "gdn/graph.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace gdn {

std::size_t Graph::max_degree() const {
  std::size_t m = 0;
  for (std::size_t i = 0; i < num_vertices(); ++i) m = std::max(m, degree(i));
  return m;
}

Graph graph_from_edges(std::size_t num_vertices, std::span<const Edge> edges,
                       std::size_t degree_bound) {
  std::vector<std::vector<std::uint32_t>> adj(num_vertices);
  for (auto [a, b] : edges) {
    if (a >= num_vertices || b >= num_vertices) throw std::out_of_range("edge endpoint out of range");
    if (a == b) continue;
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  Graph g;
  g.degree_bound = degree_bound;
  g.offsets.assign(num_vertices + 1, 0);
  for (std::size_t i = 0; i < num_vertices; ++i) {
    auto& list = adj[i];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    g.offsets[i + 1] = g.offsets[i] + list.size();
  }
  g.neighbors.reserve(g.offsets.back());
  for (const auto& list : adj) g.neighbors.insert(g.neighbors.end(), list.begin(), list.end());
  return g;
}

std::vector<Edge> edge_list(const Graph& g) {
  std::vector<Edge> edges;
  edges.reserve(g.num_edges());
  for (std::size_t i = 0; i < g.num_vertices(); ++i)
    for (auto j : g.neighbors_of(i))
      if (j > i) edges.emplace_back(static_cast<std::uint32_t>(i), j);
  return edges;
}

void write_edge_list(std::ostream& out, const Graph& g) {
  const auto old_precision = out.precision(17);
  for (std::size_t i = 0; i < g.num_vertices(); ++i) {
    const auto nbrs = g.neighbors_of(i);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      if (nbrs[k] <= i) continue;
      out << i << ' ' << nbrs[k] << ' ' << (g.weighted() ? g.weights_of(i)[k] : 1.0) << '\n';
    }
  }
  out.precision(old_precision);
}

}  // namespace gdn
