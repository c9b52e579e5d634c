// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "gdn/scanline_graph.hpp"
#include "gdn/synthetic.hpp"
#include "oracles.hpp"

using namespace gdn;
using oracle::cloud_from_coords;

TEST_CASE("scan-line codes by place value") {
  const PointCloud pc = cloud_from_coords({{1, 2, 3}, {0, 0, 0}}, 4);
  const auto c1 = scanline_codes(pc, ScanLine::ZYX);
  const auto c2 = scanline_codes(pc, ScanLine::XZY);
  const auto c3 = scanline_codes(pc, ScanLine::YXZ);
  CHECK(c1.codes[0] == 801);
  CHECK(c2.codes[0] == 306);
  CHECK(c3.codes[0] == 531);
  CHECK(c1.key_bits == 12);
  for (const auto* c : {&c1, &c2, &c3}) CHECK(c->codes[1] == 0);

  PointCloud wide = cloud_from_coords({{(1u << 21) - 1, (1u << 21) - 1, (1u << 21) - 1}}, 21);
  CHECK(scanline_codes(wide, ScanLine::ZYX).codes[0] == (std::uint64_t{1} << 63) - 1);
}

TEST_CASE("scan-line codes reject unusable clouds") {
  PointCloud pc = cloud_from_coords({{1, 2, 3}}, 22);
  CHECK_THROWS_AS(scanline_codes(pc, ScanLine::ZYX), std::invalid_argument);
  PointCloud floats;
  floats.positions = {{0.5, 0, 0}};
  floats.colors = {{0, 0, 0}};
  CHECK_THROWS_AS(scanline_codes(floats, ScanLine::ZYX), std::invalid_argument);
  CHECK_THROWS_AS(build_slg(floats), std::invalid_argument);
}

TEST_CASE("x-neighbors in a row take adjacent ranks under the first code") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const PointCloud pc = oracle::random_distinct_cloud(300, 3, rng);
    const auto perm = sort_permutation(scanline_codes(pc, ScanLine::ZYX));
    std::vector<std::size_t> rank(pc.size());
    for (std::size_t k = 0; k < perm.size(); ++k) rank[perm[k]] = k;
    for (std::size_t i = 0; i < pc.size(); ++i) {
      for (std::size_t j = 0; j < pc.size(); ++j) {
        const auto &a = pc.coords[i], &b = pc.coords[j];
        if (a[1] != b[1] || a[2] != b[2] || a[0] >= b[0]) continue;
        const bool between = std::any_of(pc.coords.begin(), pc.coords.end(), [&](const Coord& c) {
          return c[1] == a[1] && c[2] == a[2] && c[0] > a[0] && c[0] < b[0];
        });
        if (!between) CHECK(rank[j] == rank[i] + 1);
      }
    }
  }
}

TEST_CASE("radix sort permutation") {
  const std::vector<std::uint64_t> small{5, 2, 9};
  CHECK(radix_sort_permutation(small) == std::vector<std::uint32_t>{1, 0, 2});

  const std::vector<std::uint64_t> equal(17, 42);
  std::vector<std::uint32_t> identity(17);
  std::iota(identity.begin(), identity.end(), 0u);
  CHECK(radix_sort_permutation(equal) == identity);
  CHECK(radix_sort_permutation(std::vector<std::uint64_t>{}).empty());

  SUBCASE("matches a stable comparison sort on 1e5 random keys") {
    std::mt19937_64 rng(3);
    std::vector<std::uint64_t> keys(100000);
    for (auto& k : keys) k = rng();
    // Force plenty of duplicates so stability matters.
    for (std::size_t i = 0; i < keys.size(); i += 7) keys[i] = keys[i / 13];
    std::vector<std::uint32_t> expected(keys.size());
    std::iota(expected.begin(), expected.end(), 0u);
    std::stable_sort(expected.begin(), expected.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return keys[a] < keys[b]; });
    CHECK(radix_sort_permutation(keys) == expected);
  }
  SUBCASE("narrow keys with a declared width") {
    std::mt19937_64 rng(4);
    std::vector<std::uint64_t> keys(5000);
    for (auto& k : keys) k = rng() & 0x3ff;
    std::vector<std::uint32_t> expected(keys.size());
    std::iota(expected.begin(), expected.end(), 0u);
    std::stable_sort(expected.begin(), expected.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return keys[a] < keys[b]; });
    CHECK(radix_sort_permutation(keys, 10) == expected);
    CHECK(radix_sort_permutation(keys, 64) == expected);
  }
}

TEST_CASE("build_slg small cases") {
  SUBCASE("empty and single point") {
    CHECK(build_slg(cloud_from_coords({}, 1)).num_edges() == 0);
    const Graph one = build_slg(cloud_from_coords({{1, 1, 1}}, 1));
    CHECK(one.num_vertices() == 1);
    CHECK(one.num_edges() == 0);
  }
  SUBCASE("two points") {
    const Graph g = build_slg(cloud_from_coords({{0, 0, 0}, {3, 1, 2}}, 2));
    CHECK(oracle::edge_set(g) == std::set<std::pair<std::uint32_t, std::uint32_t>>{{0, 1}});
    CHECK(g.degree(0) == 1);
    CHECK(g.degree(1) == 1);
  }
  SUBCASE("three collinear points") {
    const Graph g = build_slg(cloud_from_coords({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}}, 2));
    CHECK(oracle::edge_set(g) == std::set<std::pair<std::uint32_t, std::uint32_t>>{{0, 1}, {1, 2}});
    CHECK(g.max_degree() == 2);
  }
  SUBCASE("10x10x1 grid is connected with degree at most 6") {
    std::vector<Coord> coords;
    for (std::uint32_t y = 0; y < 10; ++y)
      for (std::uint32_t x = 0; x < 10; ++x) coords.push_back({x, y, 0});
    const Graph g = build_slg(cloud_from_coords(coords, 4));
    CHECK(g.max_degree() <= 6);
    CHECK(oracle::component_count(g) == 1);
    CHECK(g.degree_bound == kScanLineDegreeBound);
  }
}

TEST_CASE("scan-line graph structure on random clouds") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t n = 2 + rng() % 800;
    const int bits = 3 + static_cast<int>(rng() % 6);
    const PointCloud pc = oracle::random_distinct_cloud(std::min<std::size_t>(n, (1u << (3 * bits)) / 2), bits, rng);
    const Graph g = build_slg(pc);
    CHECK_MESSAGE(oracle::check_slg_structure(pc, g, rng).empty(), "trial " << trial);
  }
}

TEST_CASE("compute_sigma_g") {
  const PointCloud pc = cloud_from_coords({{0, 0, 0}, {1, 0, 0}, {4, 0, 0}}, 3);
  const std::vector<Edge> one{{0, 1}};
  CHECK(compute_sigma_g(pc, graph_from_edges(3, one, 6)) == 1.0);
  const std::vector<Edge> path{{0, 1}, {1, 2}};
  CHECK(compute_sigma_g(pc, graph_from_edges(3, path, 6)) == 2.0);
  CHECK_THROWS_AS(compute_sigma_g(pc, graph_from_edges(3, {}, 6)), std::invalid_argument);

  std::mt19937_64 rng(8);
  const PointCloud random = oracle::random_distinct_cloud(2000, 7, rng);
  const Graph g = build_slg(random);
  double total = 0.0;
  const auto edges = edge_list(g);
  for (const auto& [i, j] : edges) {
    double d2 = 0.0;
    for (int a = 0; a < 3; ++a) {
      const double d = double(random.coords[i][a]) - double(random.coords[j][a]);
      d2 += d * d;
    }
    total += std::sqrt(d2);
  }
  CHECK(compute_sigma_g(random, g) == doctest::Approx(total / double(edges.size())).epsilon(1e-12));
}

TEST_CASE("Gaussian edge weights") {
  // Edge lengths 3 and 4 (sqrt of 9 and 16) with sigma_g^2 = 9.
  const PointCloud pc = cloud_from_coords({{0, 0, 0}, {3, 0, 0}, {3, 4, 0}, {3, 4, 0}}, 3);
  const std::vector<Edge> edges{{0, 1}, {1, 2}, {2, 3}};
  const Graph g = apply_gaussian_weights(pc, graph_from_edges(4, edges, 6), 3.0);
  REQUIRE(g.weighted());
  CHECK(g.weights_of(0)[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(g.weights_of(1)[1] == doctest::Approx(std::exp(-16.0 / 9.0)));
  CHECK(g.weights_of(2)[1] == 1.0);
  CHECK(g.sigma_g == 3.0);

  const PointCloud far = cloud_from_coords({{0, 0, 0}, {10, 0, 0}}, 4);
  const std::vector<Edge> wrap{{0, 1}};
  const Graph gw = apply_gaussian_weights(far, graph_from_edges(2, wrap, 6), 1.0);
  CHECK(gw.weights[0] == doctest::Approx(std::exp(-100.0)).epsilon(1e-12));
  CHECK(gw.weights[0] < 1e-40);

  CHECK_THROWS_AS(apply_gaussian_weights(pc, graph_from_edges(4, edges, 6), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(apply_gaussian_weights(pc, graph_from_edges(4, edges, 6), -2.0), std::invalid_argument);
}

TEST_CASE("weighted scan-line graph weight bounds") {
  std::mt19937_64 rng(9);
  PointCloud pc = oracle::random_distinct_cloud(3000, 8, rng);
  // A few duplicated positions exercise the w = 1 case.
  for (std::size_t i = 0; i < 30; ++i) pc.coords[i + 100] = pc.coords[i];
  const Graph g = build_weighted_slg(pc);
  CHECK(g.sigma_g == doctest::Approx(compute_sigma_g(pc, build_slg(pc))));
  for (std::size_t i = 0; i < g.num_vertices(); ++i) {
    const auto nb = g.neighbors_of(i);
    const auto w = g.weights_of(i);
    for (std::size_t k = 0; k < nb.size(); ++k) {
      CHECK(w[k] > 0.0);
      CHECK(w[k] <= 1.0);
      CHECK((w[k] == 1.0) == (pc.coords[i] == pc.coords[nb[k]]));
      const auto back = g.neighbors_of(nb[k]);
      const auto pos = std::lower_bound(back.begin(), back.end(), static_cast<std::uint32_t>(i)) - back.begin();
      CHECK(g.weights_of(nb[k])[static_cast<std::size_t>(pos)] == w[k]);
    }
  }
}

TEST_CASE("brute-force kNN") {
  const PointCloud line = cloud_from_coords({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}}, 2);
  CHECK(oracle::edge_set(build_knn_brute(line, 1)) ==
        std::set<std::pair<std::uint32_t, std::uint32_t>>{{0, 1}, {1, 2}});
  CHECK_THROWS_AS(build_knn_brute(line, 3), std::invalid_argument);
  CHECK_THROWS_AS(build_knn_brute(line, 0), std::invalid_argument);

  std::mt19937_64 rng(12);
  const PointCloud small = oracle::random_distinct_cloud(9, 4, rng);
  CHECK(build_knn_brute(small, 8).num_edges() == 36);

  for (int bits : {6, 14}) {
    const PointCloud pc = oracle::random_distinct_cloud(500, bits, rng);
    std::set<std::pair<std::uint32_t, std::uint32_t>> expected;
    for (std::uint32_t i = 0; i < pc.size(); ++i) {
      std::vector<std::pair<double, std::uint32_t>> all;
      for (std::uint32_t j = 0; j < pc.size(); ++j) {
        if (j == i) continue;
        double d2 = 0.0;
        for (int a = 0; a < 3; ++a) {
          const double d = double(pc.coords[i][a]) - double(pc.coords[j][a]);
          d2 += d * d;
        }
        all.emplace_back(d2, j);
      }
      std::sort(all.begin(), all.end());
      for (int k = 0; k < 6; ++k) expected.emplace(std::min(i, all[k].second), std::max(i, all[k].second));
    }
    CHECK(oracle::edge_set(build_knn_brute(pc, 6)) == expected);
  }
}

TEST_CASE("graph_from_edges normalizes its input") {
  const std::vector<Edge> edges{{2, 0}, {0, 2}, {1, 1}, {0, 1}};
  const Graph g = graph_from_edges(3, edges, 6);
  CHECK(g.num_edges() == 2);
  CHECK(g.degree(1) == 1);
  CHECK(std::vector<std::uint32_t>(g.neighbors_of(0).begin(), g.neighbors_of(0).end()) ==
        std::vector<std::uint32_t>{1, 2});
  std::ostringstream out;
  write_edge_list(out, g);
  CHECK(out.str() == "0 1 1\n0 2 1\n");
}
