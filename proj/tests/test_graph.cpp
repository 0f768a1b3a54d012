// Copyright 2026 the doco-sim authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "doco/graph.hpp"

#include <algorithm>
#include <climits>
#include <set>

#include <doctest.h>

#include "doco/errors.hpp"
#include "doco/rng.hpp"

using namespace doco;

namespace {

// Independent BFS oracle used before trusting the cached distance matrix.
int bfs_dist(const std::vector<std::pair<int, int>>& edges, int n, int src, int dst) {
  std::vector<std::vector<int>> adj(static_cast<size_t>(n));
  for (auto [u, v] : edges) {
    adj[static_cast<size_t>(u)].push_back(v);
    adj[static_cast<size_t>(v)].push_back(u);
  }
  std::vector<int> d(static_cast<size_t>(n), INT_MAX);
  std::vector<int> queue{src};
  d[static_cast<size_t>(src)] = 0;
  for (size_t i = 0; i < queue.size(); ++i) {
    for (int nb : adj[static_cast<size_t>(queue[i])]) {
      if (d[static_cast<size_t>(nb)] == INT_MAX) {
        d[static_cast<size_t>(nb)] = d[static_cast<size_t>(queue[i])] + 1;
        queue.push_back(nb);
      }
    }
  }
  return d[static_cast<size_t>(dst)];
}

Graph random_connected_graph(Rng& rng, int n, double extra_edge_prob) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v) edges.emplace_back(v, static_cast<int>(rng.index(static_cast<uint64_t>(v))));
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.bernoulli(extra_edge_prob)) edges.emplace_back(u, v);
    }
  }
  return Graph::build(n, edges);
}

}  // namespace

TEST_CASE("path of 5 nodes: diameter 4, middle eccentricity 2") {
  const Graph g = path_graph(5);
  CHECK(g.diameter() == 4);
  CHECK(g.eccentricity(2) == 2);
  CHECK(g.dist(0, 4) == 4);
  CHECK(g.dist(1, 3) == 2);
}

TEST_CASE("single node graph") {
  const Graph g = Graph::build(1, {});
  CHECK(g.diameter() == 0);
  CHECK(g.eccentricity(0) == 0);
}

TEST_CASE("build rejects self-loops and disconnected input") {
  CHECK_THROWS_AS(Graph::build(2, {{0, 0}}), ConfigError);
  CHECK_THROWS_AS(Graph::build(3, {{0, 1}}), ConfigError);
  CHECK_THROWS_AS(Graph::build(2, {{0, 5}}), ConfigError);
}

TEST_CASE("two-star graph diameter checked against a BFS oracle") {
  // Two 9-node stars joined by an 8-node line.
  TwoClusterLayout layout;
  const Graph g = two_cluster_graph(8, 8, &layout);
  CHECK(g.num_nodes() == 26);
  std::vector<std::pair<int, int>> edges;
  for (int leaf = 1; leaf <= 8; ++leaf) edges.emplace_back(0, leaf);
  int prev = 0;
  for (int mid = 9; mid <= 16; ++mid) {
    edges.emplace_back(prev, mid);
    prev = mid;
  }
  edges.emplace_back(16, 17);
  for (int leaf = 18; leaf < 26; ++leaf) edges.emplace_back(17, leaf);
  int oracle_diameter = 0;
  for (int u = 0; u < 26; ++u) {
    for (int v = 0; v < 26; ++v) oracle_diameter = std::max(oracle_diameter, bfs_dist(edges, 26, u, v));
  }
  CHECK(g.diameter() == oracle_diameter);
  CHECK(g.diameter() == 11);  // leaf-hub + 9-hop hub-to-hub + hub-leaf
}

TEST_CASE("two_cluster_graph examples") {
  CHECK(two_cluster_graph(8, 6).num_nodes() == 24);

  const Graph tiny = two_cluster_graph(1, 1);
  CHECK(tiny.num_nodes() == 5);
  CHECK(tiny.diameter() == 4);

  // Within-cluster leaf-to-leaf distance stays 2 whatever the connector.
  TwoClusterLayout layout;
  const Graph wide = two_cluster_graph(8, 100, &layout);
  CHECK(wide.dist(layout.cluster1[1], layout.cluster1[2]) == 2);
  CHECK(wide.dist(layout.cluster2[1], layout.cluster2[2]) == 2);

  CHECK_THROWS_AS(two_cluster_graph(0, 1), ConfigError);
  CHECK_THROWS_AS(two_cluster_graph(1, 0), ConfigError);
}

TEST_CASE("distance symmetry and triangle inequality on random graphs") {
  Rng rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 2 + static_cast<int>(rng.index(14));
    const Graph g = random_connected_graph(rng, n, 0.15);
    int max_ecc = 0;
    for (int v = 0; v < n; ++v) {
      CHECK(g.dist(v, v) == 0);
      max_ecc = std::max(max_ecc, g.eccentricity(v));
    }
    CHECK(g.diameter() == max_ecc);
    for (int trial = 0; trial < 200; ++trial) {
      const int a = static_cast<int>(rng.index(static_cast<uint64_t>(n)));
      const int b = static_cast<int>(rng.index(static_cast<uint64_t>(n)));
      const int c = static_cast<int>(rng.index(static_cast<uint64_t>(n)));
      CHECK(g.dist(a, b) == g.dist(b, a));
      CHECK(g.dist(a, b) <= g.dist(a, c) + g.dist(c, b));
    }
  }
}

TEST_CASE("induced subgraph uses its own metric") {
  // Square 0-1-2-3-0 with node 1 removed: 0 and 2 connect the long way.
  const Graph g = Graph::build(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  const Subgraph s = Subgraph::induced(g, {0, 2, 3});
  CHECK(g.dist(0, 2) == 2);
  CHECK(s.dist(0, 2) == 2);  // 0-3-2 inside the subset
  CHECK(s.diameter() == 2);
  CHECK_THROWS_AS(Subgraph::induced(g, {0, 2}), ConfigError);  // disconnected
  CHECK_THROWS_AS(Subgraph::induced(g, {0, 0, 1}), ConfigError);
  CHECK_THROWS_AS(Subgraph::induced(g, {0, 9}), ConfigError);
}

TEST_CASE("ball collection on a 3-path: 8 balls before dedup") {
  const Graph g = path_graph(3);
  CHECK(g.eccentricity(0) == 2);
  CHECK(g.eccentricity(1) == 1);
  CHECK(g.eccentricity(2) == 2);
  CHECK(ball_collection_raw_count(g, BallRadiiMode::kAll) == 8);  // 3 + (2+1+2)
  const auto balls = ball_collection(g, BallRadiiMode::kAll);
  std::set<std::vector<int>> sets;
  for (const auto& b : balls) sets.insert(b.nodes());
  CHECK(balls.size() == 6);
  CHECK(sets.count({0}) == 1);
  CHECK(sets.count({1}) == 1);
  CHECK(sets.count({2}) == 1);
  CHECK(sets.count({0, 1}) == 1);
  CHECK(sets.count({1, 2}) == 1);
  CHECK(sets.count({0, 1, 2}) == 1);
}

TEST_CASE("ball collection: single node, full graph presence, cardinality cap") {
  const Graph single = Graph::build(1, {});
  CHECK(ball_collection(single, BallRadiiMode::kAll).size() == 1);

  Rng rng(23);
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 2 + static_cast<int>(rng.index(10));
    const Graph g = random_connected_graph(rng, n, 0.2);
    for (const auto mode : {BallRadiiMode::kAll, BallRadiiMode::kDyadic}) {
      const auto balls = ball_collection(g, mode);
      bool found_full = false;
      long long ecc_sum = 0;
      for (int v = 0; v < n; ++v) ecc_sum += g.eccentricity(v);
      for (const auto& b : balls) {
        if (static_cast<int>(b.nodes().size()) == n) found_full = true;
      }
      if (mode == BallRadiiMode::kAll) {
        // A radius-E(n) ball around any node covers the whole graph.
        CHECK(found_full);
        CHECK(ball_collection_raw_count(g, mode) == n + ecc_sum);
        CHECK(static_cast<long long>(balls.size()) <= n + ecc_sum);
        CHECK(static_cast<long long>(balls.size()) <= static_cast<long long>(n) * (1 + n));
      }
    }
  }
}

TEST_CASE("dyadic radii are 0 and the powers of two up to the eccentricity") {
  const Graph g = path_graph(10);
  // Eccentricities 9,8,7,6,5,5,6,7,8,9: radius sets {0,2,4,8} x4 and
  // {0,2,4} x6, so 4*4 + 6*3 = 34 raw balls.
  CHECK(ball_collection_raw_count(g, BallRadiiMode::kDyadic) == 34);
  const auto balls = ball_collection(g, BallRadiiMode::kDyadic);
  std::set<std::vector<int>> sets;
  for (const auto& b : balls) sets.insert(b.nodes());
  // Node 0 with E = 9 contributes radii {0, 2, 4, 8}.
  CHECK(sets.count({0, 1, 2}) == 1);
  CHECK(sets.count({0, 1, 2, 3, 4}) == 1);
  CHECK(sets.count({0, 1, 2, 3, 4, 5, 6, 7, 8}) == 1);
}
