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
#include <deque>
#include <set>
#include <sstream>

#include "doco/errors.hpp"

namespace doco {

namespace {

constexpr int kUnreached = -1;

// BFS hop distances from `src` over `adj`, restricted to nodes where
// allowed(v) is true.
template <typename Allowed>
std::vector<int> bfs(const std::vector<std::vector<int>>& adj, int src, Allowed allowed) {
  std::vector<int> d(adj.size(), kUnreached);
  std::deque<int> queue{src};
  d[static_cast<size_t>(src)] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v : adj[static_cast<size_t>(u)]) {
      if (d[static_cast<size_t>(v)] == kUnreached && allowed(v)) {
        d[static_cast<size_t>(v)] = d[static_cast<size_t>(u)] + 1;
        queue.push_back(v);
      }
    }
  }
  return d;
}

}  // namespace

Graph Graph::build(int num_nodes, const std::vector<std::pair<int, int>>& edges) {
  if (num_nodes < 1) throw ConfigError("graph: need at least one node");
  Graph g;
  g.num_nodes_ = num_nodes;
  g.adj_.assign(static_cast<size_t>(num_nodes), {});
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= num_nodes || v >= num_nodes) {
      throw ConfigError("graph: edge endpoint out of range");
    }
    if (u == v) throw ConfigError("graph: self-loop on node " + std::to_string(u));
    if (u > v) std::swap(u, v);
    if (!seen.insert({u, v}).second) continue;
    g.adj_[static_cast<size_t>(u)].push_back(v);
    g.adj_[static_cast<size_t>(v)].push_back(u);
  }
  for (auto& nbrs : g.adj_) std::sort(nbrs.begin(), nbrs.end());

  g.dist_.assign(static_cast<size_t>(num_nodes) * num_nodes, kUnreached);
  g.ecc_.assign(static_cast<size_t>(num_nodes), 0);
  for (int s = 0; s < num_nodes; ++s) {
    const auto row = bfs(g.adj_, s, [](int) { return true; });
    for (int v = 0; v < num_nodes; ++v) {
      if (row[static_cast<size_t>(v)] == kUnreached) {
        throw ConfigError("graph: disconnected (node " + std::to_string(v) +
                          " unreachable from " + std::to_string(s) + ")");
      }
      g.dist_[static_cast<size_t>(s) * num_nodes + v] = row[static_cast<size_t>(v)];
      g.ecc_[static_cast<size_t>(s)] = std::max(g.ecc_[static_cast<size_t>(s)], row[static_cast<size_t>(v)]);
    }
    g.diameter_ = std::max(g.diameter_, g.ecc_[static_cast<size_t>(s)]);
  }
  return g;
}

Subgraph Subgraph::induced(const Graph& parent, std::vector<int> node_subset) {
  std::sort(node_subset.begin(), node_subset.end());
  if (std::adjacent_find(node_subset.begin(), node_subset.end()) != node_subset.end()) {
    throw ConfigError("subgraph: duplicate node id");
  }
  if (node_subset.empty()) throw ConfigError("subgraph: empty node set");
  for (int n : node_subset) {
    if (n < 0 || n >= parent.num_nodes()) throw ConfigError("subgraph: node id out of range");
  }
  Subgraph s;
  s.nodes_ = std::move(node_subset);
  s.member_.assign(static_cast<size_t>(parent.num_nodes()), 0);
  s.local_.assign(static_cast<size_t>(parent.num_nodes()), -1);
  for (size_t i = 0; i < s.nodes_.size(); ++i) {
    s.member_[static_cast<size_t>(s.nodes_[i])] = 1;
    s.local_[static_cast<size_t>(s.nodes_[i])] = static_cast<int>(i);
  }
  const size_t k = s.nodes_.size();
  s.dist_.assign(k * k, kUnreached);
  for (size_t i = 0; i < k; ++i) {
    const auto row = bfs(parent.adjacency(), s.nodes_[i],
                         [&](int v) { return s.member_[static_cast<size_t>(v)] != 0; });
    for (size_t j = 0; j < k; ++j) {
      const int d = row[static_cast<size_t>(s.nodes_[j])];
      if (d == kUnreached) throw ConfigError("subgraph: induced subgraph is disconnected");
      s.dist_[i * k + j] = d;
      s.diameter_ = std::max(s.diameter_, d);
    }
  }
  return s;
}

std::string TwoClusterLayout::describe() const {
  std::ostringstream os;
  os << "two_cluster hub1=" << hub1 << " hub2=" << hub2 << " cluster1=[" << cluster1.front()
     << ".." << cluster1.back() << "] connector=[";
  if (connector.empty()) {
    os << "]";
  } else {
    os << connector.front() << ".." << connector.back() << "]";
  }
  os << " cluster2=[" << cluster2.front() << ".." << cluster2.back() << "]";
  return os.str();
}

Graph two_cluster_graph(int cluster_leaves, int connector_length, TwoClusterLayout* layout) {
  if (cluster_leaves < 1) throw ConfigError("two_cluster_graph: cluster_leaves must be >= 1");
  if (connector_length < 1) throw ConfigError("two_cluster_graph: connector_length must be >= 1");
  const int c = cluster_leaves;
  const int k = connector_length;
  const int hub1 = 0;
  const int hub2 = c + k + 1;
  const int n = 2 * c + k + 2;
  std::vector<std::pair<int, int>> edges;
  for (int leaf = 1; leaf <= c; ++leaf) edges.emplace_back(hub1, leaf);
  int prev = hub1;
  for (int mid = c + 1; mid <= c + k; ++mid) {
    edges.emplace_back(prev, mid);
    prev = mid;
  }
  edges.emplace_back(prev, hub2);
  for (int leaf = hub2 + 1; leaf < n; ++leaf) edges.emplace_back(hub2, leaf);
  if (layout) {
    layout->hub1 = hub1;
    layout->hub2 = hub2;
    layout->cluster1.clear();
    layout->cluster2.clear();
    layout->connector.clear();
    for (int i = hub1; i <= c; ++i) layout->cluster1.push_back(i);
    for (int i = c + 1; i <= c + k; ++i) layout->connector.push_back(i);
    for (int i = hub2; i < n; ++i) layout->cluster2.push_back(i);
  }
  return Graph::build(n, edges);
}

Graph path_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph::build(n, edges);
}

namespace {

std::vector<int> radii_for(const Graph& g, int node, BallRadiiMode mode) {
  const int ecc = g.eccentricity(node);
  std::vector<int> radii{0};
  if (mode == BallRadiiMode::kAll) {
    for (int r = 1; r <= ecc; ++r) radii.push_back(r);
  } else {
    for (int r = 2; r <= ecc; r *= 2) radii.push_back(r);
  }
  return radii;
}

}  // namespace

std::vector<Subgraph> ball_collection(const Graph& g, BallRadiiMode mode) {
  std::set<std::vector<int>> seen;
  std::vector<Subgraph> out;
  for (int n = 0; n < g.num_nodes(); ++n) {
    for (int radius : radii_for(g, n, mode)) {
      std::vector<int> ball;
      for (int v = 0; v < g.num_nodes(); ++v) {
        if (g.dist(n, v) <= radius) ball.push_back(v);
      }
      if (seen.insert(ball).second) out.push_back(Subgraph::induced(g, std::move(ball)));
    }
  }
  return out;
}

long long ball_collection_raw_count(const Graph& g, BallRadiiMode mode) {
  long long count = 0;
  for (int n = 0; n < g.num_nodes(); ++n) {
    count += static_cast<long long>(radii_for(g, n, mode).size());
  }
  return count;
}

}  // namespace doco
