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

#ifndef DOCO_GRAPH_HPP
#define DOCO_GRAPH_HPP

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace doco {

// Static undirected connected graph with cached all-pairs hop distances.
// Immutable after construction; safe to share read-only across runs.
class Graph {
 public:
  Graph() = default;  // empty placeholder; use build() for real graphs

  // Throws ConfigError on self-loops, invalid endpoints, or disconnected
  // input (every distance must be finite). Node ids are dense 0..N-1.
  static Graph build(int num_nodes, const std::vector<std::pair<int, int>>& edges);

  int num_nodes() const { return num_nodes_; }
  int dist(int u, int v) const { return dist_[static_cast<size_t>(u) * num_nodes_ + v]; }
  int diameter() const { return diameter_; }
  int eccentricity(int n) const { return ecc_[static_cast<size_t>(n)]; }
  const std::vector<std::vector<int>>& adjacency() const { return adj_; }

 private:
  int num_nodes_ = 0;
  std::vector<std::vector<int>> adj_;
  std::vector<int> dist_;  // row-major N x N
  std::vector<int> ecc_;
  int diameter_ = 0;
};

// Connected induced subgraph. Distances and diameter use the induced
// metric (paths may only pass through member nodes): a subgraph learner
// only forwards within its own node set, so the ambient metric would
// understate its delays.
class Subgraph {
 public:
  // Throws ConfigError if the induced subgraph is disconnected or a node id
  // is out of range / duplicated.
  static Subgraph induced(const Graph& parent, std::vector<int> node_subset);

  const std::vector<int>& nodes() const { return nodes_; }  // sorted, unique
  bool contains(int node) const { return member_[static_cast<size_t>(node)] != 0; }
  int diameter() const { return diameter_; }
  // Induced hop distance between two member nodes.
  int dist(int u, int v) const {
    return dist_[static_cast<size_t>(local_[static_cast<size_t>(u)]) * nodes_.size() +
                 local_[static_cast<size_t>(v)]];
  }

 private:
  Subgraph() = default;
  std::vector<int> nodes_;
  std::vector<char> member_;  // indexed by parent node id
  std::vector<int> local_;    // parent id -> local index
  std::vector<int> dist_;     // local x local
  int diameter_ = 0;
};

// Star-star topology: two hubs, each carrying `cluster_leaves` leaves,
// joined by a simple path of `connector_length` intermediate nodes.
//
// Node numbering: hub1 = 0, leaves of hub1 = 1..C, connector = C+1..C+K,
// hub2 = C+K+1, leaves of hub2 = C+K+2..2C+K+1 (C = cluster_leaves,
// K = connector_length). The layout records it for scenarios and configs.
struct TwoClusterLayout {
  int hub1 = 0;
  int hub2 = 0;
  std::vector<int> cluster1;  // hub1 + its leaves
  std::vector<int> cluster2;  // hub2 + its leaves
  std::vector<int> connector;
  std::string describe() const;
};

Graph two_cluster_graph(int cluster_leaves, int connector_length, TwoClusterLayout* layout = nullptr);

// Simple path of n nodes 0-1-...-(n-1).
Graph path_graph(int n);

enum class BallRadiiMode { kAll, kDyadic };

// For each node n, the induced ball subgraphs of radius alpha(n), where
// alpha(n) ranges over 0..E(n) (kAll) or {0} plus the powers of two up to
// E(n) (kDyadic). Identical node sets are emitted once; duplicates would
// only inflate the collection size, which enters regret bounds.
std::vector<Subgraph> ball_collection(const Graph& g, BallRadiiMode mode);

// Pre-deduplication count for kAll: N + sum_n E(n).
long long ball_collection_raw_count(const Graph& g, BallRadiiMode mode);

}  // namespace doco

#endif  // DOCO_GRAPH_HPP
