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

#include "doco/transport.hpp"

#include <algorithm>

#include <doctest.h>

#include "doco/errors.hpp"
#include "doco/reference.hpp"
#include "doco/rng.hpp"

using namespace doco;

namespace {

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

TEST_CASE("two hops on a path: issued at node 0 in round 1, usable at node 2 in round 3") {
  const Graph g = path_graph(3);
  DomainView view(g, g.diameter());
  view.note_round(1, 0);
  view.note_round(2, 0);
  CHECK(!view.available(1, 2, 2));
  CHECK(view.available(1, 2, 3));
  CHECK(view.available(1, 1, 2));
}

TEST_CASE("a gradient is never available in the round it is issued") {
  const Graph g = path_graph(3);
  DomainView view(g, g.diameter());
  view.note_round(1, 1);
  CHECK(!view.available(1, 1, 1));  // not even at the issuing node
  CHECK(view.available(1, 1, 2));   // own gradients enter S one round later
}

TEST_CASE("cyclic every-other-node activation keeps information floor(D/2) rounds stale") {
  // Path with D = 4: activations cycle over path nodes 0 and 2.
  const Graph g = path_graph(5);
  const int D = g.diameter();
  DomainView view(g, D);
  const int cycle[] = {0, 2};
  const int T = 40;
  for (int t = 1; t <= T; ++t) {
    const int node = cycle[(t - 1) % 2];
    if (t > 4) {  // after the first full cycle
      int freshest = -1;
      for (int s = 1; s < t; ++s) {
        if (view.available(s, node, t)) freshest = std::max(freshest, s);
      }
      REQUIRE(freshest > 0);
      CHECK(t - freshest == D / 2);
    }
    view.note_round(t, node);
  }
}

TEST_CASE("analytic availability equals the brute-force flood on random graphs") {
  Rng rng(31);
  for (int rep = 0; rep < 15; ++rep) {
    const int n = 2 + static_cast<int>(rng.index(11));  // up to 12 nodes
    const Graph g = random_connected_graph(rng, n, 0.2);
    // Exercise horizons below the diameter too (partition-style discards).
    const int horizon = 1 + static_cast<int>(rng.index(static_cast<uint64_t>(g.diameter() + 2)));
    DomainView view(g, horizon);
    reference::FloodSimulator flood(g, horizon);
    const int T = 30;
    for (int t = 1; t <= T; ++t) {
      const int node = static_cast<int>(rng.index(static_cast<uint64_t>(n)));
      for (int s = 1; s < t; ++s) {
        for (int m = 0; m < n; ++m) {
          INFO("n=", n, " horizon=", horizon, " t=", t, " s=", s, " node=", m);
          CHECK(view.available(s, m, t) == flood.available(s, m, t));
        }
      }
      flood.step(t, node);
      view.note_round(t, node);
    }
  }
}

TEST_CASE("knowledge nesting: if s in S_n(t) then S_{I_s}(s) is a subset of S_n(t)") {
  Rng rng(37);
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 3 + static_cast<int>(rng.index(9));
    const Graph g = random_connected_graph(rng, n, 0.25);
    DomainView view(g, g.diameter());
    std::vector<int> origin{-1};  // 1-based
    const int T = 25;
    for (int t = 1; t <= T; ++t) {
      const int node = static_cast<int>(rng.index(static_cast<uint64_t>(n)));
      for (int s = 1; s < t; ++s) {
        if (!view.available(s, node, t)) continue;
        for (int r = 1; r < s; ++r) {
          if (view.available(r, origin[static_cast<size_t>(s)], s)) {
            CHECK(view.available(r, node, t));
          }
        }
      }
      view.note_round(t, node);
      origin.push_back(node);
    }
  }
}

TEST_CASE("missing set size stays below the diameter") {
  Rng rng(41);
  const Graph g = random_connected_graph(rng, 9, 0.2);
  DomainView view(g, g.diameter());
  for (int t = 1; t <= 60; ++t) {
    const int node = static_cast<int>(rng.index(9));
    CHECK(static_cast<int>(view.missing_list(node, t).size()) <= g.diameter());
    view.note_round(t, node);
  }
}

TEST_CASE("avail_count matches the explicit availability scan") {
  Rng rng(43);
  const Graph g = random_connected_graph(rng, 8, 0.25);
  const int horizon = 2;  // below the diameter, so some payloads never arrive
  DomainView view(g, horizon);
  for (int t = 1; t <= 40; ++t) {
    const int node = static_cast<int>(rng.index(8));
    int expect = 0;
    for (int s = 1; s < t; ++s) expect += view.available(s, node, t) ? 1 : 0;
    CHECK(view.avail_count(node, t) == expect);
    view.note_round(t, node);
  }
}

TEST_CASE("subgraph domains ignore foreign gradients and use the induced metric") {
  const Graph g = Graph::build(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  const Subgraph s = Subgraph::induced(g, {0, 2, 3});
  DomainView view(g, s, /*horizon=*/2);
  view.note_round(1, 0);
  view.note_round(2, 1);  // node outside the subgraph: dropped entirely
  CHECK(view.is_domain_round(1));
  CHECK(!view.is_domain_round(2));
  CHECK(!view.available(1, 2, 2));  // induced route 0-3-2 takes two hops
  CHECK(view.available(1, 2, 3));
  CHECK(view.missing_list(2, 2) == std::vector<int>{1});
}

TEST_CASE("adjacent walk along a path: penultimate node relays D-1 payloads at once") {
  const int D = 6;
  const Graph g = path_graph(D + 1);
  REQUIRE(g.diameter() == D);
  DomainView view(g, D);
  std::vector<const DomainView*> domains{&view};
  SendAccountant acct(g, domains, D, /*bits_per_gradient=*/8);
  std::vector<int> activations;
  for (int t = 1; t <= D + 1; ++t) {
    const int node = t - 1;  // walk 0, 1, ..., D
    acct.note_round(t, node);
    view.note_round(t, node);
    activations.push_back(node);
  }
  // At round D the penultimate node (D-1) forwards every previous message.
  CHECK(acct.relays_at(D - 1, D) == D - 1);
  CHECK(reference::max_in_flight(g, domains, activations, D) == D - 1);

  // Flood agrees on the relay count.
  reference::FloodSimulator flood(g, D);
  for (int t = 1; t <= D + 1; ++t) flood.step(t, t - 1);
  CHECK(flood.relays(D - 1, D) == D - 1);
  CHECK(flood.max_relays() == D - 1);
}

TEST_CASE("star graph with one active leaf: at most one relay per node per round") {
  const Graph g = Graph::build(4, {{0, 1}, {0, 2}, {0, 3}});  // hub 0
  REQUIRE(g.diameter() == 2);
  DomainView view(g, 2);
  std::vector<const DomainView*> domains{&view};
  std::vector<int> activations(12, 1);  // leaf 1 every round
  SendAccountant acct(g, domains, 2, 4);
  for (int t = 1; t <= 12; ++t) {
    acct.note_round(t, 1);
    view.note_round(t, 1);
  }
  const int worst = reference::max_in_flight(g, domains, activations, 2);
  CHECK(worst == 1);  // the hub relays the single fresh payload
  CHECK(worst <= g.diameter());
}

TEST_CASE("max_in_flight on an empty trace is zero") {
  const Graph g = path_graph(3);
  DomainView view(g, 2);
  std::vector<const DomainView*> domains{&view};
  CHECK(reference::max_in_flight(g, domains, {}, 2) == 0);
}

TEST_CASE("per-round network bits: k bits per send, issue plus relays") {
  const Graph g = path_graph(3);
  DomainView view(g, 2);
  SendAccountant acct(g, {&view}, 2, 10);
  acct.note_round(1, 0);
  view.note_round(1, 0);
  // Round 1: node 0 issues (one send). Round 2: node 1 relays payload 1 and
  // issues its own.
  acct.note_round(2, 1);
  view.note_round(2, 1);
  CHECK(acct.bits_in_round(1) == 10);
  CHECK(acct.bits_in_round(2) == 2 * 10);
  CHECK(acct.bits_total() == 30);
}

TEST_CASE("rounds must be noted in increasing order") {
  const Graph g = path_graph(3);
  DomainView view(g, 2);
  view.note_round(1, 0);
  CHECK_THROWS_AS(view.note_round(1, 1), ProtocolError);
}
