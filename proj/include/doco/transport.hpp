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

#ifndef DOCO_TRANSPORT_HPP
#define DOCO_TRANSPORT_HPP

#include <vector>

#include "doco/bitstring.hpp"
#include "doco/graph.hpp"

namespace doco {

// One round's gradient with its bit-exact payload.
struct GradientRecord {
  int issue_time = 0;  // 1-based round index
  int origin = 0;
  std::vector<double> true_gradient;
  BitString payload;
  std::vector<double> decoded_gradient;
};

// Availability bookkeeping for one delivery domain (the full graph or a
// single induced subgraph) under the standard forwarding strategy: every
// node re-forwards a first-seen gradient to all neighbors immediately, and
// messages older than `horizon` rounds are dropped from the relay buffers.
//
// Delivery is computed analytically from hop distances: gradient s reaches
// node n at round s + dist(origin_s, n), provided dist(origin_s, n) <=
// horizon; once delivered it stays known (knowledge does not expire). So
//
//   s in S_n(t)  <=>  s < t  and  dist(origin_s, n) <= min(t - s, horizon).
//
// The brute-force flood simulation lives in doco/reference.hpp and is used
// by tests and `verify` to confirm the equivalence.
class DomainView {
 public:
  // Full-graph domain.
  DomainView(const Graph& g, int horizon);
  // Induced-subgraph domain; `f` must outlive the view.
  DomainView(const Graph& g, const Subgraph& f, int horizon);

  bool contains(int node) const;
  int dist(int u, int v) const;  // induced metric for subgraph domains
  int diameter() const;
  int horizon() const { return horizon_; }

  // Records round t (1-based) issued at `origin`. Rounds must be fed in
  // increasing order; rounds whose origin lies outside the domain are
  // ignored (a subgraph learner discards foreign gradients entirely).
  void note_round(int t, int origin);

  // True iff gradient s (a domain round) is available at `node` in round t.
  bool available(int s, int node, int t) const;

  // gamma(t) at `node`: domain rounds s < t that are missing, ascending.
  std::vector<int> missing_list(int node, int t) const;

  // |S_node(t)|.
  int avail_count(int node, int t) const;

  // Domain rounds in issue order.
  const std::vector<int>& rounds() const { return rounds_; }
  int origin_of(int round) const { return origin_by_round_[static_cast<size_t>(round)]; }
  bool is_domain_round(int round) const {
    return round < static_cast<int>(origin_by_round_.size()) &&
           origin_by_round_[static_cast<size_t>(round)] >= 0;
  }

 private:
  const Graph* graph_;
  const Subgraph* sub_ = nullptr;  // null for full-graph domains
  int horizon_;
  std::vector<int> rounds_;
  std::vector<int> origin_by_round_;     // -1 for foreign / unseen rounds
  std::vector<int> never_delivered_;     // per node: count of undeliverable domain rounds
  std::vector<int> rounds_before_;       // per round t: # domain rounds with s < t
  int last_round_ = 0;
};

// Network-level send accounting under standard forwarding. A node's sends
// in round r are its own fresh payload (if it is active) plus one relay for
// every (payload s, domain F) with dist_F(origin_s, node) = r - s < horizon;
// the same payload relayed for two domains in the same round is sent once.
// With one gradient issued per round this caps distinct payloads per node
// per round at `horizon`.
class SendAccountant {
 public:
  // `domains` lists every delivery domain sharing the physical network.
  SendAccountant(const Graph& g, const std::vector<const DomainView*>& domains, int horizon,
                 int bits_per_gradient);

  void note_round(int t, int origin);

  // Distinct payloads relayed by `node` in round t (excludes its own fresh
  // payload). Throws ProtocolError if the budget of `horizon` concurrent
  // payloads would be exceeded.
  int relays_at(int node, int t) const;

  // Total bits sent network-wide in round t and their running sum.
  long long bits_in_round(int t) const;
  long long bits_total() const { return bits_total_; }
  int bits_per_gradient() const { return k_; }

  // Max over nodes and rounds seen so far of distinct payloads relayed by
  // one node in one round.
  int max_relays() const { return max_relays_; }

 private:
  const Graph* graph_;
  std::vector<const DomainView*> domains_;
  int horizon_;
  int k_;
  std::vector<int> origin_by_round_;
  // relay_count_[u][delta]: #nodes that relay a payload issued at u exactly
  // delta rounds later (union over domains, deduplicated per node).
  std::vector<std::vector<int>> relay_count_;
  long long bits_total_ = 0;
  std::vector<long long> bits_by_round_;
  int max_relays_ = 0;
};

}  // namespace doco

#endif  // DOCO_TRANSPORT_HPP
