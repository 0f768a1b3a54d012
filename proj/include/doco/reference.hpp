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

#ifndef DOCO_REFERENCE_HPP
#define DOCO_REFERENCE_HPP

#include <vector>

#include "doco/graph.hpp"
#include "doco/transport.hpp"

// Independent reference implementations. Nothing here sits on any
// simulation hot path: the flood simulator and quadratures exist so that
// `verify` and the test suites can check the analytic transport and the
// closed-form predictor against a second route.
namespace doco::reference {

// Literal message-flood simulation of the standard forwarding strategy with
// a TTL of `horizon` rounds: every node re-forwards a first-seen payload to
// all neighbors in the round it receives it, relays of payloads aged
// >= horizon are dropped, knowledge is permanent once delivered.
class FloodSimulator {
 public:
  FloodSimulator(const Graph& g, int horizon);

  // Feed round t (1-based, increasing) issued at `origin`.
  void step(int t, int origin);

  // s in S_node(t): delivered strictly before round t.
  bool available(int s, int node, int t) const;
  // Distinct payloads node relayed in round r (its own fresh issue excluded).
  int relays(int node, int r) const;
  int max_relays() const { return max_relays_; }

 private:
  const Graph& graph_;
  int horizon_;
  int last_round_ = 0;
  // arrival_[s][n]: round in which payload s reached node n (INT_MAX never).
  std::vector<std::vector<int>> arrival_;
  std::vector<int> issue_;
  std::vector<std::vector<int>> relays_;  // [round][node]
  int max_relays_ = 0;
};

// Max over nodes and rounds of distinct payloads one node forwards in one
// round, for an activation sequence on the given delivery domains (spec'd
// to stay <= horizon; full scan, test-sized traces only).
int max_in_flight(const Graph& g, const std::vector<const DomainView*>& domains,
                  const std::vector<int>& activations, int horizon);

// Adaptive-Simpson quadratures of the scale-learner integrals with the
// dominant exponent factored out (so huge |L| cannot overflow):
//   integrate_eta_exponential = int_0^a eta exp(-L eta - V eta^2) deta
//   integrate_exponential     = int_0^a     exp(-L eta - V eta^2) deta
double integrate_eta_exponential(double L, double V, double a, double rel_tol);
double integrate_exponential(double L, double V, double a, double rel_tol);

}  // namespace doco::reference

#endif  // DOCO_REFERENCE_HPP
