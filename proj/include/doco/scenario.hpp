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

#ifndef DOCO_SCENARIO_HPP
#define DOCO_SCENARIO_HPP

#include <string>
#include <vector>

#include "doco/encoding.hpp"
#include "doco/graph.hpp"

namespace doco {

// A fully materialized activation/loss stream. Losses are linear:
// loss_t(w) = <g_t, w>. Streams are generated up front from the seed
// (oblivious adversary), so regeneration from (tag, seed, params) is
// bit-identical.
struct Scenario {
  std::string tag;
  std::string descriptor;
  uint64_t seed = 0;
  double grad_bound = 1.0;
  std::vector<int> activations;               // round t -> active node (size T)
  std::vector<std::vector<double>> gradients;  // round t -> g_t, ||g_t|| <= G

  // Optional metadata individual generators fill in.
  std::vector<double> attack_g, attack_h;     // encoding_attack colliding pair
  std::vector<double> aligned_comparator;     // comparator realizing the regret floor

  int T() const { return static_cast<int>(activations.size()); }
};

// Gradient model shared by the cluster/path scenarios: per round,
//   g_t = sign_t * G * normalize(dir + noise * xi_t),
// with xi_t standard Gaussian and sign_t = -1 with probability
// (1 + sign_bias)/2. sign_bias = 0 gives a mean-zero stream; sign_bias = 1
// a pure drift toward -dir (the comparator aligned with dir profits).
struct LossModel {
  std::vector<double> direction;  // unit-ish; normalized internally
  double sign_bias = 0.0;
  double noise = 0.0;
  double grad_bound = 1.0;
};

// Activations alternate uniformly at random over the two clusters' nodes
// (connector nodes are never active); round gradients follow the active
// cluster's loss model. Defaults: opposite unit directions +/- e1.
Scenario two_cluster_scenario(const TwoClusterLayout& layout, int dim, int T, uint64_t seed,
                              const LossModel& cluster1_model, const LossModel& cluster2_model);

// Cyclic activation of every other node along a diameter-realizing path,
// which keeps the active node's freshest available gradient floor(D/2)
// rounds old after warm-up.
Scenario worst_delay_scenario(const Graph& g, int dim, int T, uint64_t seed,
                              const LossModel& model);

// Indistinguishable-gradient stream for a deterministic encoder: finds a
// colliding pair (g, h) with identical payloads at near-maximal distance and
// emits the i.i.d. stream {g w.p. 1/2, -(g+h)/2 w.p. 1/2}. Any
// gradient-oblivious learner then suffers expected regret at least
// (T/4) ||g-h|| ||u|| against the comparator aligned with h - g. Verifies
// encode(g) == encode(h) before emitting; single active node 0.
Scenario encoding_attack_scenario(const EncoderSpec& spec, int T, uint64_t seed,
                                  double comparator_norm);

// i.i.d. +/- G losses along a fixed direction, single active node 0.
Scenario sign_sequence_scenario(const std::vector<double>& direction, double grad_bound, int T,
                                uint64_t seed);

}  // namespace doco

#endif  // DOCO_SCENARIO_HPP
