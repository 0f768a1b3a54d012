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

#ifndef DOCO_CONFIG_HPP
#define DOCO_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

namespace doco {

struct GraphConfig {
  std::string kind = "path";  // path | two_cluster | edge_list
  int nodes = 2;              // path
  int cluster_leaves = 8;     // two_cluster
  int connector_length = 1;   // two_cluster
  std::vector<std::pair<int, int>> edges;  // edge_list
};

struct ScenarioConfig {
  std::string kind = "sign_sequence";  // two_cluster | worst_delay | encoding_attack | sign_sequence
  int T = 100;
  std::string directions = "opposite";  // two_cluster: opposite | shared
  double sign_bias = 0.0;
  double noise = 0.0;
  std::vector<double> direction;  // worst_delay / sign_sequence (defaults to e1)
  double comparator_norm = 1.0;   // encoding_attack
};

struct EncoderConfig {
  std::string kind = "deterministic_grid";  // deterministic_grid | sparsified_quantization | none
  int precision = -1;                       // stochastic p; -1 = ceil(log2 d)
};

struct LearnerConfig {
  std::string kind = "comparator_adaptive";  // comparator_adaptive | ogd
  double nu_total = 1.0;
  double c = 1.0;  // direction learner step scale
  std::optional<double> epsilon_override;
  std::optional<double> ghat_override;
  double ogd_eta = 0.1;
  double a_scale = 1.0;  // deliberate mis-tuning knob for negative tests
};

struct CollectionConfig {
  std::string kind = "single";  // single | two_cluster_stars | balls | explicit
  std::string mode = "all";     // balls: all | dyadic
  std::vector<std::vector<int>> node_sets;  // explicit
};

// A full experiment: scenario + learner + encoder + graph, a seed, and the
// output location. Validated before any simulation runs.
struct ExperimentConfig {
  GraphConfig graph;
  ScenarioConfig scenario;
  EncoderConfig encoder;
  LearnerConfig learner;
  CollectionConfig collection;
  int dim = 1;
  double grad_bound = 1.0;
  long long bits_per_round = 64;
  std::vector<std::vector<double>> comparators;
  bool emit_potential = false;
  uint64_t seed = 1;
  std::string out_dir = "out";

  // Parse + validate; throws ConfigError with an actionable message.
  static ExperimentConfig from_json_text(const std::string& text);
  static ExperimentConfig from_file(const std::string& path);
  std::string to_json_text() const;  // canonical form; reloads equivalently

  // Stable FNV-1a hash of the canonical form, for the manifest.
  std::string hash() const;

  void validate() const;
};

}  // namespace doco

#endif  // DOCO_CONFIG_HPP
