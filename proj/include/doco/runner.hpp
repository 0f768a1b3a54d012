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

#ifndef DOCO_RUNNER_HPP
#define DOCO_RUNNER_HPP

#include <string>
#include <vector>

#include "doco/config.hpp"
#include "doco/encoding.hpp"
#include "doco/graph.hpp"
#include "doco/metrics.hpp"
#include "doco/scenario.hpp"

namespace doco {

// One completed seeded simulation with everything tests, verify, and the
// summary writer need.
struct RunContext {
  ExperimentConfig config;
  uint64_t seed = 0;
  Graph graph;
  TwoClusterLayout layout;  // populated for two_cluster graphs
  Scenario scenario;
  bool has_encoder = false;
  EncoderSpec encoder;  // valid when has_encoder
  int horizon = 1;      // discard horizon: D(G) for single runs, D_Q otherwise
  int bits_per_gradient = 0;
  double eps_eff = 0.0;   // scale learner error parameter actually used
  double ghat_eff = 1.0;  // decoded-norm bound actually used
  std::vector<std::vector<int>> collection_sets;  // resolved Q (node sets)
  RunLedger ledger;
};

// Executes one seeded run entirely in memory.
RunContext run_once(const ExperimentConfig& config, uint64_t seed);

// Executes `num_seeds` runs (master seeds seed_base + 0, 1, ...) and writes
// trace CSVs, per-run summary JSON, an optional per-cell CSV, and a
// reproducibility manifest into out_dir. Returns the run contexts.
std::vector<RunContext> run_and_write(const ExperimentConfig& config, int num_seeds,
                                      const std::string& out_dir);

struct CheckResult {
  std::string name;
  bool pass = false;
  double worst_slack = 0.0;  // signed; <= 0 comfortably inside the invariant
  std::string note;
};

// Invariant suites of every module evaluated against one finished run.
std::vector<CheckResult> verify_run(const RunContext& ctx);

// CLI entry points; return process exit codes (0 ok, 2 config, 3 protocol,
// 4 numeric).
int run_command(const std::string& config_path, int num_seeds, const std::string& out_override,
                const std::string& sweep_spec);
int verify_command(const std::string& config_path);

std::string summary_json(const RunContext& ctx);
const char* version_string();

}  // namespace doco

#endif  // DOCO_RUNNER_HPP
