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

#ifndef DOCO_METRICS_HPP
#define DOCO_METRICS_HPP

#include <optional>
#include <string>
#include <vector>

#include "doco/graph.hpp"

namespace doco {

// Per-round record of one learner stack's view.
struct StackTrace {
  std::string id;
  int subgraph_index = -1;          // -1 for the single full-graph stack
  std::vector<int> domain_nodes;    // nodes of the stack's delivery domain
  double nu = 0.0, eps = 0.0, ghat = 0.0;
  int delay_bound = 0;
  std::vector<int> rounds;          // global round ids this stack acted in
  std::vector<double> v;            // scale predictions
  std::vector<std::vector<double>> z;
  std::vector<double> h_true;       // <z_t, g_t>
  std::vector<double> h_hat;        // <z_t, ghat_t>
  std::vector<std::vector<int>> gamma;  // stack-level missing sets
  std::vector<double> phi;          // potential after the round (optional)

  // Lag of the scalar feedback stream:
  // sum_t (h_t^2 + 2 |h_t| sum_{i in gamma(t)} |h_i|), over stack rounds.
  double lambda_h(bool use_hhat) const;
};

// Completed-run record: everything regret, lag, and bound evaluation need,
// reproducible from the exported CSV alone.
struct RunLedger {
  int dim = 1;
  double grad_bound = 1.0;
  int diameter = 1;     // of the governing graph
  int horizon = 1;      // discard horizon (D or D_Q)
  int bits_per_gradient = 0;
  long long bits_budget = 0;  // b
  std::string encoder_kind;

  std::vector<int> t;                 // 1-based, strictly increasing
  std::vector<int> active_node;
  std::vector<std::vector<double>> w, g, ghat;
  std::vector<int> avail_count;       // |S_{I_t}(t)| at transport level
  std::vector<std::vector<int>> gamma;  // transport-level missing sets
  std::vector<long long> bits_round;
  std::vector<std::string> payload_hex;
  std::vector<double> v_disp, h_disp;  // per-round scale mass / scalar loss columns
  std::vector<double> phi_disp;        // optional potential column (empty = omitted)

  std::vector<std::vector<double>> comparators;
  std::vector<StackTrace> stacks;

  int T() const { return static_cast<int>(t.size()); }
  double loss(int row) const;  // <g_t, w_t>

  // Joint regret against `u`: true-loss and linearized forms coincide for
  // the linear losses this simulator ships.
  double regret(const std::vector<double>& u) const;
  // Linearized regret restricted to rounds whose active node passes `keep`.
  double regret_on(const std::vector<double>& u, const std::vector<char>& keep_node) const;
  // Cumulative regret over the first `rows` rounds.
  double regret_prefix(const std::vector<double>& u, int rows) const;

  // Lag Lambda_T = sum_t (||g_t||^2 + 2 ||g_t|| sum_{i in gamma(t)} ||g_i||)
  // and the decoded-gradient analogue.
  double lag() const;
  double lag_hat() const;
};

// Explicit-constant regret ceiling of the scale learner:
//   nu + 2 u T eps
//   + u * max(264 Ghat D ln_+(312 u Ghat D / nu),
//             sqrt(8 (Lambda_h + 24 T Ghat eps + 1)
//                  * ln_+(2036 u^2 T D Ghat^2 / nu^2))).
double scale_regret_ceiling(double nu, double eps, double ghat, int delay_bound, long long T,
                            double lambda_h, double u);

enum class TheoremBound {
  kComparatorAdaptive,   // explicit constants
  kDeterministicCoding,  // order-level: sqrt(Lambda) + T 2^{-b/(dD)} G
  kStochasticCoding,     // order-level: G sqrt((1 + dD/b) D T)
  kPartition,            // order-level per-cell sum
};

struct BoundValue {
  double value = 0.0;
  bool order_level = false;  // constants fixed to 1 by convention
};

struct PartitionCellParams {
  double u_norm = 0.0;
  double lambda_cell = 0.0;  // lag restricted to the cell
  long long rounds = 0;
  int cell_diameter = 1;
};

// Evaluates a theorem's right-hand side on ledger metadata. Throws
// ConfigError (MissingMetadata) when a required field was never populated.
BoundValue evaluate_bound(const RunLedger& ledger, TheoremBound which, double u_norm,
                          const StackTrace* stack = nullptr,
                          const std::vector<PartitionCellParams>* cells = nullptr,
                          int q_size = 1);

// Per-cell regret report for a Q-partition (disjoint cells drawn from Q,
// covering every activated node). `cell_of_stack[j]` maps ledger stack j to
// its cell index or -1 when the subgraph is not a partition cell.
struct PartitionReport {
  std::vector<double> cell_regret;        // true-loss regret per cell
  std::vector<double> cell_linearized;    // per-cell stack linearized regret vs u_j
  std::vector<double> stack_null_regret;  // R~_F(0) for every stack in Q
  double total = 0.0;
  // Exact iterate-addition identity residual:
  //   sum_t <w_t, g_t> - sum_j sum_{t in F_j} <u_j, g_t>
  //     - sum_{F not in P} R~_F(0) - sum_j R~_{F_j}(u_j)
  double identity_residual = 0.0;
};
PartitionReport partition_regret_report(const RunLedger& ledger,
                                        const std::vector<int>& cell_stacks,
                                        const std::vector<std::vector<double>>& comparators);

// Trace CSV round-trips bit-for-bit (doubles printed with %.17g).
void write_trace_csv(const RunLedger& ledger, const std::string& path);
RunLedger read_trace_csv(const std::string& path);

}  // namespace doco

#endif  // DOCO_METRICS_HPP
