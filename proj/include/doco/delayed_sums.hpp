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

#ifndef DOCO_DELAYED_SUMS_HPP
#define DOCO_DELAYED_SUMS_HPP

#include <vector>

namespace doco {

// Accounting for one learner's gradient stream under delays. Each stream
// round s carries a signed value lambda_s, a non-negative weight omega_s,
// an optional vector payload, and gamma(s) - the stream rounds missing at
// the active node when round s was issued.
//
// The availability at the current active node changes from round to round
// (different nodes have different views), so per-view state cannot be
// maintained incrementally. Instead the engine keeps full-information
// accumulators and answers view queries by subtracting the contribution of
// the currently missing set gamma(t), which has at most D elements:
//
//   query(gamma_t) returns, over S = {stream rounds} \ gamma_t,
//     lambda_sum = sum_{s in S} lambda_s
//     sq_sum     = sum_{s in S} omega_s^2
//     pair_sum   = sum_{s in S} omega_s * sum_{i in gamma(s) cap S} omega_i
//     vec_sum    = sum_{s in S} vec_s
//
// The full-information totals double as the potential-function state.
class DelayedSums {
 public:
  explicit DelayedSums(int vector_dim = 0) : dim_(vector_dim) {}

  struct View {
    double lambda_sum = 0.0;
    double sq_sum = 0.0;
    double pair_sum = 0.0;
    std::vector<double> vec_sum;
  };

  // Adds stream round `t` (global round id, strictly increasing). `gamma`
  // lists the stream rounds missing at issue time, ascending global ids.
  // Throws ProtocolError on duplicate or out-of-order insertion.
  void add_round(int t, const std::vector<int>& gamma, double lambda, double omega,
                 const std::vector<double>* vec = nullptr);

  // View over all stream rounds except those in `gamma_t` (ascending global
  // ids; every element must be a known stream round).
  View query(const std::vector<int>& gamma_t) const;

  // Full-information totals (gamma_t empty).
  double lambda_total() const { return lambda_total_; }
  double sq_total() const { return sq_total_; }
  double pair_total() const { return pair_total_; }
  const std::vector<double>& vec_total() const { return vec_total_; }

  int rounds() const { return static_cast<int>(omega_.size()); }
  bool has_round(int t) const;

 private:
  int local(int t) const;

  int dim_;
  std::vector<int> local_of_round_;      // global round id -> dense index, -1 unknown
  std::vector<double> lambda_, omega_, issue_gap_;  // per stream round
  std::vector<std::vector<int>> gamma_;  // per stream round, local indices
  std::vector<double> gamma_weight_;     // K(s) = sum_{i in gamma(s)} omega_i
  std::vector<double> watcher_weight_;   // W(i) = sum_{s: i in gamma(s)} omega_s
  std::vector<double> vecs_;             // rounds x dim, row-major
  double lambda_total_ = 0.0;
  double sq_total_ = 0.0;
  double pair_total_ = 0.0;
  std::vector<double> vec_total_;
  mutable std::vector<int> mark_;  // scratch, stamped by query epoch
  mutable int epoch_ = 0;
};

}  // namespace doco

#endif  // DOCO_DELAYED_SUMS_HPP
