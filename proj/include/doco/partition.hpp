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

#ifndef DOCO_PARTITION_HPP
#define DOCO_PARTITION_HPP

#include <memory>
#include <vector>

#include "doco/graph.hpp"
#include "doco/learner_stack.hpp"
#include "doco/transport.hpp"

namespace doco {

// A collection Q of candidate subgraphs, each carrying its own learner
// stack. Per round the active node's prediction is the sum of the iterates
// of the subgraphs containing it; each gradient is encoded once with
// k = floor(b / D_Q) bits and decoded by every consuming subgraph learner.
class QCollection {
 public:
  // `nu_total` is split uniformly: each stack gets nu = nu_total / |Q|.
  // Subgraph stacks tune their integration range with D = D(F) (their own
  // induced diameter) while the shared discard horizon is D_Q. `a_scale`
  // deliberately mis-tunes the scale learners (negative tests only).
  QCollection(const Graph& g, std::vector<Subgraph> subgraphs, int dim, double nu_total,
              double eps, double ghat, std::shared_ptr<const DirectionPolicy> policy,
              StackMode mode = StackMode::kComparatorAdaptive, double ogd_eta = 0.1,
              double a_scale = 1.0);

  int size() const { return static_cast<int>(stacks_.size()); }
  int max_diameter() const { return d_q_; }  // D_Q
  double nu_per_stack() const { return nu_per_stack_; }
  const Subgraph& subgraph(int j) const { return subgraphs_[static_cast<size_t>(j)]; }
  const DomainView& domain(int j) const { return *domains_[static_cast<size_t>(j)]; }
  LearnerStack& stack(int j) { return *stacks_[static_cast<size_t>(j)]; }
  const LearnerStack& stack(int j) const { return *stacks_[static_cast<size_t>(j)]; }
  std::vector<const DomainView*> domain_pointers() const;

  // Indices of subgraphs containing `node`; throws ProtocolError
  // (OrphanNode) when empty - the regret guarantee needs every activated
  // node covered.
  const std::vector<int>& members_of(int node) const;

  struct RoundOutput {
    std::vector<double> w;                          // summed iterate
    std::vector<int> active;                        // subgraph indices
    std::vector<LearnerStack::Prediction> preds;    // aligned with `active`
  };
  RoundOutput predict(int t, int active_node) const;

  // Feeds the shared decoded gradient to every active subgraph learner and
  // advances all domain views.
  void learn(int t, int active_node, const RoundOutput& out,
             const std::vector<double>& decoded_gradient);

 private:
  const Graph* graph_;
  std::vector<Subgraph> subgraphs_;
  std::vector<std::unique_ptr<DomainView>> domains_;
  std::vector<std::unique_ptr<LearnerStack>> stacks_;
  std::vector<std::vector<int>> membership_;  // node -> subgraph indices
  int d_q_ = 1;
  double nu_per_stack_ = 0.0;
};

}  // namespace doco

#endif  // DOCO_PARTITION_HPP
