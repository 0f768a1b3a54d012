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

#include "doco/partition.hpp"

#include <algorithm>

#include "doco/errors.hpp"

namespace doco {

QCollection::QCollection(const Graph& g, std::vector<Subgraph> subgraphs, int dim,
                         double nu_total, double eps, double ghat,
                         std::shared_ptr<const DirectionPolicy> policy, StackMode mode,
                         double ogd_eta, double a_scale)
    : graph_(&g), subgraphs_(std::move(subgraphs)) {
  if (subgraphs_.empty()) throw ConfigError("partition: collection Q must be non-empty");
  for (const Subgraph& f : subgraphs_) d_q_ = std::max(d_q_, f.diameter());
  d_q_ = std::max(d_q_, 1);
  nu_per_stack_ = nu_total / static_cast<double>(subgraphs_.size());
  membership_.assign(static_cast<size_t>(g.num_nodes()), {});
  for (size_t j = 0; j < subgraphs_.size(); ++j) {
    domains_.push_back(std::make_unique<DomainView>(g, subgraphs_[j], d_q_));
    const ScaleTuning tuning =
        ScaleTuning::make(nu_per_stack_, eps, ghat, subgraphs_[j].diameter(), a_scale);
    stacks_.push_back(std::make_unique<LearnerStack>("F" + std::to_string(j), *domains_.back(),
                                                     dim, tuning, policy, mode, ogd_eta));
    for (int n : subgraphs_[j].nodes()) membership_[static_cast<size_t>(n)].push_back(static_cast<int>(j));
  }
}

std::vector<const DomainView*> QCollection::domain_pointers() const {
  std::vector<const DomainView*> out;
  out.reserve(domains_.size());
  for (const auto& d : domains_) out.push_back(d.get());
  return out;
}

const std::vector<int>& QCollection::members_of(int node) const {
  const auto& m = membership_[static_cast<size_t>(node)];
  if (m.empty()) {
    throw ProtocolError("partition: activated node " + std::to_string(node) +
                        " belongs to no subgraph in Q");
  }
  return m;
}

QCollection::RoundOutput QCollection::predict(int t, int active_node) const {
  RoundOutput out;
  out.active = members_of(active_node);
  out.w.assign(static_cast<size_t>(stacks_.front()->dim()), 0.0);
  for (int j : out.active) {
    auto pred = stacks_[static_cast<size_t>(j)]->predict(t, active_node);
    for (size_t i = 0; i < out.w.size(); ++i) out.w[i] += pred.w[i];
    out.preds.push_back(std::move(pred));
  }
  return out;
}

void QCollection::learn(int t, int active_node, const RoundOutput& out,
                        const std::vector<double>& decoded_gradient) {
  for (size_t k = 0; k < out.active.size(); ++k) {
    stacks_[static_cast<size_t>(out.active[k])]->learn(t, out.preds[k], decoded_gradient);
  }
  for (auto& dom : domains_) dom->note_round(t, active_node);
}

}  // namespace doco
