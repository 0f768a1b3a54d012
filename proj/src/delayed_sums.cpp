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

#include "doco/delayed_sums.hpp"

#include "doco/errors.hpp"

namespace doco {

int DelayedSums::local(int t) const {
  if (t < 0 || t >= static_cast<int>(local_of_round_.size()) ||
      local_of_round_[static_cast<size_t>(t)] < 0) {
    throw ProtocolError("delayed sums: unknown stream round " + std::to_string(t));
  }
  return local_of_round_[static_cast<size_t>(t)];
}

bool DelayedSums::has_round(int t) const {
  return t >= 0 && t < static_cast<int>(local_of_round_.size()) &&
         local_of_round_[static_cast<size_t>(t)] >= 0;
}

void DelayedSums::add_round(int t, const std::vector<int>& gamma, double lambda, double omega,
                            const std::vector<double>* vec) {
  if (has_round(t)) throw ProtocolError("delayed sums: duplicate gradient index " + std::to_string(t));
  if (t < static_cast<int>(local_of_round_.size()) - 1) {
    throw ProtocolError("delayed sums: stream rounds must be added in increasing order");
  }
  if (static_cast<int>(local_of_round_.size()) <= t) local_of_round_.resize(static_cast<size_t>(t) + 1, -1);
  const int id = static_cast<int>(omega_.size());
  local_of_round_[static_cast<size_t>(t)] = id;

  std::vector<int> gamma_local;
  gamma_local.reserve(gamma.size());
  double K = 0.0;
  for (int g : gamma) {
    const int gl = local(g);
    gamma_local.push_back(gl);
    K += omega_[static_cast<size_t>(gl)];
    watcher_weight_[static_cast<size_t>(gl)] += omega;
  }
  lambda_.push_back(lambda);
  omega_.push_back(omega);
  gamma_.push_back(std::move(gamma_local));
  gamma_weight_.push_back(K);
  watcher_weight_.push_back(0.0);
  mark_.push_back(0);
  lambda_total_ += lambda;
  sq_total_ += omega * omega;
  pair_total_ += omega * K;
  if (dim_ > 0) {
    if (!vec || static_cast<int>(vec->size()) != dim_) {
      throw ProtocolError("delayed sums: missing or mis-sized vector payload");
    }
    vecs_.insert(vecs_.end(), vec->begin(), vec->end());
    if (vec_total_.empty()) vec_total_.assign(static_cast<size_t>(dim_), 0.0);
    for (int i = 0; i < dim_; ++i) vec_total_[static_cast<size_t>(i)] += (*vec)[static_cast<size_t>(i)];
  }
}

DelayedSums::View DelayedSums::query(const std::vector<int>& gamma_t) const {
  View view;
  view.lambda_sum = lambda_total_;
  view.sq_sum = sq_total_;
  view.pair_sum = pair_total_;
  if (dim_ > 0) view.vec_sum = vec_total_.empty() ? std::vector<double>(static_cast<size_t>(dim_), 0.0) : vec_total_;

  if (gamma_t.empty()) return view;

  ++epoch_;
  std::vector<int> locals;
  locals.reserve(gamma_t.size());
  for (int g : gamma_t) {
    const int gl = local(g);
    locals.push_back(gl);
    mark_[static_cast<size_t>(gl)] = epoch_;
  }
  // Pairs with both endpoints missing were subtracted twice below; restore.
  double both_missing = 0.0;
  for (int sl : locals) {
    view.lambda_sum -= lambda_[static_cast<size_t>(sl)];
    view.sq_sum -= omega_[static_cast<size_t>(sl)] * omega_[static_cast<size_t>(sl)];
    view.pair_sum -= omega_[static_cast<size_t>(sl)] * gamma_weight_[static_cast<size_t>(sl)];
    view.pair_sum -= omega_[static_cast<size_t>(sl)] * watcher_weight_[static_cast<size_t>(sl)];
    for (int il : gamma_[static_cast<size_t>(sl)]) {
      if (mark_[static_cast<size_t>(il)] == epoch_) {
        both_missing += omega_[static_cast<size_t>(sl)] * omega_[static_cast<size_t>(il)];
      }
    }
    if (dim_ > 0) {
      const double* row = &vecs_[static_cast<size_t>(sl) * dim_];
      for (int i = 0; i < dim_; ++i) view.vec_sum[static_cast<size_t>(i)] -= row[i];
    }
  }
  view.pair_sum += both_missing;
  return view;
}

}  // namespace doco
