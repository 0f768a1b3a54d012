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

#include "doco/learner_stack.hpp"

#include <cmath>

#include "doco/errors.hpp"

namespace doco {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

}  // namespace

std::vector<double> LazyProjectionPolicy::predict(const std::vector<double>& theta_available,
                                                  double lag_available) const {
  const double eta = c_ / std::sqrt(1.0 + lag_available);
  std::vector<double> z(theta_available.size());
  for (size_t i = 0; i < z.size(); ++i) z[i] = -eta * theta_available[i];
  const double n = norm(z);
  if (n > 1.0) {
    for (double& v : z) v /= n;
  }
  return z;
}

LearnerStack::LearnerStack(std::string id, const DomainView& domain, int dim,
                           const ScaleTuning& tuning,
                           std::shared_ptr<const DirectionPolicy> policy, StackMode mode,
                           double ogd_eta)
    : id_(std::move(id)),
      domain_(domain),
      dim_(dim),
      tuning_(tuning),
      policy_(std::move(policy)),
      mode_(mode),
      ogd_eta_(ogd_eta),
      scale_sums_(0),
      direction_sums_(dim) {
  if (dim < 1) throw ConfigError("learner stack: dimension must be >= 1");
  if (mode_ == StackMode::kComparatorAdaptive && !policy_) {
    throw ConfigError("learner stack: direction policy required");
  }
}

LearnerStack::Prediction LearnerStack::predict(int t, int active_node) const {
  if (!domain_.contains(active_node)) {
    throw ProtocolError("learner stack: active node outside delivery domain");
  }
  Prediction pred;
  pred.gamma = domain_.missing_list(active_node, t);
  const auto dir_view = direction_sums_.query(pred.gamma);

  if (mode_ == StackMode::kOgdBaseline) {
    pred.w = ogd_baseline_predict(ogd_eta_, dir_view.vec_sum);
    const double wn = norm(pred.w);
    pred.v = wn;
    pred.z.assign(static_cast<size_t>(dim_), 0.0);
    if (wn > 0.0) {
      for (int i = 0; i < dim_; ++i) pred.z[static_cast<size_t>(i)] = pred.w[static_cast<size_t>(i)] / wn;
    }
    return pred;
  }

  const auto scale_view = scale_sums_.query(pred.gamma);
  pred.v = scale_prediction(tuning_, scale_view);
  const double lag_available = dir_view.sq_sum + 2.0 * dir_view.pair_sum;
  pred.z = policy_->predict(dir_view.vec_sum, lag_available);
  if (norm(pred.z) > 1.0 + 1e-9) throw NumericError("learner stack: direction left the unit ball");
  pred.w.resize(static_cast<size_t>(dim_));
  for (int i = 0; i < dim_; ++i) pred.w[static_cast<size_t>(i)] = pred.v * pred.z[static_cast<size_t>(i)];
  return pred;
}

void LearnerStack::learn(int t, const Prediction& pred, const std::vector<double>& decoded_gradient) {
  const double hhat = dot(pred.z, decoded_gradient);
  const double lambda = hhat + tuning_.eps;
  scale_sums_.add_round(t, pred.gamma, lambda, std::fabs(lambda));
  direction_sums_.add_round(t, pred.gamma, 0.0, norm(decoded_gradient), &decoded_gradient);
}

double LearnerStack::potential() const { return potential_value_full(tuning_, scale_sums_); }

RegretSplit blackbox_regret_split(const std::vector<double>& vs,
                                  const std::vector<std::vector<double>>& zs,
                                  const std::vector<std::vector<double>>& gs,
                                  const std::vector<double>& comparator) {
  const double u_norm = norm(comparator);
  RegretSplit split{0.0, 0.0, 0.0};
  for (size_t t = 0; t < vs.size(); ++t) {
    const double zg = dot(zs[t], gs[t]);
    split.scale_part += zg * (vs[t] - u_norm);
    double ug = 0.0;
    for (size_t i = 0; i < comparator.size(); ++i) ug += comparator[i] * gs[t][i];
    if (u_norm > 0.0) {
      split.direction_part += zg - ug / u_norm;
    }
    split.total += vs[t] * zg - ug;
  }
  split.direction_part *= u_norm;
  return split;
}

}  // namespace doco
