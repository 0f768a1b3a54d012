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

#ifndef DOCO_LEARNER_STACK_HPP
#define DOCO_LEARNER_STACK_HPP

#include <memory>
#include <string>
#include <vector>

#include "doco/delayed_sums.hpp"
#include "doco/scale_learner.hpp"
#include "doco/transport.hpp"

namespace doco {

// Unit-ball direction learner interface. Implementations must be
// delay-tolerant: fed the available decoded gradient sum and the
// availability-restricted lag estimate, they return z with ||z|| <= 1.
class DirectionPolicy {
 public:
  virtual ~DirectionPolicy() = default;
  virtual std::vector<double> predict(const std::vector<double>& theta_available,
                                      double lag_available) const = 0;
  virtual std::string name() const = 0;
};

// Default: lazy projection of -eta * Theta onto the unit ball with step
// eta = c / sqrt(1 + lag).
class LazyProjectionPolicy : public DirectionPolicy {
 public:
  explicit LazyProjectionPolicy(double c = 1.0) : c_(c) {}
  std::vector<double> predict(const std::vector<double>& theta_available,
                              double lag_available) const override;
  std::string name() const override { return "lazy_projection"; }

 private:
  double c_;
};

enum class StackMode { kComparatorAdaptive, kOgdBaseline };

// One full learner bound to a delivery domain: the scale learner and a
// direction learner combined by playing w_t = v_t * z_t, with the decoded
// gradient fed to the direction learner and <z_t, ghat_t> to the scale
// learner, each exactly once per round.
class LearnerStack {
 public:
  LearnerStack(std::string id, const DomainView& domain, int dim, const ScaleTuning& tuning,
               std::shared_ptr<const DirectionPolicy> policy,
               StackMode mode = StackMode::kComparatorAdaptive, double ogd_eta = 0.1);

  struct Prediction {
    double v = 0.0;
    std::vector<double> z;
    std::vector<double> w;
    std::vector<int> gamma;  // missing set used for this prediction
  };

  // Prediction for round t at the active node (must lie in the domain).
  Prediction predict(int t, int active_node) const;

  // Feeds the decoded gradient for round t back to both sub-learners. The
  // caller passes the Prediction obtained for this round so that the scalar
  // feedback uses the z that was actually played.
  void learn(int t, const Prediction& pred, const std::vector<double>& decoded_gradient);

  // Full-information potential of the scale learner (uses the global
  // missing sets; for per-round decrease checks).
  double potential() const;

  const std::string& id() const { return id_; }
  const DomainView& domain() const { return domain_; }
  const ScaleTuning& tuning() const { return tuning_; }
  StackMode mode() const { return mode_; }
  int dim() const { return dim_; }
  int rounds_seen() const { return scale_sums_.rounds(); }

 private:
  std::string id_;
  const DomainView& domain_;
  int dim_;
  ScaleTuning tuning_;
  std::shared_ptr<const DirectionPolicy> policy_;
  StackMode mode_;
  double ogd_eta_;
  DelayedSums scale_sums_;      // lambda = hhat + eps, omega = |lambda|
  DelayedSums direction_sums_;  // omega = ||ghat||, vec = ghat
};

// Regret split of the black-box reduction:
//   sum_t <w_t - u, g_t> = sum_t <z_t, g_t> (v_t - ||u||)
//                        + ||u|| sum_t <z_t - u/||u||, g_t>.
// Returns {total, scale_part, direction_part}; exact identity for u != 0.
struct RegretSplit {
  double total;
  double scale_part;
  double direction_part;
};
RegretSplit blackbox_regret_split(const std::vector<double>& vs,
                                  const std::vector<std::vector<double>>& zs,
                                  const std::vector<std::vector<double>>& gs,
                                  const std::vector<double>& comparator);

}  // namespace doco

#endif  // DOCO_LEARNER_STACK_HPP
