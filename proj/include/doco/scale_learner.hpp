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

#ifndef DOCO_SCALE_LEARNER_HPP
#define DOCO_SCALE_LEARNER_HPP

#include <map>
#include <vector>

#include "doco/delayed_sums.hpp"

namespace doco {

// Tuning of the comparator-adaptive scale learner. The learner bets a prior
// mass nu on a distribution of learning rates eta over [0, a], where
//
//   a = 1 / ((Ghat + eps) * 20 * (1 + 2 * delay_bound)),
//   Z = integral_0^a exp(-eta^2) deta = sqrt(pi)/2 * erf(a).
//
// Ghat bounds the decoded scalar feedback |hhat_t| and eps the feedback
// error |hhat_t - h_t|.
struct ScaleTuning {
  double nu = 1.0;
  double eps = 0.0;
  double ghat = 1.0;
  int delay_bound = 1;
  double a = 0.0;
  double z = 0.0;
  bool cross_check = false;  // verify closed form against quadrature per call

  // Throws ConfigError when nu < 0, eps < 0, ghat <= 0, or when `a`
  // degenerates (underflows below machine epsilon). `a_scale` != 1
  // deliberately mis-tunes the integration range (negative tests only).
  static ScaleTuning make(double nu, double eps, double ghat, int delay_bound,
                          double a_scale = 1.0);
};

// The prediction v_t given the availability-restricted accumulators
//   L = sum_{s in S} (hhat_s + eps)
//   V = 1 + sum_{s in S} ((hhat_s + eps)^2 + 2 * zeta_s),
// evaluated through the closed form of the truncated Gaussian integral:
//
//   v = nu/Z * [ (1 - e^{-Va^2 - La}) / (2V)
//                - L sqrt(pi) / (4 V^{3/2}) * e^{L^2/(4V)}
//                  * (erf((2aV + L)/(2 sqrt(V))) - erf(L/(2 sqrt(V)))) ].
//
// Throws NumericError if cross-checking is enabled and quadrature diverges
// from the closed form beyond 1e-6 relative.
double scale_prediction(const ScaleTuning& tuning, double L, double V);

// Potential value Phi = nu/Z * integral_0^a exp(-L eta - V eta^2) deta with
// the full-information accumulators. Used for per-round decrease checks.
double potential_value(const ScaleTuning& tuning, double L, double V);

// Convenience: L and V from a DelayedSums view (lambda_s = hhat_s + eps,
// omega_s = |hhat_s + eps|).
double scale_prediction(const ScaleTuning& tuning, const DelayedSums::View& view);
double potential_value_full(const ScaleTuning& tuning, const DelayedSums& sums);

// Stateful scale learner for a single delayed scalar stream whose
// availability only grows (one receiving node). Gradients arrive in batches
// with their issue-time missing sets; predictions depend only on what has
// arrived. Mirrors the incremental zeta updates: when gradient i arrives,
// every available s with i in gamma(s) gains |hhat_s+eps|*|hhat_i+eps|.
class ScaleLearner {
 public:
  explicit ScaleLearner(const ScaleTuning& tuning) : tuning_(tuning) {}

  double predict() const;  // v_t >= 0 from the current available set

  struct Arrival {
    int index = 0;                // issue round s
    double hhat = 0.0;            // decoded scalar feedback
    std::vector<int> gamma;       // missing set at issue time (issue rounds)
  };
  // Inserts newly available gradients (any batch order; processed by
  // ascending index). Throws ProtocolError on duplicate indices.
  void absorb(std::vector<Arrival> batch);

  double L() const { return L_; }
  double V() const { return V_; }
  const ScaleTuning& tuning() const { return tuning_; }

 private:
  ScaleTuning tuning_;
  double L_ = 0.0;
  double V_ = 1.0;
  std::map<int, double> lambda_;               // available s -> hhat_s + eps
  std::map<int, std::vector<int>> watchers_;   // missing i -> available s with i in gamma(s)
};

// Generalized prod inequality check: for x, y_i in
// [-1/(20(1+tau)), 1/(20(1+tau))] and a_i in [0, 1/20], returns whether
//   exp(sum_i(-y_i - y_i^2 - 2 a_i |y_i| - 2|x y_i|) - x - x^2)
//     <= exp(sum_i(-y_i - y_i^2 - 2 a_i |y_i|)) - x.
// Throws ConfigError (DomainViolation) outside those ranges.
bool prod_generalization_check(double x, const std::vector<double>& ys,
                               const std::vector<double>& as);

// Unprojected online gradient descent baselines with fixed learning rate.
double ogd_baseline_predict(double learning_rate, double available_gradient_sum);
std::vector<double> ogd_baseline_predict(double learning_rate,
                                         const std::vector<double>& available_gradient_sum);

}  // namespace doco

#endif  // DOCO_SCALE_LEARNER_HPP
