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

#include "doco/scale_learner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "doco/errors.hpp"
#include "doco/reference.hpp"
#include "doco/stable_math.hpp"

namespace doco {

namespace {
constexpr double kSqrtPi = 1.7724538509055160272981674833411;
}

ScaleTuning ScaleTuning::make(double nu, double eps, double ghat, int delay_bound,
                              double a_scale) {
  if (nu < 0.0) throw ConfigError("scale learner: nu must be >= 0");
  if (eps < 0.0) throw ConfigError("scale learner: eps must be >= 0");
  if (ghat <= 0.0) throw ConfigError("scale learner: ghat must be > 0");
  if (delay_bound < 0) throw ConfigError("scale learner: delay bound must be >= 0");
  if (a_scale <= 0.0) throw ConfigError("scale learner: a_scale must be > 0");
  ScaleTuning t;
  t.nu = nu;
  t.eps = eps;
  t.ghat = ghat;
  t.delay_bound = delay_bound;
  const double denom = (ghat + eps) * 20.0 * (1.0 + 2.0 * delay_bound);
  t.a = a_scale / denom;
  if (!std::isfinite(denom) || !(t.a > std::numeric_limits<double>::epsilon())) {
    throw ConfigError("scale learner: tuning degenerate, (Ghat+eps)*20*(1+2D) out of range");
  }
  t.z = kSqrtPi / 2.0 * std::erf(t.a);
  return t;
}

double scale_prediction(const ScaleTuning& tuning, double L, double V) {
  if (tuning.nu == 0.0) return 0.0;
  const double integral = gaussian_weighted_eta_integral(L, V, tuning.a);
  const double v = tuning.nu / tuning.z * integral;
  if (!std::isfinite(v)) throw NumericError("scale learner: prediction overflowed");
  if (tuning.cross_check) {
    const double quad = tuning.nu / tuning.z *
                        reference::integrate_eta_exponential(L, V, tuning.a, 1e-10);
    const double scale = std::max({std::fabs(v), std::fabs(quad), 1e-300});
    if (std::fabs(v - quad) > 1e-6 * scale) {
      throw NumericError("scale learner: closed form diverged from quadrature cross-check");
    }
  }
  return v;
}

double potential_value(const ScaleTuning& tuning, double L, double V) {
  if (tuning.nu == 0.0) return 0.0;
  const double integral = gaussian_weighted_integral(L, V, tuning.a);
  const double phi = tuning.nu / tuning.z * integral;
  if (!std::isfinite(phi)) throw NumericError("scale learner: potential overflowed");
  if (tuning.cross_check) {
    const double quad =
        tuning.nu / tuning.z * reference::integrate_exponential(L, V, tuning.a, 1e-10);
    const double scale = std::max({std::fabs(phi), std::fabs(quad), 1e-300});
    if (std::fabs(phi - quad) > 1e-6 * scale) {
      throw NumericError("scale learner: potential diverged from quadrature cross-check");
    }
  }
  return phi;
}

double scale_prediction(const ScaleTuning& tuning, const DelayedSums::View& view) {
  return scale_prediction(tuning, view.lambda_sum, 1.0 + view.sq_sum + 2.0 * view.pair_sum);
}

double potential_value_full(const ScaleTuning& tuning, const DelayedSums& sums) {
  return potential_value(tuning, sums.lambda_total(),
                         1.0 + sums.sq_total() + 2.0 * sums.pair_total());
}

double ScaleLearner::predict() const { return scale_prediction(tuning_, L_, V_); }

void ScaleLearner::absorb(std::vector<Arrival> batch) {
  std::sort(batch.begin(), batch.end(),
            [](const Arrival& a, const Arrival& b) { return a.index < b.index; });
  for (const Arrival& arrival : batch) {
    const int idx = arrival.index;
    if (lambda_.count(idx)) {
      throw ProtocolError("scale learner: duplicate gradient index " + std::to_string(idx));
    }
    const double lam = arrival.hhat + tuning_.eps;
    double zeta = 0.0;
    for (int i : arrival.gamma) {
      auto it = lambda_.find(i);
      if (it != lambda_.end()) {
        zeta += std::fabs(it->second);  // i in gamma(idx) already arrived
      } else {
        watchers_[i].push_back(idx);  // bump zeta(idx) when i arrives
      }
    }
    zeta *= std::fabs(lam);
    L_ += lam;
    V_ += lam * lam + 2.0 * zeta;
    lambda_.emplace(idx, lam);
    // Gradients that were missing when some available s was issued: their
    // arrival raises zeta(s) by |lambda_s| * |lambda_idx|.
    auto watch = watchers_.find(idx);
    if (watch != watchers_.end()) {
      for (int s : watch->second) {
        V_ += 2.0 * std::fabs(lambda_.at(s)) * std::fabs(lam);
      }
      watchers_.erase(watch);
    }
  }
}

bool prod_generalization_check(double x, const std::vector<double>& ys,
                               const std::vector<double>& as) {
  if (ys.size() != as.size()) throw ConfigError("prod check: ys and as must align");
  const double tau = static_cast<double>(ys.size());
  const double range = 1.0 / (20.0 * (1.0 + tau));
  if (std::fabs(x) > range) throw ConfigError("prod check: x outside its domain");
  double lhs_exponent = -x - x * x;
  double rhs_exponent = 0.0;
  for (size_t i = 0; i < ys.size(); ++i) {
    const double y = ys[i];
    const double a = as[i];
    if (std::fabs(y) > range) throw ConfigError("prod check: y_i outside its domain");
    if (a < 0.0 || a > 1.0 / 20.0) throw ConfigError("prod check: a_i outside its domain");
    const double common = -y - y * y - 2.0 * a * std::fabs(y);
    lhs_exponent += common - 2.0 * std::fabs(x * y);
    rhs_exponent += common;
  }
  return std::exp(lhs_exponent) <= std::exp(rhs_exponent) - x;
}

double ogd_baseline_predict(double learning_rate, double available_gradient_sum) {
  return -learning_rate * available_gradient_sum;
}

std::vector<double> ogd_baseline_predict(double learning_rate,
                                         const std::vector<double>& available_gradient_sum) {
  std::vector<double> w(available_gradient_sum.size());
  for (size_t i = 0; i < w.size(); ++i) w[i] = -learning_rate * available_gradient_sum[i];
  return w;
}

}  // namespace doco
