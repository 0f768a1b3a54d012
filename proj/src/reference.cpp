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

#include "doco/reference.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <functional>
#include <set>

#include "doco/errors.hpp"

namespace doco::reference {

FloodSimulator::FloodSimulator(const Graph& g, int horizon) : graph_(g), horizon_(horizon) {
  if (horizon < 1) throw ConfigError("flood: horizon must be >= 1");
}

void FloodSimulator::step(int t, int origin) {
  if (t != last_round_ + 1) throw ProtocolError("flood: rounds must advance one at a time");
  last_round_ = t;
  arrival_.emplace_back(static_cast<size_t>(graph_.num_nodes()), INT_MAX);
  issue_.push_back(t);
  arrival_.back()[static_cast<size_t>(origin)] = t;  // own gradient, known at issue
  relays_.emplace_back(static_cast<size_t>(graph_.num_nodes()), 0);

  // Communication phase of round t: every node that first received a payload
  // this round (or issued it) forwards it, unless the payload is too old.
  for (size_t p = 0; p < arrival_.size(); ++p) {
    const int age = t - issue_[p];
    if (age >= horizon_) continue;  // would arrive older than `horizon`
    for (int n = 0; n < graph_.num_nodes(); ++n) {
      if (arrival_[p][static_cast<size_t>(n)] != t) continue;
      if (age >= 1) {
        const int r = ++relays_[static_cast<size_t>(t) - 1][static_cast<size_t>(n)];
        max_relays_ = std::max(max_relays_, r);
      }
      for (int nbr : graph_.adjacency()[static_cast<size_t>(n)]) {
        auto& cell = arrival_[p][static_cast<size_t>(nbr)];
        if (cell > t + 1) cell = t + 1;
      }
    }
  }
}

bool FloodSimulator::available(int s, int node, int t) const {
  if (s < 1 || s > static_cast<int>(arrival_.size()) || s >= t) return false;
  return arrival_[static_cast<size_t>(s) - 1][static_cast<size_t>(node)] <= t;
}

int FloodSimulator::relays(int node, int r) const {
  if (r < 1 || r > static_cast<int>(relays_.size())) return 0;
  return relays_[static_cast<size_t>(r) - 1][static_cast<size_t>(node)];
}

int max_in_flight(const Graph& g, const std::vector<const DomainView*>& domains,
                  const std::vector<int>& activations, int horizon) {
  int worst = 0;
  const int T = static_cast<int>(activations.size());
  for (int t = 1; t <= T; ++t) {
    for (int node = 0; node < g.num_nodes(); ++node) {
      int count = 0;
      for (int age = 1; age < horizon && age < t; ++age) {
        const int src = activations[static_cast<size_t>(t - age) - 1];
        for (const DomainView* dom : domains) {
          if (dom->contains(src) && dom->contains(node) && dom->dist(src, node) == age) {
            ++count;
            break;
          }
        }
      }
      worst = std::max(worst, count);
    }
  }
  if (worst > horizon) {
    throw ProtocolError("transport: node would forward more than `horizon` payloads in one round");
  }
  return worst;
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double lo, double hi, double flo,
                        double fmid, double fhi, double whole, double tol, int depth) {
  const double mid = 0.5 * (lo + hi);
  const double lmid = 0.5 * (lo + mid);
  const double rmid = 0.5 * (mid + hi);
  const double flmid = f(lmid);
  const double frmid = f(rmid);
  const double left = (mid - lo) / 6.0 * (flo + 4.0 * flmid + fmid);
  const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frmid + fhi);
  if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive_simpson(f, lo, mid, flo, flmid, fmid, left, tol / 2.0, depth - 1) +
         adaptive_simpson(f, mid, hi, fmid, frmid, fhi, right, tol / 2.0, depth - 1);
}

double integrate_scaled(double L, double V, double a, double rel_tol, bool eta_weight) {
  // Factor out the largest exponent over [0, a] so the integrand is O(1),
  // and restrict to the window where the log-concave mass lives (the
  // exponent drops by >= 50 outside it, a relative tail below 2e-22).
  const double peak = std::clamp(-L / (2.0 * V), 0.0, a);
  const double m = -L * peak - V * peak * peak;
  auto drop_width = [&](double slope) {
    return (-slope + std::sqrt(slope * slope + 200.0 * V)) / (2.0 * V);
  };
  const double slope_right = std::max(0.0, L + 2.0 * V * peak);
  const double slope_left = std::max(0.0, -(L + 2.0 * V * peak));
  const double lo = std::max(0.0, peak - drop_width(slope_left));
  const double hi = std::min(a, peak + drop_width(slope_right));
  auto f = [&](double eta) {
    const double e = std::exp(-L * eta - V * eta * eta - m);
    return eta_weight ? eta * e : e;
  };
  // Composite pass fixes the tolerance scale; adaptive refinement finishes.
  const int n = 64;
  const double h = (hi - lo) / n;
  double coarse = f(lo) + f(hi);
  for (int i = 1; i < n; ++i) coarse += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
  coarse *= h / 3.0;
  const double scale = std::max(std::fabs(coarse), (hi - lo) * 1e-12);
  const double flo = f(lo), fmid = f(0.5 * (lo + hi)), fhi = f(hi);
  const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
  const double result =
      adaptive_simpson(f, lo, hi, flo, fmid, fhi, whole, rel_tol * scale, 30);
  return result * std::exp(m);
}

}  // namespace

double integrate_eta_exponential(double L, double V, double a, double rel_tol) {
  return integrate_scaled(L, V, a, rel_tol, /*eta_weight=*/true);
}

double integrate_exponential(double L, double V, double a, double rel_tol) {
  return integrate_scaled(L, V, a, rel_tol, /*eta_weight=*/false);
}

}  // namespace doco::reference
