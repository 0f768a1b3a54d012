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

#include "doco/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "doco/errors.hpp"
#include "doco/rng.hpp"

namespace doco {

namespace {

std::vector<double> normalized(std::vector<double> v) {
  double n = 0.0;
  for (double x : v) n += x * x;
  n = std::sqrt(n);
  if (n == 0.0) throw ConfigError("scenario: zero direction vector");
  for (double& x : v) x /= n;
  return v;
}

// One draw from the loss model; ||g|| = G exactly.
std::vector<double> draw_gradient(const LossModel& model, int dim, Rng& rng) {
  std::vector<double> dir = model.direction;
  if (static_cast<int>(dir.size()) != dim) throw ConfigError("scenario: direction dim mismatch");
  std::vector<double> raw(dir);
  if (model.noise > 0.0) {
    for (int i = 0; i < dim; ++i) raw[static_cast<size_t>(i)] += model.noise * rng.gaussian();
  }
  raw = normalized(std::move(raw));
  const double sign = rng.uniform() < (1.0 + model.sign_bias) / 2.0 ? -1.0 : 1.0;
  for (double& x : raw) x *= sign * model.grad_bound;
  return raw;
}

void check_bound(const Scenario& s) {
  for (const auto& g : s.gradients) {
    double n = 0.0;
    for (double x : g) n += x * x;
    if (std::sqrt(n) > s.grad_bound * (1.0 + 1e-9)) {
      throw NumericError("scenario: generated gradient exceeds ||g|| <= G");
    }
  }
}

}  // namespace

Scenario two_cluster_scenario(const TwoClusterLayout& layout, int dim, int T, uint64_t seed,
                              const LossModel& cluster1_model, const LossModel& cluster2_model) {
  if (cluster1_model.grad_bound != cluster2_model.grad_bound) {
    throw ConfigError("scenario: cluster models must share the gradient bound G");
  }
  Scenario s;
  s.tag = "two_cluster";
  s.seed = seed;
  s.grad_bound = cluster1_model.grad_bound;
  Rng rng(seed);
  for (int t = 0; t < T; ++t) {
    const bool first = rng.bernoulli(0.5);
    const auto& nodes = first ? layout.cluster1 : layout.cluster2;
    const auto& model = first ? cluster1_model : cluster2_model;
    s.activations.push_back(nodes[rng.index(nodes.size())]);
    s.gradients.push_back(draw_gradient(model, dim, rng));
  }
  std::ostringstream desc;
  desc << "two_cluster T=" << T << " seed=" << seed << " G=" << s.grad_bound << " ("
       << layout.describe() << ")";
  s.descriptor = desc.str();
  check_bound(s);
  return s;
}

Scenario worst_delay_scenario(const Graph& g, int dim, int T, uint64_t seed,
                              const LossModel& model) {
  // Locate a diameter-realizing path via the parent links of a BFS tree.
  const int D = g.diameter();
  int end_a = 0, end_b = 0;
  for (int u = 0; u < g.num_nodes() && g.dist(end_a, end_b) < D; ++u) {
    for (int v = 0; v < g.num_nodes(); ++v) {
      if (g.dist(u, v) == D) {
        end_a = u;
        end_b = v;
        break;
      }
    }
  }
  std::vector<int> path{end_a};
  int cur = end_a;
  while (cur != end_b) {
    for (int nbr : g.adjacency()[static_cast<size_t>(cur)]) {
      if (g.dist(nbr, end_b) == g.dist(cur, end_b) - 1) {
        cur = nbr;
        path.push_back(cur);
        break;
      }
    }
  }

  Scenario s;
  s.tag = "worst_delay";
  s.seed = seed;
  s.grad_bound = model.grad_bound;
  // Activate path positions 0, 2, ..., 2*floor(D/2)-2; one gradient issuer
  // every other hop keeps the freshest available information floor(D/2)
  // rounds stale.
  const int cycle = std::max(1, D / 2);
  Rng rng(seed);
  for (int t = 0; t < T; ++t) {
    s.activations.push_back(path[static_cast<size_t>(2 * (t % cycle))]);
    s.gradients.push_back(draw_gradient(model, dim, rng));
  }
  std::ostringstream desc;
  desc << "worst_delay T=" << T << " seed=" << seed << " D=" << D << " path_end=" << end_a << ","
       << end_b;
  s.descriptor = desc.str();
  check_bound(s);
  return s;
}

Scenario encoding_attack_scenario(const EncoderSpec& spec, int T, uint64_t seed,
                                  double comparator_norm) {
  if (spec.kind != EncoderKind::kDeterministicGrid) {
    throw ConfigError("encoding_attack: requires a deterministic encoder");
  }
  const CollidingPair pair = find_grid_collision(spec);
  if (encode_deterministic(pair.g, spec) != encode_deterministic(pair.h, spec)) {
    throw NumericError("encoding_attack: collision pair failed payload verification");
  }
  Scenario s;
  s.tag = "encoding_attack";
  s.seed = seed;
  s.grad_bound = spec.grad_bound;
  s.attack_g = pair.g;
  s.attack_h = pair.h;
  // Aligned comparator u = norm * (h - g)/||h - g||; the floor is
  // (T/4) ||g - h|| ||u|| in expectation over the stream.
  s.aligned_comparator.assign(pair.g.size(), 0.0);
  for (size_t i = 0; i < pair.g.size(); ++i) {
    s.aligned_comparator[i] = comparator_norm * (pair.h[i] - pair.g[i]) / pair.distance;
  }
  std::vector<double> mix(pair.g.size());
  for (size_t i = 0; i < mix.size(); ++i) mix[i] = -(pair.g[i] + pair.h[i]) / 2.0;
  Rng rng(seed);
  for (int t = 0; t < T; ++t) {
    s.activations.push_back(0);
    s.gradients.push_back(rng.bernoulli(0.5) ? pair.g : mix);
  }
  std::ostringstream desc;
  desc << "encoding_attack T=" << T << " seed=" << seed << " q=" << spec.bits_per_coordinate
       << " pair_distance=" << pair.distance;
  s.descriptor = desc.str();
  check_bound(s);
  return s;
}

Scenario sign_sequence_scenario(const std::vector<double>& direction, double grad_bound, int T,
                                uint64_t seed) {
  Scenario s;
  s.tag = "sign_sequence";
  s.seed = seed;
  s.grad_bound = grad_bound;
  const std::vector<double> dir = normalized(direction);
  Rng rng(seed);
  for (int t = 0; t < T; ++t) {
    const double sign = rng.bernoulli(0.5) ? 1.0 : -1.0;
    std::vector<double> g(dir.size());
    for (size_t i = 0; i < g.size(); ++i) g[i] = sign * grad_bound * dir[i];
    s.activations.push_back(0);
    s.gradients.push_back(std::move(g));
  }
  std::ostringstream desc;
  desc << "sign_sequence T=" << T << " seed=" << seed << " G=" << grad_bound;
  s.descriptor = desc.str();
  check_bound(s);
  return s;
}

}  // namespace doco
