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

#include "doco/transport.hpp"

#include <algorithm>
#include <set>

#include "doco/errors.hpp"

namespace doco {

DomainView::DomainView(const Graph& g, int horizon) : graph_(&g), horizon_(horizon) {
  if (horizon < 1) throw ConfigError("transport: horizon must be >= 1");
  never_delivered_.assign(static_cast<size_t>(g.num_nodes()), 0);
}

DomainView::DomainView(const Graph& g, const Subgraph& f, int horizon)
    : graph_(&g), sub_(&f), horizon_(horizon) {
  if (horizon < 1) throw ConfigError("transport: horizon must be >= 1");
  never_delivered_.assign(static_cast<size_t>(g.num_nodes()), 0);
}

bool DomainView::contains(int node) const { return sub_ ? sub_->contains(node) : true; }

int DomainView::dist(int u, int v) const { return sub_ ? sub_->dist(u, v) : graph_->dist(u, v); }

int DomainView::diameter() const { return sub_ ? sub_->diameter() : graph_->diameter(); }

void DomainView::note_round(int t, int origin) {
  if (t <= last_round_) throw ProtocolError("transport: rounds must be noted in increasing order");
  last_round_ = t;
  if (static_cast<int>(origin_by_round_.size()) <= t) origin_by_round_.resize(static_cast<size_t>(t) + 1, -1);
  if (!contains(origin)) return;
  origin_by_round_[static_cast<size_t>(t)] = origin;
  rounds_.push_back(t);
  if (diameter() > horizon_) {  // otherwise every domain node is reachable in time
    for (int n = 0; n < graph_->num_nodes(); ++n) {
      if (contains(n) && dist(origin, n) > horizon_) ++never_delivered_[static_cast<size_t>(n)];
    }
  }
}

bool DomainView::available(int s, int node, int t) const {
  if (s >= t || !is_domain_round(s) || !contains(node)) return false;
  const int d = dist(origin_of(s), node);
  return d <= horizon_ && d <= t - s;
}

std::vector<int> DomainView::missing_list(int node, int t) const {
  // A domain gradient can only be missing (yet still deliverable) while it
  // is in transit, i.e. for fewer than min(diameter, horizon) rounds.
  std::vector<int> out;
  const int window = std::min(diameter(), horizon_);
  auto it = std::lower_bound(rounds_.begin(), rounds_.end(), t);
  while (it != rounds_.begin()) {
    const int s = *(--it);
    if (t - s >= window) break;
    const int d = dist(origin_of(s), node);
    if (d > t - s && d <= horizon_) out.push_back(s);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

int DomainView::avail_count(int node, int t) const {
  const auto before =
      static_cast<int>(std::lower_bound(rounds_.begin(), rounds_.end(), t) - rounds_.begin());
  int undelivered = 0;
  if (diameter() > horizon_) {
    if (t == last_round_ + 1) {
      undelivered = never_delivered_[static_cast<size_t>(node)];
    } else {
      for (int s : rounds_) {
        if (s >= t) break;
        if (dist(origin_of(s), node) > horizon_) ++undelivered;
      }
    }
  }
  return before - undelivered - static_cast<int>(missing_list(node, t).size());
}

SendAccountant::SendAccountant(const Graph& g, const std::vector<const DomainView*>& domains,
                               int horizon, int bits_per_gradient)
    : graph_(&g), domains_(domains), horizon_(horizon), k_(bits_per_gradient) {
  const int n = g.num_nodes();
  relay_count_.assign(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(horizon), 0));
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      std::set<int> ages;
      for (const DomainView* dom : domains_) {
        if (!dom->contains(u) || !dom->contains(v)) continue;
        const int d = dom->dist(u, v);
        // Relays happen at age d; forwarding a message at age >= horizon is
        // pointless (it would arrive too old to enter any S_n) and dropped.
        if (d >= 1 && d < horizon_) ages.insert(d);
      }
      for (int d : ages) ++relay_count_[static_cast<size_t>(u)][static_cast<size_t>(d)];
    }
  }
}

void SendAccountant::note_round(int t, int origin) {
  if (static_cast<int>(origin_by_round_.size()) <= t) origin_by_round_.resize(static_cast<size_t>(t) + 1, -1);
  origin_by_round_[static_cast<size_t>(t)] = origin;
  long long relays = 0;
  for (int age = 1; age < horizon_ && age < t; ++age) {
    const int src = origin_by_round_[static_cast<size_t>(t - age)];
    if (src >= 0) relays += relay_count_[static_cast<size_t>(src)][static_cast<size_t>(age)];
  }
  const long long bits = static_cast<long long>(k_) * (relays + 1);
  if (static_cast<int>(bits_by_round_.size()) <= t) bits_by_round_.resize(static_cast<size_t>(t) + 1, 0);
  bits_by_round_[static_cast<size_t>(t)] = bits;
  bits_total_ += bits;
}

int SendAccountant::relays_at(int node, int t) const {
  int count = 0;
  for (int age = 1; age < horizon_ && age < t; ++age) {
    const int src = origin_by_round_[static_cast<size_t>(t - age)];
    if (src < 0) continue;
    for (const DomainView* dom : domains_) {
      if (dom->contains(src) && dom->contains(node) && dom->dist(src, node) == age) {
        ++count;
        break;
      }
    }
  }
  if (count > horizon_) {
    throw ProtocolError("transport: node would forward more than `horizon` payloads in one round");
  }
  return count;
}

long long SendAccountant::bits_in_round(int t) const {
  if (t < 0 || t >= static_cast<int>(bits_by_round_.size())) return 0;
  return bits_by_round_[static_cast<size_t>(t)];
}

}  // namespace doco
