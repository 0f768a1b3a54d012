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

#include "doco/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "doco/errors.hpp"
#include "doco/stable_math.hpp"

namespace doco {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

double StackTrace::lambda_h(bool use_hhat) const {
  const auto& h = use_hhat ? h_hat : h_true;
  // gamma holds global round ids; map back to stack-local positions.
  double lam = 0.0;
  for (size_t i = 0; i < rounds.size(); ++i) {
    double missing_sum = 0.0;
    for (int gid : gamma[i]) {
      const auto it = std::lower_bound(rounds.begin(), rounds.end(), gid);
      if (it == rounds.end() || *it != gid) {
        throw ProtocolError("stack trace: gamma references an unknown stack round");
      }
      missing_sum += std::fabs(h[static_cast<size_t>(it - rounds.begin())]);
    }
    lam += h[i] * h[i] + 2.0 * std::fabs(h[i]) * missing_sum;
  }
  return lam;
}

double RunLedger::loss(int row) const { return dot(g[static_cast<size_t>(row)], w[static_cast<size_t>(row)]); }

double RunLedger::regret(const std::vector<double>& u) const {
  return regret_prefix(u, T());
}

double RunLedger::regret_prefix(const std::vector<double>& u, int rows) const {
  double r = 0.0;
  for (int i = 0; i < rows; ++i) {
    r += dot(g[static_cast<size_t>(i)], w[static_cast<size_t>(i)]) - dot(g[static_cast<size_t>(i)], u);
  }
  return r;
}

double RunLedger::regret_on(const std::vector<double>& u, const std::vector<char>& keep_node) const {
  double r = 0.0;
  for (int i = 0; i < T(); ++i) {
    if (!keep_node[static_cast<size_t>(active_node[static_cast<size_t>(i)])]) continue;
    r += dot(g[static_cast<size_t>(i)], w[static_cast<size_t>(i)]) - dot(g[static_cast<size_t>(i)], u);
  }
  return r;
}

namespace {

double lag_of(const std::vector<std::vector<double>>& grads, const std::vector<int>& rounds,
              const std::vector<std::vector<int>>& gammas) {
  double lam = 0.0;
  for (size_t i = 0; i < grads.size(); ++i) {
    const double gn = norm(grads[i]);
    double missing = 0.0;
    for (int gid : gammas[i]) {
      missing += norm(grads[static_cast<size_t>(gid - rounds.front())]);
    }
    lam += gn * gn + 2.0 * gn * missing;
  }
  return lam;
}

}  // namespace

double RunLedger::lag() const { return lag_of(g, t, gamma); }

double RunLedger::lag_hat() const { return lag_of(ghat, t, gamma); }

double scale_regret_ceiling(double nu, double eps, double ghat, int delay_bound, long long T,
                            double lambda_h, double u) {
  if (u < 0.0) throw ConfigError("regret ceiling: u must be >= 0");
  if (u == 0.0) return nu;
  if (nu <= 0.0) return std::numeric_limits<double>::infinity();
  const double D = delay_bound;
  const double Td = static_cast<double>(T);
  const double log_branch = 264.0 * ghat * D * ln_plus(312.0 * u * ghat * D / nu);
  const double sqrt_branch =
      std::sqrt(8.0 * (lambda_h + 24.0 * Td * ghat * eps + 1.0) *
                ln_plus(2036.0 * u * u * Td * D * ghat * ghat / (nu * nu)));
  return nu + 2.0 * u * Td * eps + u * std::max(log_branch, sqrt_branch);
}

BoundValue evaluate_bound(const RunLedger& ledger, TheoremBound which, double u_norm,
                          const StackTrace* stack, const std::vector<PartitionCellParams>* cells,
                          int q_size) {
  BoundValue out;
  const double G = ledger.grad_bound;
  const double d = ledger.dim;
  const double D = ledger.diameter;
  const double T = ledger.T();
  switch (which) {
    case TheoremBound::kComparatorAdaptive: {
      if (!stack) throw ConfigError("bound: missing stack metadata for the scale-learner bound");
      const bool use_hhat = stack->eps == 0.0;
      out.value = scale_regret_ceiling(stack->nu, stack->eps, stack->ghat, stack->delay_bound,
                                       static_cast<long long>(stack->rounds.size()),
                                       stack->lambda_h(use_hhat), u_norm);
      out.order_level = false;
      return out;
    }
    case TheoremBound::kDeterministicCoding: {
      if (ledger.bits_budget <= 0) throw ConfigError("bound: missing bits budget metadata");
      const double coding = T * std::exp2(-static_cast<double>(ledger.bits_budget) / (d * D)) * G;
      out.value = 1.0 + u_norm * (std::sqrt(ledger.lag()) + coding);
      out.order_level = true;
      return out;
    }
    case TheoremBound::kStochasticCoding: {
      if (ledger.bits_budget <= 0) throw ConfigError("bound: missing bits budget metadata");
      out.value =
          1.0 + u_norm * G * std::sqrt((1.0 + d * D / static_cast<double>(ledger.bits_budget)) * D * T);
      out.order_level = true;
      return out;
    }
    case TheoremBound::kPartition: {
      if (!cells) throw ConfigError("bound: missing partition cell metadata");
      if (ledger.bits_budget <= 0) throw ConfigError("bound: missing bits budget metadata");
      double total = static_cast<double>(q_size);  // |Q| nu with nu_total = 1 convention
      for (const auto& cell : *cells) {
        const double Tj = static_cast<double>(cell.rounds);
        const double log_term =
            std::log(1.0 + q_size * cell.cell_diameter * cell.u_norm * Tj * G);
        total += cell.u_norm * (std::sqrt(std::max(0.0, cell.lambda_cell) * std::max(1.0, log_term)) +
                                std::exp2(-static_cast<double>(ledger.bits_budget) /
                                          (d * ledger.horizon)) *
                                    Tj * G);
      }
      out.value = total;
      out.order_level = true;
      return out;
    }
  }
  throw ConfigError("bound: unknown theorem selector");
}

PartitionReport partition_regret_report(const RunLedger& ledger,
                                        const std::vector<int>& cell_stacks,
                                        const std::vector<std::vector<double>>& comparators) {
  if (cell_stacks.size() != comparators.size()) {
    throw ConfigError("partition report: one comparator per cell required");
  }
  // Cells must be disjoint and drawn from the ledger's stacks.
  std::set<int> node_seen;
  std::vector<char> in_cell;
  std::vector<int> cell_of_node;
  for (int j : cell_stacks) {
    if (j < 0 || j >= static_cast<int>(ledger.stacks.size())) {
      throw ConfigError("partition report: invalid partition, cell is not a member of Q");
    }
    for (int n : ledger.stacks[static_cast<size_t>(j)].domain_nodes) {
      if (!node_seen.insert(n).second) {
        throw ConfigError("partition report: invalid partition, cells overlap");
      }
    }
  }
  int max_node = 0;
  for (int n : ledger.active_node) max_node = std::max(max_node, n);
  for (int n : node_seen) max_node = std::max(max_node, n);
  cell_of_node.assign(static_cast<size_t>(max_node) + 1, -1);
  for (size_t c = 0; c < cell_stacks.size(); ++c) {
    for (int n : ledger.stacks[static_cast<size_t>(cell_stacks[c])].domain_nodes) {
      cell_of_node[static_cast<size_t>(n)] = static_cast<int>(c);
    }
  }
  for (int n : ledger.active_node) {
    if (cell_of_node[static_cast<size_t>(n)] < 0) {
      throw ConfigError("partition report: invalid partition, active node " + std::to_string(n) +
                        " is uncovered");
    }
  }

  PartitionReport report;
  report.cell_regret.assign(cell_stacks.size(), 0.0);
  report.cell_linearized.assign(cell_stacks.size(), 0.0);
  report.stack_null_regret.assign(ledger.stacks.size(), 0.0);

  // True-loss per-cell regret of the combined iterate.
  double played = 0.0;
  double comparator_term = 0.0;
  for (int row = 0; row < ledger.T(); ++row) {
    const int cell = cell_of_node[static_cast<size_t>(ledger.active_node[static_cast<size_t>(row)])];
    const double lw = ledger.loss(row);
    const double lu = dot(ledger.g[static_cast<size_t>(row)], comparators[static_cast<size_t>(cell)]);
    report.cell_regret[static_cast<size_t>(cell)] += lw - lu;
    played += lw;
    comparator_term += lu;
  }
  for (double r : report.cell_regret) report.total += r;

  // Per-stack linearized regrets from the recorded (v, z) series.
  std::vector<int> cell_of_stack(ledger.stacks.size(), -1);
  for (size_t c = 0; c < cell_stacks.size(); ++c) cell_of_stack[static_cast<size_t>(cell_stacks[c])] = static_cast<int>(c);
  double identity_rhs = 0.0;
  for (size_t j = 0; j < ledger.stacks.size(); ++j) {
    const StackTrace& st = ledger.stacks[j];
    const int cell = cell_of_stack[j];
    const std::vector<double>* u = cell >= 0 ? &comparators[static_cast<size_t>(cell)] : nullptr;
    double null_regret = 0.0;
    double lin = 0.0;
    for (size_t i = 0; i < st.rounds.size(); ++i) {
      const auto& grad = ledger.g[static_cast<size_t>(st.rounds[i] - 1)];
      double wg = 0.0;
      for (size_t kd = 0; kd < grad.size(); ++kd) wg += st.v[i] * st.z[i][kd] * grad[kd];
      null_regret += wg;
      if (u) lin += wg - dot(*u, grad);
    }
    report.stack_null_regret[j] = null_regret;
    if (cell >= 0) {
      report.cell_linearized[static_cast<size_t>(cell)] = lin;
      identity_rhs += lin;
    } else {
      identity_rhs += null_regret;
    }
  }
  report.identity_residual = (played - comparator_term) - identity_rhs;
  return report;
}

void write_trace_csv(const RunLedger& ledger, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("trace: cannot open " + path + " for writing");
  out << "# dim=" << ledger.dim << " grad_bound=" << fmt(ledger.grad_bound)
      << " diameter=" << ledger.diameter << " horizon=" << ledger.horizon
      << " k=" << ledger.bits_per_gradient << " b=" << ledger.bits_budget
      << " encoder=" << (ledger.encoder_kind.empty() ? "none" : ledger.encoder_kind) << "\n";
  for (size_t i = 0; i < ledger.comparators.size(); ++i) {
    out << "# comparator" << i << "=";
    for (size_t k = 0; k < ledger.comparators[i].size(); ++k) {
      out << (k ? ";" : "") << fmt(ledger.comparators[i][k]);
    }
    out << "\n";
  }
  out << "t,active_node,v_t,h_t";
  for (size_t i = 0; i < ledger.comparators.size(); ++i) out << ",regret_u" << i;
  out << ",lambda_cum,bits_cum,avail,gamma_size,gamma_list";
  for (int i = 0; i < ledger.dim; ++i) out << ",w_" << i;
  for (int i = 0; i < ledger.dim; ++i) out << ",g_" << i;
  for (int i = 0; i < ledger.dim; ++i) out << ",ghat_" << i;
  out << ",payload_hex";
  if (!ledger.phi_disp.empty()) out << ",phi";
  out << "\n";

  std::vector<double> regret_cum(ledger.comparators.size(), 0.0);
  double lambda_cum = 0.0;
  long long bits_cum = 0;
  for (int row = 0; row < ledger.T(); ++row) {
    const size_t r = static_cast<size_t>(row);
    for (size_t i = 0; i < ledger.comparators.size(); ++i) {
      regret_cum[i] += dot(ledger.g[r], ledger.w[r]) - dot(ledger.g[r], ledger.comparators[i]);
    }
    const double gn = norm(ledger.g[r]);
    double missing = 0.0;
    for (int gid : ledger.gamma[r]) missing += norm(ledger.g[static_cast<size_t>(gid - 1)]);
    lambda_cum += gn * gn + 2.0 * gn * missing;
    bits_cum += ledger.bits_round[r];

    out << ledger.t[r] << "," << ledger.active_node[r] << "," << fmt(ledger.v_disp[r]) << ","
        << fmt(ledger.h_disp[r]);
    for (double rc : regret_cum) out << "," << fmt(rc);
    out << "," << fmt(lambda_cum) << "," << bits_cum << "," << ledger.avail_count[r] << ","
        << ledger.gamma[r].size() << ",";
    for (size_t k = 0; k < ledger.gamma[r].size(); ++k) out << (k ? ";" : "") << ledger.gamma[r][k];
    for (double x : ledger.w[r]) out << "," << fmt(x);
    for (double x : ledger.g[r]) out << "," << fmt(x);
    for (double x : ledger.ghat[r]) out << "," << fmt(x);
    out << "," << ledger.payload_hex[r];
    if (!ledger.phi_disp.empty()) out << "," << fmt(ledger.phi_disp[r]);
    out << "\n";
  }
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

RunLedger read_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("trace: cannot open " + path);
  RunLedger ledger;
  std::string line;
  bool header_done = false;
  bool has_phi = false;
  long long prev_bits_cum = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream meta(line.substr(1));
      std::string tok;
      while (meta >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = tok.substr(0, eq);
        const std::string val = tok.substr(eq + 1);
        if (key == "dim") ledger.dim = std::stoi(val);
        else if (key == "grad_bound") ledger.grad_bound = std::stod(val);
        else if (key == "diameter") ledger.diameter = std::stoi(val);
        else if (key == "horizon") ledger.horizon = std::stoi(val);
        else if (key == "k") ledger.bits_per_gradient = std::stoi(val);
        else if (key == "b") ledger.bits_budget = std::stoll(val);
        else if (key == "encoder") ledger.encoder_kind = val == "none" ? "" : val;
        else if (key.rfind("comparator", 0) == 0) {
          std::vector<double> u;
          for (const auto& piece : split(val, ';')) u.push_back(std::stod(piece));
          ledger.comparators.push_back(std::move(u));
        }
      }
      continue;
    }
    if (!header_done) {
      has_phi = line.find(",phi") != std::string::npos;
      header_done = true;
      continue;
    }
    const auto cells = split(line, ',');
    size_t c = 0;
    ledger.t.push_back(std::stoi(cells[c++]));
    ledger.active_node.push_back(std::stoi(cells[c++]));
    ledger.v_disp.push_back(std::stod(cells[c++]));
    ledger.h_disp.push_back(std::stod(cells[c++]));
    c += ledger.comparators.size();  // cumulative regrets are derived data
    ++c;                             // lambda_cum is derived too
    const long long bits_cum = std::stoll(cells[c++]);
    ledger.bits_round.push_back(bits_cum - prev_bits_cum);
    prev_bits_cum = bits_cum;
    ledger.avail_count.push_back(std::stoi(cells[c++]));
    const int gamma_size = std::stoi(cells[c++]);
    std::vector<int> gam;
    if (gamma_size > 0) {
      for (const auto& piece : split(cells[c], ';')) gam.push_back(std::stoi(piece));
    }
    ++c;
    ledger.gamma.push_back(std::move(gam));
    auto read_vec = [&]() {
      std::vector<double> v(static_cast<size_t>(ledger.dim));
      for (int i = 0; i < ledger.dim; ++i) v[static_cast<size_t>(i)] = std::stod(cells[c++]);
      return v;
    };
    ledger.w.push_back(read_vec());
    ledger.g.push_back(read_vec());
    ledger.ghat.push_back(read_vec());
    ledger.payload_hex.push_back(cells[c++]);
    if (has_phi) ledger.phi_disp.push_back(std::stod(cells[c++]));
  }
  return ledger;
}

}  // namespace doco
