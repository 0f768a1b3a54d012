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

#include "doco/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "doco/errors.hpp"

namespace doco {

using nlohmann::json;

namespace {

// Graph edges accept either an array of pairs or an edge-list text block
// with one "u v" pair per line.
std::vector<std::pair<int, int>> parse_edges(const json& j) {
  std::vector<std::pair<int, int>> edges;
  if (j.is_string()) {
    std::istringstream in(j.get<std::string>());
    std::string line;
    while (std::getline(in, line)) {
      std::istringstream row(line);
      int u, v;
      if (row >> u >> v) edges.emplace_back(u, v);
    }
  } else if (j.is_array()) {
    for (const auto& e : j) {
      if (!e.is_array() || e.size() != 2) throw ConfigError("graph.edges entries must be pairs");
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
  } else {
    throw ConfigError("graph.edges must be an array of pairs or an edge-list text block");
  }
  return edges;
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key) || j[key].is_null()) return fallback;
  return j[key].get<T>();
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  ExperimentConfig cfg;
  try {
    if (j.contains("graph")) {
      const auto& g = j["graph"];
      cfg.graph.kind = get_or<std::string>(g, "kind", "path");
      cfg.graph.nodes = get_or<int>(g, "nodes", 2);
      cfg.graph.cluster_leaves = get_or<int>(g, "cluster_leaves", 8);
      cfg.graph.connector_length = get_or<int>(g, "connector_length", 1);
      if (g.contains("edges")) cfg.graph.edges = parse_edges(g["edges"]);
    }
    if (j.contains("scenario")) {
      const auto& s = j["scenario"];
      cfg.scenario.kind = get_or<std::string>(s, "kind", "sign_sequence");
      cfg.scenario.T = get_or<int>(s, "T", 100);
      cfg.scenario.directions = get_or<std::string>(s, "directions", "opposite");
      cfg.scenario.sign_bias = get_or<double>(s, "sign_bias", 0.0);
      cfg.scenario.noise = get_or<double>(s, "noise", 0.0);
      cfg.scenario.comparator_norm = get_or<double>(s, "comparator_norm", 1.0);
      if (s.contains("direction")) cfg.scenario.direction = s["direction"].get<std::vector<double>>();
    }
    if (j.contains("encoder")) {
      const auto& e = j["encoder"];
      cfg.encoder.kind = get_or<std::string>(e, "kind", "deterministic_grid");
      cfg.encoder.precision = get_or<int>(e, "precision", -1);
    }
    if (j.contains("learner")) {
      const auto& l = j["learner"];
      cfg.learner.kind = get_or<std::string>(l, "kind", "comparator_adaptive");
      cfg.learner.nu_total = get_or<double>(l, "nu_total", 1.0);
      cfg.learner.c = get_or<double>(l, "c", 1.0);
      cfg.learner.ogd_eta = get_or<double>(l, "ogd_eta", 0.1);
      cfg.learner.a_scale = get_or<double>(l, "a_scale", 1.0);
      if (l.contains("epsilon_override") && !l["epsilon_override"].is_null()) {
        cfg.learner.epsilon_override = l["epsilon_override"].get<double>();
      }
      if (l.contains("ghat_override") && !l["ghat_override"].is_null()) {
        cfg.learner.ghat_override = l["ghat_override"].get<double>();
      }
    }
    if (j.contains("collection")) {
      const auto& c = j["collection"];
      cfg.collection.kind = get_or<std::string>(c, "kind", "single");
      cfg.collection.mode = get_or<std::string>(c, "mode", "all");
      if (c.contains("node_sets")) {
        cfg.collection.node_sets = c["node_sets"].get<std::vector<std::vector<int>>>();
      }
    }
    cfg.dim = get_or<int>(j, "dim", 1);
    cfg.grad_bound = get_or<double>(j, "grad_bound", 1.0);
    cfg.bits_per_round = get_or<long long>(j, "bits_per_round", 64);
    if (j.contains("comparators")) {
      cfg.comparators = j["comparators"].get<std::vector<std::vector<double>>>();
    }
    cfg.emit_potential = get_or<bool>(j, "emit_potential", false);
    cfg.seed = get_or<uint64_t>(j, "seed", 1);
    cfg.out_dir = get_or<std::string>(j, "out_dir", "out");
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: malformed field: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

std::string ExperimentConfig::to_json_text() const {
  json j;
  j["graph"]["kind"] = graph.kind;
  if (graph.kind == "path") j["graph"]["nodes"] = graph.nodes;
  if (graph.kind == "two_cluster") {
    j["graph"]["cluster_leaves"] = graph.cluster_leaves;
    j["graph"]["connector_length"] = graph.connector_length;
  }
  if (graph.kind == "edge_list") {
    j["graph"]["nodes"] = graph.nodes;
    json edges = json::array();
    for (const auto& [u, v] : graph.edges) edges.push_back({u, v});
    j["graph"]["edges"] = edges;
  }
  j["scenario"]["kind"] = scenario.kind;
  j["scenario"]["T"] = scenario.T;
  j["scenario"]["directions"] = scenario.directions;
  j["scenario"]["sign_bias"] = scenario.sign_bias;
  j["scenario"]["noise"] = scenario.noise;
  j["scenario"]["comparator_norm"] = scenario.comparator_norm;
  if (!scenario.direction.empty()) j["scenario"]["direction"] = scenario.direction;
  j["encoder"]["kind"] = encoder.kind;
  j["encoder"]["precision"] = encoder.precision;
  j["learner"]["kind"] = learner.kind;
  j["learner"]["nu_total"] = learner.nu_total;
  j["learner"]["c"] = learner.c;
  j["learner"]["ogd_eta"] = learner.ogd_eta;
  j["learner"]["a_scale"] = learner.a_scale;
  if (learner.epsilon_override) j["learner"]["epsilon_override"] = *learner.epsilon_override;
  if (learner.ghat_override) j["learner"]["ghat_override"] = *learner.ghat_override;
  j["collection"]["kind"] = collection.kind;
  if (collection.kind == "balls") j["collection"]["mode"] = collection.mode;
  if (collection.kind == "explicit") j["collection"]["node_sets"] = collection.node_sets;
  j["dim"] = dim;
  j["grad_bound"] = grad_bound;
  j["bits_per_round"] = bits_per_round;
  j["comparators"] = comparators;
  j["emit_potential"] = emit_potential;
  j["seed"] = seed;
  j["out_dir"] = out_dir;
  return j.dump(2);
}

std::string ExperimentConfig::hash() const {
  uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : to_json_text()) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void ExperimentConfig::validate() const {
  if (dim < 1) throw ConfigError("config: dim must be >= 1");
  if (grad_bound <= 0.0) throw ConfigError("config: grad_bound must be > 0");
  if (scenario.T < 0) throw ConfigError("config: scenario.T must be >= 0");
  if (bits_per_round < 0) throw ConfigError("config: bits_per_round must be >= 0");

  const std::set<std::string> graph_kinds{"path", "two_cluster", "edge_list"};
  if (!graph_kinds.count(graph.kind)) throw ConfigError("config: unknown graph.kind " + graph.kind);
  const std::set<std::string> scen_kinds{"two_cluster", "worst_delay", "encoding_attack",
                                         "sign_sequence"};
  if (!scen_kinds.count(scenario.kind)) {
    throw ConfigError("config: unknown scenario.kind " + scenario.kind);
  }
  const std::set<std::string> enc_kinds{"deterministic_grid", "sparsified_quantization", "none"};
  if (!enc_kinds.count(encoder.kind)) throw ConfigError("config: unknown encoder.kind " + encoder.kind);
  const std::set<std::string> learner_kinds{"comparator_adaptive", "ogd"};
  if (!learner_kinds.count(learner.kind)) {
    throw ConfigError("config: unknown learner.kind " + learner.kind);
  }
  const std::set<std::string> coll_kinds{"single", "two_cluster_stars", "balls", "explicit"};
  if (!coll_kinds.count(collection.kind)) {
    throw ConfigError("config: unknown collection.kind " + collection.kind);
  }
  if (collection.kind == "two_cluster_stars" && graph.kind != "two_cluster") {
    throw ConfigError("config: collection two_cluster_stars needs graph.kind two_cluster");
  }
  if (collection.kind == "explicit" && collection.node_sets.empty()) {
    throw ConfigError("config: explicit collection needs node_sets");
  }
  if (learner.kind == "ogd" && collection.kind != "single") {
    throw ConfigError("config: the OGD baseline only runs as a single full-graph learner");
  }
  if (scenario.kind == "two_cluster" && graph.kind != "two_cluster") {
    throw ConfigError("config: two_cluster scenario needs graph.kind two_cluster");
  }
  if (learner.nu_total < 0.0) throw ConfigError("config: learner.nu_total must be >= 0");
  if (learner.a_scale <= 0.0) throw ConfigError("config: learner.a_scale must be > 0");
  for (const auto& u : comparators) {
    if (static_cast<int>(u.size()) != dim) {
      throw ConfigError("config: comparator dimension mismatch (expected dim=" +
                        std::to_string(dim) + ")");
    }
  }
  if (!scenario.direction.empty() && static_cast<int>(scenario.direction.size()) != dim) {
    throw ConfigError("config: scenario.direction dimension mismatch");
  }
}

}  // namespace doco
