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

#include <string>

#include <CLI11.hpp>

#include "doco/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"doco: seed-reproducible simulator for distributed online convex optimization "
               "with bit-limited gradient forwarding"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string sweep;
  int seeds = 1;

  auto* run = app.add_subcommand("run", "execute seeded runs and write traces + summaries");
  run->add_option("--config", config_path, "experiment config (JSON)")->required();
  run->add_option("--seeds", seeds, "number of seeded runs (master seeds seed, seed+1, ...)");
  run->add_option("--out", out_dir, "output directory (overrides config and DOCO_OUT_DIR)");
  run->add_option("--sweep", sweep, "sweep one parameter: <dotted.path>=<v1,v2,...>");

  auto* verify = app.add_subcommand("verify", "run every invariant suite against a fresh trace");
  verify->add_option("--config", config_path, "experiment config (JSON)")->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return doco::run_command(config_path, seeds, out_dir, sweep);
  return doco::verify_command(config_path);
}
