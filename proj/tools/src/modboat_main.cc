// Copyright 2026 The Modboat Holonomic Authors
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

// Command-line entry point: modboat <build-tables|solve|transition-stats|experiment>.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "modboat/errors.h"
#include "modboat/harness/commands.h"
#include "modboat/harness/run_config.h"
#include "modboat/simulator.h"

namespace {

namespace h = modboat::harness;

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> preset;
  std::optional<int> trials;
  std::vector<int> sides;
  double fx = 0.0;
  double fy = 0.0;
  double tau = 0.0;
};

h::RunConfig Resolve(const Flags& f, bool out_is_table_dir) {
  h::RunConfig cfg = f.config.empty() ? h::RunConfig{} : h::LoadRunConfig(f.config);
  if (f.seed) cfg.seed = *f.seed;
  if (f.out) (out_is_table_dir ? cfg.table_dir : cfg.out_dir) = *f.out;
  if (f.preset) cfg.experiment = modboat::PresetExperiment(*f.preset);
  if (f.trials) cfg.trials = *f.trials;
  if (!f.sides.empty()) cfg.sides = f.sides;
  cfg.Validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Holonomic control of docked swimming-module lattices"};
  app.fallthrough();
  app.require_subcommand(1);

  Flags f;
  app.add_option("--config", f.config, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--seed", f.seed, "Master RNG seed");
  app.add_option("--out", f.out, "Output directory (table directory for build-tables)");

  auto* build = app.add_subcommand("build-tables", "Precompute the DoC table cache");
  auto* solve = app.add_subcommand("solve", "Solve one swim cycle for a desired wrench");
  solve->add_option("--fx", f.fx, "Desired sway force (N)");
  solve->add_option("--fy", f.fy, "Desired surge force (N)");
  solve->add_option("--tau", f.tau, "Desired torque (N m)");
  auto* stats = app.add_subcommand("transition-stats", "Monte-Carlo transition success rate");
  stats->add_option("--trials", f.trials, "Trials per side");
  stats->add_option("--side", f.sides, "Square side length(s), 2 to 5");
  auto* experiment = app.add_subcommand("experiment", "Run a closed-loop simulation");
  experiment->add_option("--preset", f.preset, "test1, test2, test3 or test4");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? h::kExitOk : h::kExitConfigError;
  }

  try {
    if (*build) return h::CmdBuildTables(Resolve(f, true), std::cout);
    if (*solve) return h::CmdSolve(Resolve(f, false), {f.fx, f.fy, f.tau}, std::cout);
    if (*stats) return h::CmdTransitionStats(Resolve(f, false), std::cout);
    if (*experiment) return h::CmdExperiment(Resolve(f, false), std::cout);
  } catch (const modboat::NoValidSolutionError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return h::kExitSolverFailure;
  } catch (const modboat::NoTransitionError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return h::kExitSolverFailure;
  } catch (const modboat::NumericalBlowupError& e) {
    std::cerr << "simulation failure: " << e.what() << '\n';
    return h::kExitSolverFailure;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return h::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return h::kExitConfigError;
  }
  return h::kExitOk;
}
