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

#ifndef MODBOAT_HARNESS_RUN_CONFIG_H_
#define MODBOAT_HARNESS_RUN_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "modboat/controller.h"
#include "modboat/geometry.h"
#include "modboat/potential_solver.h"
#include "modboat/simulator.h"
#include "modboat/structure.h"
#include "modboat/transition_solver.h"

namespace modboat::harness {

// Everything a command needs. Defaults match configs/reference.json.
struct RunConfig {
  std::vector<std::string> layout = {"XXX"};
  double module_spacing = 0.12;  // m
  ModuleGeometry geometry;
  double table_resolution = 0.1;
  std::filesystem::path table_dir = "tables";
  SolverConfig solver;
  TransitionConfig transition;  // margin follows solver.margin
  ControlGains gains;
  bool literal_square = false;
  SimConfig sim;
  ExperimentSpec experiment = PresetExperiment("test1");
  int trials = 1000;
  std::vector<int> sides = {2, 3, 4, 5};
  std::filesystem::path out_dir = "out";
  std::uint64_t seed = 1;

  Structure MakeStructure() const;
  ExperimentSettings MakeSettings() const;
  // Throws ConfigError on any inconsistent field.
  void Validate() const;
};

// Reads a JSON config; absent keys keep their defaults, unknown keys are
// rejected. Throws ConfigError with the offending key or the file path.
RunConfig LoadRunConfig(const std::filesystem::path& path);
RunConfig ParseRunConfig(const std::string& json_text);
std::string RunConfigJson(const RunConfig& cfg);

}  // namespace modboat::harness

#endif  // MODBOAT_HARNESS_RUN_CONFIG_H_
