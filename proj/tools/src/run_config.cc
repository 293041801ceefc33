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

#include "modboat/harness/run_config.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "modboat/errors.h"

namespace modboat::harness {
namespace {

using nlohmann::json;

void CheckKeys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ConfigError("'" + where + "' must be an object");
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) {
      throw ConfigError("unknown key '" + where + "." + item.key() + "'");
    }
  }
}

template <typename T>
void Read(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

ExperimentSpec ReadExperiment(const json& j) {
  CheckKeys(j, "experiment", {"preset", "name", "initial_yaw", "legs"});
  ExperimentSpec spec;
  if (j.contains("preset")) {
    if (j.contains("legs")) throw ConfigError("experiment sets both 'preset' and 'legs'");
    spec = PresetExperiment(j.at("preset").get<std::string>());
  } else {
    spec.name = "custom";
  }
  Read(j, "name", spec.name);
  Read(j, "initial_yaw", spec.initial_yaw);
  if (j.contains("legs")) {
    for (const json& leg : j.at("legs")) {
      CheckKeys(leg, "experiment.legs[]", {"vx", "vy", "yaw", "duration"});
      SetpointLeg l;
      Read(leg, "vx", l.velocity.x);
      Read(leg, "vy", l.velocity.y);
      Read(leg, "yaw", l.yaw);
      Read(leg, "duration", l.duration);
      spec.legs.push_back(l);
    }
  }
  return spec;
}

RunConfig FromJson(const json& root) {
  RunConfig cfg;
  CheckKeys(root, "<root>",
            {"structure", "geometry", "tables", "solver", "transition", "control", "physical",
             "simulation", "experiment", "transition_stats", "output", "seed"});
  if (root.contains("structure")) {
    const json& j = root.at("structure");
    CheckKeys(j, "structure", {"layout", "spacing"});
    Read(j, "layout", cfg.layout);
    Read(j, "spacing", cfg.module_spacing);
  }
  if (root.contains("geometry")) {
    const json& j = root.at("geometry");
    CheckKeys(j, "geometry",
              {"lattice_pitch", "tail_inner", "tail_outer", "hull_radius", "tail_half_width"});
    Read(j, "lattice_pitch", cfg.geometry.lattice_pitch);
    Read(j, "tail_inner", cfg.geometry.tail_inner);
    Read(j, "tail_outer", cfg.geometry.tail_outer);
    Read(j, "hull_radius", cfg.geometry.hull_radius);
    Read(j, "tail_half_width", cfg.geometry.tail_half_width);
  }
  if (root.contains("tables")) {
    const json& j = root.at("tables");
    CheckKeys(j, "tables", {"resolution", "dir"});
    Read(j, "resolution", cfg.table_resolution);
    if (j.contains("dir")) cfg.table_dir = j.at("dir").get<std::string>();
  }
  if (root.contains("solver")) {
    const json& j = root.at("solver");
    CheckKeys(j, "solver",
              {"delta_d", "weights", "n_epochs", "n1", "n2", "n3", "margin", "repulsive_profile"});
    Read(j, "delta_d", cfg.solver.delta_d);
    Read(j, "weights", cfg.solver.weights);
    Read(j, "n_epochs", cfg.solver.n_epochs);
    Read(j, "n1", cfg.solver.n1);
    Read(j, "n2", cfg.solver.n2);
    Read(j, "n3", cfg.solver.n3);
    Read(j, "margin", cfg.solver.margin);
    if (j.contains("repulsive_profile")) {
      cfg.solver.repulsive_profile.clear();
      for (const json& step : j.at("repulsive_profile")) {
        if (!step.is_array() || step.size() != 2) {
          throw ConfigError("solver.repulsive_profile entries are [threshold, strength]");
        }
        cfg.solver.repulsive_profile.push_back({step[0].get<double>(), step[1].get<double>()});
      }
    }
  }
  if (root.contains("transition")) {
    const json& j = root.at("transition");
    CheckKeys(j, "transition", {"t_trans", "node_limit"});
    Read(j, "t_trans", cfg.sim.t_trans);
    Read(j, "node_limit", cfg.transition.node_limit);
  }
  if (root.contains("control")) {
    const json& j = root.at("control");
    CheckKeys(j, "control", {"kp_yaw", "kd_yaw", "kp_vel", "kd_vel", "gamma", "literal_square"});
    Read(j, "kp_yaw", cfg.gains.kp_yaw);
    Read(j, "kd_yaw", cfg.gains.kd_yaw);
    Read(j, "kp_vel", cfg.gains.kp_vel);
    Read(j, "kd_vel", cfg.gains.kd_vel);
    Read(j, "gamma", cfg.gains.gamma);
    Read(j, "literal_square", cfg.literal_square);
  }
  if (root.contains("physical")) {
    const json& j = root.at("physical");
    CheckKeys(j, "physical", {"mass", "inertia", "lin_drag", "rot_drag", "period"});
    Read(j, "mass", cfg.sim.phys.mass);
    Read(j, "inertia", cfg.sim.phys.inertia);
    Read(j, "lin_drag", cfg.sim.phys.lin_drag);
    Read(j, "rot_drag", cfg.sim.phys.rot_drag);
    Read(j, "period", cfg.sim.phys.period);
  }
  if (root.contains("simulation")) {
    const json& j = root.at("simulation");
    CheckKeys(j, "simulation", {"dt", "audit_resolution", "force_noise", "torque_noise"});
    Read(j, "dt", cfg.sim.dt);
    Read(j, "audit_resolution", cfg.sim.audit_resolution);
    Read(j, "force_noise", cfg.sim.force_noise);
    Read(j, "torque_noise", cfg.sim.torque_noise);
  }
  if (root.contains("experiment")) cfg.experiment = ReadExperiment(root.at("experiment"));
  if (root.contains("transition_stats")) {
    const json& j = root.at("transition_stats");
    CheckKeys(j, "transition_stats", {"trials", "sides"});
    Read(j, "trials", cfg.trials);
    Read(j, "sides", cfg.sides);
  }
  if (root.contains("output")) {
    const json& j = root.at("output");
    CheckKeys(j, "output", {"dir"});
    if (j.contains("dir")) cfg.out_dir = j.at("dir").get<std::string>();
  }
  Read(root, "seed", cfg.seed);
  return cfg;
}

}  // namespace

Structure RunConfig::MakeStructure() const { return Structure::FromLayout(layout, module_spacing); }

ExperimentSettings RunConfig::MakeSettings() const {
  ExperimentSettings s;
  s.sim = sim;
  s.sim.seed = seed;
  s.control.gains = gains;
  s.control.literal_square = literal_square;
  s.solver = solver;
  s.transition = transition;
  s.transition.margin = solver.margin;
  return s;
}

void RunConfig::Validate() const {
  geometry.Validate();
  if (!(module_spacing > 0.0)) throw ConfigError("structure.spacing must be positive");
  if (!(table_resolution > 0.0)) throw ConfigError("tables.resolution must be positive");
  solver.Validate();
  if (std::abs(solver.delta_d - table_resolution) > 1e-12) {
    throw ConfigError("solver.delta_d must equal tables.resolution");
  }
  transition.Validate();
  gains.Validate();
  sim.Validate();
  if (trials < 0) throw ConfigError("transition_stats.trials must be >= 0");
  for (int side : sides) {
    if (side < 2 || side > 5) throw ConfigError("transition_stats.sides must lie in [2, 5]");
  }
  for (const SetpointLeg& leg : experiment.legs) {
    if (!(leg.duration > 0.0)) throw ConfigError("experiment leg durations must be positive");
  }
  MakeStructure();
}

RunConfig ParseRunConfig(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
    return FromJson(root);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

RunConfig LoadRunConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return ParseRunConfig(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string RunConfigJson(const RunConfig& cfg) {
  json profile = json::array();
  for (const RepulsiveStep& s : cfg.solver.repulsive_profile) {
    profile.push_back(json::array({s.below, s.strength}));
  }
  json legs = json::array();
  for (const SetpointLeg& l : cfg.experiment.legs) {
    legs.push_back({{"vx", l.velocity.x}, {"vy", l.velocity.y}, {"yaw", l.yaw},
                    {"duration", l.duration}});
  }
  json j = {
      {"structure", {{"layout", cfg.layout}, {"spacing", cfg.module_spacing}}},
      {"geometry",
       {{"lattice_pitch", cfg.geometry.lattice_pitch},
        {"tail_inner", cfg.geometry.tail_inner},
        {"tail_outer", cfg.geometry.tail_outer},
        {"hull_radius", cfg.geometry.hull_radius},
        {"tail_half_width", cfg.geometry.tail_half_width}}},
      {"tables", {{"resolution", cfg.table_resolution}, {"dir", cfg.table_dir.string()}}},
      {"solver",
       {{"delta_d", cfg.solver.delta_d},
        {"weights", cfg.solver.weights},
        {"n_epochs", cfg.solver.n_epochs},
        {"n1", cfg.solver.n1},
        {"n2", cfg.solver.n2},
        {"n3", cfg.solver.n3},
        {"margin", cfg.solver.margin},
        {"repulsive_profile", profile}}},
      {"transition", {{"t_trans", cfg.sim.t_trans}, {"node_limit", cfg.transition.node_limit}}},
      {"control",
       {{"kp_yaw", cfg.gains.kp_yaw},
        {"kd_yaw", cfg.gains.kd_yaw},
        {"kp_vel", cfg.gains.kp_vel},
        {"kd_vel", cfg.gains.kd_vel},
        {"gamma", cfg.gains.gamma},
        {"literal_square", cfg.literal_square}}},
      {"physical",
       {{"mass", cfg.sim.phys.mass},
        {"inertia", cfg.sim.phys.inertia},
        {"lin_drag", cfg.sim.phys.lin_drag},
        {"rot_drag", cfg.sim.phys.rot_drag},
        {"period", cfg.sim.phys.period}}},
      {"simulation",
       {{"dt", cfg.sim.dt},
        {"audit_resolution", cfg.sim.audit_resolution},
        {"force_noise", cfg.sim.force_noise},
        {"torque_noise", cfg.sim.torque_noise}}},
      {"experiment",
       {{"name", cfg.experiment.name}, {"initial_yaw", cfg.experiment.initial_yaw}, {"legs", legs}}},
      {"transition_stats", {{"trials", cfg.trials}, {"sides", cfg.sides}}},
      {"output", {{"dir", cfg.out_dir.string()}}},
      {"seed", cfg.seed}};
  return j.dump(2);
}

}  // namespace modboat::harness
