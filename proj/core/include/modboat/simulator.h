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

#ifndef MODBOAT_SIMULATOR_H_
#define MODBOAT_SIMULATOR_H_

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "modboat/collision_model.h"
#include "modboat/controller.h"
#include "modboat/planar.h"
#include "modboat/potential_solver.h"
#include "modboat/structure.h"
#include "modboat/transition_solver.h"

namespace modboat {

struct RigidBodyState {
  Vec2 position;   // world, m
  double yaw = 0.0;  // unwrapped
  Vec2 velocity;   // world, m/s
  double omega = 0.0;
  double t = 0.0;
};

struct SimConfig {
  double dt = 0.01;
  PhysicalParams phys;
  double t_trans = 0.75;
  double audit_resolution = 0.01;
  // Bounded uniform disturbance per step; zero disables it.
  double force_noise = 0.0;
  double torque_noise = 0.0;
  std::uint64_t seed = 0;

  void Validate() const;
};

// Semi-implicit Euler step under a structure-frame wrench.
RigidBodyState StepDynamics(const RigidBodyState& state, const ForceVector& wrench_body,
                            const PhysicalParams& phys, double dt);

// Per-step record; `event` is empty on ordinary steps.
struct LogSample {
  RigidBodyState state;
  ForceVector command;
  double min_doc = std::numeric_limits<double>::infinity();
  std::string event;
};

struct CycleRecord {
  int index = 0;
  double t_start = 0.0;
  Vec2 v_des;
  double yaw_des = 0.0;
  ForceVector f_des;
  CycleSolution solution;
  std::vector<WaveformParams> executed;
  std::optional<TransitionPlan> transition;
  // "ok", "fallback" (no collision-free solve, zero thrust) or "hold"
  // (no transition, the structure coasts with motors parked).
  std::string status = "ok";
  double audit_min_doc = std::numeric_limits<double>::infinity();
  int audit_violations = 0;
};

struct TrajectoryLog {
  std::vector<LogSample> samples;
  std::vector<CycleRecord> cycles;
};

struct AuditReport {
  double min_doc = std::numeric_limits<double>::infinity();
  int violations = 0;
  std::optional<double> first_violation;

  void Merge(const AuditReport& other);
};

// Tail angle of every module at time t.
using MotorTrack = std::function<std::vector<double>(double t)>;

// Samples [t0, t1] every `resolution` (both ends included) and checks every
// docked pair with the exact tail geometry. min_doc is the signed phase-space
// distance of the pose to the collision region boundary.
AuditReport AuditCollisions(const MotorTrack& track, double t0, double t1,
                            const Structure& structure, const CollisionModel& model,
                            double resolution);

struct SetpointLeg {
  Vec2 velocity;  // world, m/s
  double yaw = 0.0;
  double duration = 0.0;
};

struct ExperimentSpec {
  std::string name;
  std::vector<SetpointLeg> legs;
  double initial_yaw = 1.5707963267948966;

  double Duration() const;
  // Leg active at time t (the last leg past the end).
  int LegAt(double t) const;
};

// test1 .. test4. Throws ConfigError for other names.
ExperimentSpec PresetExperiment(std::string_view name);

struct ExperimentSettings {
  SimConfig sim;
  ControllerConfig control;  // interval is overwritten with T + t_trans
  SolverConfig solver;
  TransitionConfig transition;  // t_trans is taken from sim
};

class Simulator {
 public:
  Simulator(const Structure& structure, const CollisionModel& model,
            const ExperimentSettings& settings);

  TrajectoryLog Run(const ExperimentSpec& spec);

 private:
  // Integrates `steps` steps under a constant body wrench while motors follow
  // `track` (time measured from the phase start).
  AuditReport Advance(int steps, const ForceVector& wrench, const ForceVector& command,
                      const MotorTrack& track, std::string event, TrajectoryLog& log);
  ForceVector Disturbance();

  const Structure& structure_;
  const CollisionModel& model_;
  ExperimentSettings settings_;
  RigidBodyState state_;
  std::int64_t step_ = 0;
  std::mt19937_64 rng_;
};

TrajectoryLog RunExperiment(const Structure& structure, const ExperimentSpec& spec,
                            const ExperimentSettings& settings, const CollisionModel& model);

}  // namespace modboat

#endif  // MODBOAT_SIMULATOR_H_
