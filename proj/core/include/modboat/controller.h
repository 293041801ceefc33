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

#ifndef MODBOAT_CONTROLLER_H_
#define MODBOAT_CONTROLLER_H_

#include "modboat/planar.h"
#include "modboat/potential_solver.h"

namespace modboat {

struct ControlGains {
  double kp_yaw = 1.0;
  double kd_yaw = 0.1;
  double kp_vel = 1.0;
  double kd_vel = 0.0;
  double gamma = 0.9;

  void Validate() const;
};

// Placeholder values for the three-module parallel structure; the controller
// and the simulator read the same instance.
struct PhysicalParams {
  double mass = 2.4;       // kg
  double inertia = 0.02;   // kg m^2
  double lin_drag = 5.0;   // N s^2 / m^2
  double rot_drag = 0.05;  // N m s^2
  double period = 1.5;     // s

  void Validate() const;
};

struct ControlState {
  Vec2 accel_sum;  // sum of past artificial accelerations
  int n = 1;       // index of the cycle being commanded
  bool has_yaw_history = false;
  double prev_yaw_error = 0.0;
  bool has_vel_history = false;
  Vec2 prev_vel_error;
};

struct ControllerConfig {
  ControlGains gains;
  PhysicalParams phys;
  // Time between decisions, T + t_trans.
  double interval = 2.25;
  // Square the commanded velocity componentwise instead of v |v|.
  bool literal_square = false;
};

// Yaw torque with end-of-cycle yaw prediction and drag feed-forward.
double YawWrench(double theta_des, double theta_obs, double omega_obs,
                 const ControllerConfig& cfg, ControlState& state);

// Commanded world velocity with the diminishing acceleration sum. Absorbs
// the new acceleration into `state` and advances its cycle index.
Vec2 VelocityCommand(const Vec2& v_des, const Vec2& v_obs, const ControllerConfig& cfg,
                     ControlState& state);

// Structure-frame force for a world-frame velocity command.
Vec2 PlanarWrench(const Vec2& v_c, double theta_obs, double lin_drag,
                  bool literal_square = false);

// Structure frame to world frame; inverse of the map inside PlanarWrench.
Vec2 BodyToWorld(const Vec2& body, double theta);
Vec2 WorldToBody(const Vec2& world, double theta);

inline ForceVector ComposeWrench(double fx, double fy, double tau) { return {fx, fy, tau}; }

// One decision: yaw torque and planar force from the current observation.
ForceVector ControlStep(const Vec2& v_des, double theta_des, const Vec2& v_obs,
                        double theta_obs, double omega_obs, const ControllerConfig& cfg,
                        ControlState& state);

}  // namespace modboat

#endif  // MODBOAT_CONTROLLER_H_
