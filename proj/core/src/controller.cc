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

#include "modboat/controller.h"

#include <cmath>

#include "modboat/angles.h"
#include "modboat/errors.h"

namespace modboat {
namespace {

double SignedSquare(double v, bool literal) { return literal ? v * v : v * std::abs(v); }

}  // namespace

void ControlGains::Validate() const {
  if (kp_yaw < 0.0 || kd_yaw < 0.0 || kp_vel < 0.0 || kd_vel < 0.0) {
    throw ConfigError("controller gains must be non-negative");
  }
  if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("gamma must lie in (0, 1)");
}

void PhysicalParams::Validate() const {
  if (!(mass > 0.0 && inertia > 0.0 && lin_drag > 0.0 && rot_drag > 0.0 && period > 0.0)) {
    throw ConfigError("physical parameters must be positive");
  }
}

double YawWrench(double theta_des, double theta_obs, double omega_obs,
                 const ControllerConfig& cfg, ControlState& state) {
  const double e = WrapError(theta_des - (theta_obs + omega_obs * cfg.phys.period));
  const double de =
      state.has_yaw_history ? WrapError(e - state.prev_yaw_error) / cfg.interval : 0.0;
  state.prev_yaw_error = e;
  state.has_yaw_history = true;
  const double alpha = cfg.gains.kp_yaw * e + cfg.gains.kd_yaw * de;
  return cfg.phys.inertia * alpha + cfg.phys.rot_drag * std::abs(omega_obs) * omega_obs;
}

Vec2 VelocityCommand(const Vec2& v_des, const Vec2& v_obs, const ControllerConfig& cfg,
                     ControlState& state) {
  const Vec2 e = v_des - v_obs;
  const Vec2 de =
      state.has_vel_history ? (1.0 / cfg.interval) * (e - state.prev_vel_error) : Vec2{};
  const Vec2 a = cfg.gains.kp_vel * e + cfg.gains.kd_vel * de;
  const double decay = std::pow(cfg.gains.gamma, state.n - 1);
  const Vec2 v_c = v_des + cfg.phys.period * (decay * state.accel_sum + a);
  state.accel_sum += a;
  state.prev_vel_error = e;
  state.has_vel_history = true;
  ++state.n;
  return v_c;
}

Vec2 PlanarWrench(const Vec2& v_c, double theta_obs, double lin_drag, bool literal_square) {
  const Vec2 q{SignedSquare(v_c.x, literal_square), SignedSquare(v_c.y, literal_square)};
  return lin_drag * WorldToBody(q, theta_obs);
}

Vec2 WorldToBody(const Vec2& world, double theta) {
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  return {s * world.x + c * world.y, -c * world.x + s * world.y};
}

Vec2 BodyToWorld(const Vec2& body, double theta) {
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  return {s * body.x - c * body.y, c * body.x + s * body.y};
}

ForceVector ControlStep(const Vec2& v_des, double theta_des, const Vec2& v_obs,
                        double theta_obs, double omega_obs, const ControllerConfig& cfg,
                        ControlState& state) {
  const double tau = YawWrench(theta_des, theta_obs, omega_obs, cfg, state);
  const Vec2 v_c = VelocityCommand(v_des, v_obs, cfg, state);
  const Vec2 f = PlanarWrench(v_c, theta_obs, cfg.phys.lin_drag, cfg.literal_square);
  return ComposeWrench(f.x, f.y, tau);
}

}  // namespace modboat
