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
#include <random>

#include <gtest/gtest.h>

#include "modboat/angles.h"
#include "modboat/errors.h"
#include "test_support.h"

namespace modboat {
namespace {

using ::modboat::testing::Uniform;

ControllerConfig TestConfig() {
  ControllerConfig cfg;
  cfg.gains.kp_yaw = 1.0;
  cfg.gains.kd_yaw = 0.0;
  cfg.gains.kp_vel = 1.0;
  cfg.gains.kd_vel = 0.0;
  return cfg;
}

TEST(YawWrenchTest, OnTargetIsZero) {
  ControlState state;
  EXPECT_EQ(YawWrench(0.7, 0.7, 0.0, TestConfig(), state), 0.0);
}

TEST(YawWrenchTest, QuarterTurnFromRest) {
  ControlState state;
  EXPECT_NEAR(YawWrench(kPi / 2, 0.0, 0.0, TestConfig(), state), 0.02 * kPi / 2, 1e-15);
  EXPECT_NEAR(0.02 * kPi / 2, 0.0314, 1e-4);
}

TEST(YawWrenchTest, OnTrackTurnIsPureFeedForward) {
  const ControllerConfig cfg = TestConfig();
  const double omega = 0.2;
  ControlState state;
  const double tau = YawWrench(0.4 + omega * cfg.phys.period, 0.4, omega, cfg, state);
  EXPECT_NEAR(tau, cfg.phys.rot_drag * omega * omega, 1e-15);
  ControlState back;
  EXPECT_NEAR(YawWrench(0.4 - omega * cfg.phys.period, 0.4, -omega, cfg, back),
              -cfg.phys.rot_drag * omega * omega, 1e-15);
}

TEST(YawWrenchTest, DerivativeUsesTheDecisionInterval) {
  ControllerConfig cfg = TestConfig();
  cfg.gains.kd_yaw = 0.5;
  ControlState state;
  YawWrench(0.3, 0.0, 0.0, cfg, state);
  const double tau = YawWrench(0.1, 0.0, 0.0, cfg, state);
  const double de = (0.1 - 0.3) / cfg.interval;
  EXPECT_NEAR(tau, cfg.phys.inertia * (0.1 + 0.5 * de), 1e-15);
}

TEST(YawWrenchTest, InvariantUnderFullTurns) {
  std::mt19937_64 rng(31);
  const ControllerConfig cfg;
  for (int k = 0; k < 1000; ++k) {
    const double des = Uniform(rng, -kPi, kPi);
    const double obs = Uniform(rng, -kPi, kPi);
    const double omega = Uniform(rng, -1.0, 1.0);
    ControlState s1;
    ControlState s2;
    ControlState s3;
    const double t = YawWrench(des, obs, omega, cfg, s1);
    EXPECT_NEAR(YawWrench(des + kTwoPi, obs, omega, cfg, s2), t, 1e-12);
    EXPECT_NEAR(YawWrench(des, obs - 3 * kTwoPi, omega, cfg, s3), t, 1e-12);
  }
}

TEST(VelocityCommandTest, FirstCycle) {
  const ControllerConfig cfg = TestConfig();
  ControlState state;
  const Vec2 v = VelocityCommand({0.03, -0.01}, {0.03, -0.01}, cfg, state);
  EXPECT_EQ(v, (Vec2{0.03, -0.01}));
  EXPECT_EQ(state.n, 2);

  ControlState fresh;
  const Vec2 w = VelocityCommand({0.05, 0.0}, {0.04, 0.0}, cfg, fresh);
  EXPECT_NEAR(w.x, 0.05 + 0.015, 1e-15);
  EXPECT_EQ(w.y, 0.0);
}

// Closed-form decay: with zero error after a single kick, the offset after
// k more cycles is gamma^k * a * T.
TEST(VelocityCommandTest, StaleSumDecaysGeometrically) {
  const ControllerConfig cfg = TestConfig();
  ControlState state;
  const Vec2 v_des{0.02, 0.01};
  VelocityCommand(v_des, {0.0, 0.01}, cfg, state);
  const double a = 0.02;
  for (int k = 1; k <= 80; ++k) {
    const Vec2 v = VelocityCommand(v_des, v_des, cfg, state);
    EXPECT_NEAR(v.x - v_des.x, std::pow(cfg.gains.gamma, k) * a * cfg.phys.period, 1e-15);
    EXPECT_NEAR(v.y, v_des.y, 1e-15);
  }
  const Vec2 last = VelocityCommand(v_des, v_des, cfg, state);
  EXPECT_LT(Norm(last - v_des), 1e-3 * a);
}

TEST(PlanarWrenchTest, Examples) {
  const Vec2 f = PlanarWrench({0.04, 0.0}, kPi / 2, 5.0);
  EXPECT_NEAR(f.x, 0.008, 1e-15);
  EXPECT_NEAR(f.y, 0.0, 1e-15);
  EXPECT_EQ(PlanarWrench({0.0, 0.0}, 0.3, 5.0), (Vec2{0.0, 0.0}));
  const Vec2 neg = PlanarWrench({-0.04, 0.0}, kPi / 2, 5.0);
  EXPECT_NEAR(neg.x, -0.008, 1e-15);
  // The literal square discards the sign.
  const Vec2 lit = PlanarWrench({-0.04, 0.0}, kPi / 2, 5.0, true);
  EXPECT_NEAR(lit.x, 0.008, 1e-15);
}

TEST(PlanarWrenchTest, OddAndAlignedWithTheCommand) {
  std::mt19937_64 rng(32);
  for (int k = 0; k < 1000; ++k) {
    const Vec2 v{Uniform(rng, -0.1, 0.1), Uniform(rng, -0.1, 0.1)};
    const double theta = Uniform(rng, -10.0, 10.0);
    const Vec2 f = PlanarWrench(v, theta, 5.0);
    const Vec2 g = PlanarWrench(-1.0 * v, theta, 5.0);
    EXPECT_NEAR(f.x, -g.x, 1e-15);
    EXPECT_NEAR(f.y, -g.y, 1e-15);
    const Vec2 world = BodyToWorld(f, theta);
    const Vec2 q{v.x * std::abs(v.x), v.y * std::abs(v.y)};
    EXPECT_NEAR(world.x, 5.0 * q.x, 1e-14);
    EXPECT_NEAR(world.y, 5.0 * q.y, 1e-14);
    EXPECT_NEAR(Norm(f), 5.0 * Norm(q), 1e-14);
  }
}

TEST(FrameTest, RoundTrip) {
  std::mt19937_64 rng(33);
  for (int k = 0; k < 1000; ++k) {
    const Vec2 p{Uniform(rng, -1, 1), Uniform(rng, -1, 1)};
    const double theta = Uniform(rng, -kPi, kPi);
    const Vec2 q = BodyToWorld(WorldToBody(p, theta), theta);
    EXPECT_NEAR(q.x, p.x, 1e-15);
    EXPECT_NEAR(q.y, p.y, 1e-15);
  }
  // At yaw pi/2 the structure frame coincides with the world frame.
  const Vec2 w = BodyToWorld({0.0, 1.0}, kPi / 2);
  EXPECT_NEAR(w.x, 0.0, 1e-15);
  EXPECT_NEAR(w.y, 1.0, 1e-15);
  // Yaw grows clockwise in the world frame: at zero yaw surge points along -x.
  const Vec2 z = BodyToWorld({0.0, 1.0}, 0.0);
  EXPECT_NEAR(z.x, -1.0, 1e-15);
  EXPECT_NEAR(z.y, 0.0, 1e-15);
}

TEST(ControlStepTest, PacksTheThreeOutputs) {
  const ControllerConfig cfg;
  ControlState a;
  ControlState b;
  const ForceVector w = ControlStep({0.03, 0.0}, 1.0, {0.01, 0.02}, 0.4, 0.1, cfg, a);
  const double tau = YawWrench(1.0, 0.4, 0.1, cfg, b);
  const Vec2 f = PlanarWrench(VelocityCommand({0.03, 0.0}, {0.01, 0.02}, cfg, b), 0.4,
                              cfg.phys.lin_drag);
  EXPECT_EQ(w, ComposeWrench(f.x, f.y, tau));
  EXPECT_EQ(ComposeWrench(0, 0, 0), ForceVector{});
  EXPECT_EQ(ComposeWrench(1, -2, 3), (ForceVector{1, -2, 3}));
}

TEST(ControlConfigTest, Validation) {
  ControlGains g;
  g.gamma = 1.0;
  EXPECT_THROW(g.Validate(), ConfigError);
  g = ControlGains{};
  g.kp_vel = -1.0;
  EXPECT_THROW(g.Validate(), ConfigError);
  PhysicalParams p;
  p.mass = 0.0;
  EXPECT_THROW(p.Validate(), ConfigError);
  EXPECT_NO_THROW(ControlGains{}.Validate());
  EXPECT_NO_THROW(PhysicalParams{}.Validate());
}

}  // namespace
}  // namespace modboat
