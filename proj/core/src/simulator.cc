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

#include "modboat/simulator.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "modboat/angles.h"
#include "modboat/errors.h"

namespace modboat {
namespace {

constexpr double kMaxSpeed = 1e3;
constexpr double kMaxYawRate = 1e4;

double PointDoc(const CollisionRegion& region, const PhasePoint& p) {
  const double d = region.BoundaryDistance(p);
  return region.Contains(p) ? -d : d;
}

// Uniform double in [-1, 1) from the top 53 bits.
double Symmetric(std::mt19937_64& rng) {
  return 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0;
}

}  // namespace

void SimConfig::Validate() const {
  phys.Validate();
  if (!(dt > 0.0) || dt > phys.period / 100.0 + 1e-12) {
    throw ConfigError("dt must be positive and at most T/100");
  }
  if (!(t_trans > 0.0)) throw ConfigError("t_trans must be positive");
  if (!(audit_resolution > 0.0) || audit_resolution > dt + 1e-12) {
    throw ConfigError("audit resolution must be positive and at most dt");
  }
  if (force_noise < 0.0 || torque_noise < 0.0) throw ConfigError("noise must be >= 0");
}

RigidBodyState StepDynamics(const RigidBodyState& state, const ForceVector& wrench_body,
                            const PhysicalParams& phys, double dt) {
  RigidBodyState next = state;
  const Vec2 f = BodyToWorld({wrench_body.fx, wrench_body.fy}, state.yaw);
  const Vec2 drag{phys.lin_drag * state.velocity.x * std::abs(state.velocity.x),
                  phys.lin_drag * state.velocity.y * std::abs(state.velocity.y)};
  next.velocity = state.velocity + (dt / phys.mass) * (f - drag);
  next.omega = state.omega + dt / phys.inertia *
                                 (wrench_body.tau - phys.rot_drag * std::abs(state.omega) * state.omega);
  next.position = state.position + dt * next.velocity;
  next.yaw = state.yaw + dt * next.omega;
  next.t = state.t + dt;
  const bool finite = std::isfinite(next.position.x) && std::isfinite(next.position.y) &&
                      std::isfinite(next.yaw) && std::isfinite(next.omega);
  if (!finite || Norm(next.velocity) > kMaxSpeed || std::abs(next.omega) > kMaxYawRate) {
    throw NumericalBlowupError("rigid-body state left sanity bounds at t = " +
                               std::to_string(next.t));
  }
  return next;
}

void AuditReport::Merge(const AuditReport& other) {
  min_doc = std::min(min_doc, other.min_doc);
  violations += other.violations;
  if (!first_violation && other.first_violation) first_violation = other.first_violation;
}

AuditReport AuditCollisions(const MotorTrack& track, double t0, double t1,
                            const Structure& structure, const CollisionModel& model,
                            double resolution) {
  AuditReport report;
  const auto samples = static_cast<long>(std::ceil((t1 - t0) / resolution - 1e-9));
  for (long k = 0; k <= samples; ++k) {
    const double t = std::min(t0 + k * resolution, t1);
    const std::vector<double> phi = track(t);
    for (const DockedPair& p : structure.pairs()) {
      const PhasePoint pt{WrapToPi(phi[p.i]), WrapToPi(phi[p.j])};
      report.min_doc = std::min(report.min_doc, PointDoc(model.region(p.relation), pt));
      if (TailsCollide(phi[p.i], phi[p.j], p.relation, model.geometry())) {
        ++report.violations;
        if (!report.first_violation) report.first_violation = t;
      }
    }
  }
  return report;
}

double ExperimentSpec::Duration() const {
  double total = 0.0;
  for (const SetpointLeg& leg : legs) total += leg.duration;
  return total;
}

int ExperimentSpec::LegAt(double t) const {
  double end = 0.0;
  for (size_t k = 0; k < legs.size(); ++k) {
    end += legs[k].duration;
    if (t < end - 1e-9) return static_cast<int>(k);
  }
  return static_cast<int>(legs.size()) - 1;
}

ExperimentSpec PresetExperiment(std::string_view name) {
  constexpr double kHalfPi = 0.5 * kPi;
  ExperimentSpec spec;
  spec.name = std::string(name);
  if (name == "test1") {
    spec.legs = {{{0.04, 0.0}, kHalfPi, 90.0}};
  } else if (name == "test2") {
    spec.legs = {{{0.04, 0.0}, 0.0, 90.0}};
  } else if (name == "test3") {
    spec.legs = {{{0.03, 0.01}, kHalfPi, 90.0}};
  } else if (name == "test4") {
    spec.legs = {{{0.04, 0.0}, kHalfPi, 60.0}, {{0.0, 0.04}, kHalfPi, 60.0}};
  } else {
    throw ConfigError("unknown experiment preset '" + std::string(name) + "'");
  }
  return spec;
}

Simulator::Simulator(const Structure& structure, const CollisionModel& model,
                     const ExperimentSettings& settings)
    : structure_(structure), model_(model), settings_(settings), rng_(settings.sim.seed) {
  settings_.sim.Validate();
  settings_.control.gains.Validate();
  settings_.solver.Validate();
  settings_.control.phys = settings_.sim.phys;
  settings_.control.interval = settings_.sim.phys.period + settings_.sim.t_trans;
  settings_.transition.t_trans = settings_.sim.t_trans;
}

ForceVector Simulator::Disturbance() {
  const SimConfig& sim = settings_.sim;
  if (sim.force_noise == 0.0 && sim.torque_noise == 0.0) return {};
  const double fx = sim.force_noise * Symmetric(rng_);
  const double fy = sim.force_noise * Symmetric(rng_);
  const double tau = sim.torque_noise * Symmetric(rng_);
  return {fx, fy, tau};
}

AuditReport Simulator::Advance(int steps, const ForceVector& wrench, const ForceVector& command,
                               const MotorTrack& track, std::string event, TrajectoryLog& log) {
  const double dt = settings_.sim.dt;
  for (int k = 0; k < steps; ++k) {
    const std::vector<double> phi = track(k * dt);
    double min_doc = std::numeric_limits<double>::infinity();
    for (const DockedPair& p : structure_.pairs()) {
      const PhasePoint pt{WrapToPi(phi[p.i]), WrapToPi(phi[p.j])};
      min_doc = std::min(min_doc, PointDoc(model_.region(p.relation), pt));
    }
    log.samples.push_back({state_, command, min_doc, k == 0 ? event : std::string()});
    state_ = StepDynamics(state_, wrench + Disturbance(), settings_.sim.phys, dt);
    ++step_;
    // Re-derive time from the step count so timestamps never drift.
    state_.t = static_cast<double>(step_) * dt;
  }
  return AuditCollisions(track, 0.0, steps * dt, structure_, model_,
                         settings_.sim.audit_resolution);
}

TrajectoryLog Simulator::Run(const ExperimentSpec& spec) {
  if (spec.legs.empty()) throw ConfigError("experiment has no setpoint legs");
  const SimConfig& sim = settings_.sim;
  const int n = structure_.size();
  const auto poses = structure_.poses();
  const int cycle_steps = static_cast<int>(std::lround(sim.phys.period / sim.dt));
  const int trans_steps = static_cast<int>(std::lround(sim.t_trans / sim.dt));
  const double period = cycle_steps * sim.dt;
  const double t_trans = trans_steps * sim.dt;

  state_ = {};
  state_.yaw = spec.initial_yaw;
  step_ = 0;
  rng_.seed(sim.seed);
  ControlState control;
  TrajectoryLog log;
  std::vector<WaveformParams> executed = InitialParams(n);
  std::vector<WaveformParams> warm = executed;
  const double total = spec.Duration();

  for (int index = 0; state_.t < total - 1e-9; ++index) {
    const SetpointLeg& leg = spec.legs[spec.LegAt(state_.t)];
    CycleRecord rec;
    rec.index = index;
    rec.t_start = state_.t;
    rec.v_des = leg.velocity;
    rec.yaw_des = leg.yaw;
    rec.f_des = ControlStep(leg.velocity, leg.yaw, state_.velocity, state_.yaw, state_.omega,
                            settings_.control, control);

    std::vector<double> parked(n);
    for (int i = 0; i < n; ++i) parked[i] = CycleEndpoint(executed[i], false);
    try {
      rec.solution = SolveCycle(structure_, rec.f_des, warm, settings_.solver, model_);
    } catch (const NoValidSolutionError&) {
      rec.solution = ZeroThrustCycle(structure_, rec.f_des, parked, settings_.solver, model_);
      rec.status = "fallback";
    }

    AuditReport audit;
    try {
      rec.transition =
          SolveTransition(structure_, executed, rec.solution.params, settings_.transition, model_);
    } catch (const NoTransitionError&) {
      rec.status = "hold";
      const MotorTrack hold = [&parked](double) { return parked; };
      audit = Advance(trans_steps + cycle_steps, ForceVector{}, rec.f_des, hold, "hold", log);
      rec.executed = executed;
      rec.audit_min_doc = audit.min_doc;
      rec.audit_violations = audit.violations;
      log.cycles.push_back(std::move(rec));
      continue;
    }

    const TransitionPlan& plan = *rec.transition;
    const MotorTrack sweep = [&plan, n, t_trans](double t) {
      std::vector<double> phi(n);
      for (int i = 0; i < n; ++i) phi[i] = plan.PoseAt(i, std::clamp(t / t_trans, 0.0, 1.0));
      return phi;
    };
    audit.Merge(Advance(trans_steps, ForceVector{}, rec.f_des, sweep, "transition", log));

    const std::vector<WaveformParams> next = ApplyNegation(rec.solution.params, plan.negate_next);
    const MotorTrack swim = [&next, n, period](double t) {
      std::vector<double> phi(n);
      for (int i = 0; i < n; ++i) {
        phi[i] = next[i].phi0 + next[i].amp * std::cos(kTwoPi * t / period);
      }
      return phi;
    };
    const ForceVector thrust = TotalForce(next, poses);
    audit.Merge(Advance(cycle_steps, thrust, rec.f_des, swim,
                        rec.status == "fallback" ? "fallback" : "cycle", log));

    executed = next;
    warm = rec.solution.params;
    rec.executed = next;
    rec.audit_min_doc = audit.min_doc;
    rec.audit_violations = audit.violations;
    log.cycles.push_back(std::move(rec));
  }
  return log;
}

TrajectoryLog RunExperiment(const Structure& structure, const ExperimentSpec& spec,
                            const ExperimentSettings& settings, const CollisionModel& model) {
  Simulator sim(structure, model, settings);
  return sim.Run(spec);
}

}  // namespace modboat
