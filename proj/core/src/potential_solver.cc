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

#include "modboat/potential_solver.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "modboat/angles.h"
#include "modboat/errors.h"

namespace modboat {
namespace {

constexpr double kBandEps = 1e-9;

// Amplitude moves in grid-index space. `zero` is the index of A = 0, `band`
// the number of cells from zero to the band floor.
struct AmpGrid {
  int zero = 0;
  int band = 0;
  int max = 0;

  explicit AmpGrid(const DocTable& t)
      : zero(static_cast<int>(t.amp_axis().count / 2)),
        band(static_cast<int>(std::lround(kMinBandAmplitude / t.amp_axis().step))),
        max(static_cast<int>(t.amp_axis().count / 2)) {}

  int Step(int k, int dir) const {
    if (dir == 0) return k;
    const int rel = k - zero;
    int next = rel + dir;
    if (std::abs(next) > max) return k;
    if (next != 0 && std::abs(next) < band) next = rel == 0 ? dir * band : 0;
    return zero + next;
  }
};

int StepPhiIndex(const DocTable& t, int k, int dir) {
  if (dir == 0) return k;
  return t.PhiIndex(t.PhiAt(k) + dir * t.phi_axis().step);
}

double SnapBandAmplitude(double amp) {
  const double mag = std::min(std::abs(amp), kMaxBandAmplitude);
  if (mag < kMinBandAmplitude) {
    return mag < 0.5 * kMinBandAmplitude ? 0.0 : std::copysign(kMinBandAmplitude, amp);
  }
  return std::copysign(mag, amp);
}

std::vector<WaveformParams> ParamsOf(const DocTable& t, std::span<const GridIndex> g) {
  std::vector<WaveformParams> out(g.size());
  for (size_t i = 0; i < g.size(); ++i) out[i] = t.ParamsAt(g[i]);
  return out;
}

double MinPairDocIndexed(std::span<const GridIndex> g, const Structure& s,
                         const CollisionModel& model) {
  double best = std::numeric_limits<double>::infinity();
  for (const DockedPair& p : s.pairs()) {
    best = std::min(best, static_cast<double>(model.Doc(p.relation, g[p.i], g[p.j])));
  }
  return best;
}

// Descent directions in index units for every module.
struct Directions {
  std::vector<int> phi;
  std::vector<int> amp;
};

Directions DescentDirections(const ObjectiveGradients& grads,
                             std::span<const WaveformParams> params) {
  Directions d;
  const size_t n = params.size();
  d.phi.resize(n);
  d.amp.resize(n);
  for (size_t i = 0; i < n; ++i) {
    d.phi[i] = -Sign(grads.phi0[i]);
    int a = -Sign(grads.amp[i]);
    // At zero amplitude the gradient is taken on the positive branch; going
    // negative would add thrust, not remove it.
    if (params[i].amp == 0.0 && a < 0) a = 0;
    d.amp[i] = a;
  }
  return d;
}

RepulsiveOutput RepulsiveIndexed(int module, std::span<const GridIndex> g,
                                 const GridIndex& phi_moved, const GridIndex& amp_moved,
                                 const Structure& s, const CollisionModel& model,
                                 const SolverConfig& cfg) {
  RepulsiveOutput out;
  for (const Neighbor& nb : s.neighbors(module)) {
    const GridIndex& gj = g[nb.index];
    const double d0 = model.Doc(nb.relation, g[module], gj);
    const double strength = cfg.Strength(d0);
    if (strength == 0.0) continue;
    const double d_phi = model.Doc(nb.relation, phi_moved, gj);
    const double d_amp = model.Doc(nb.relation, amp_moved, gj);
    out.u_phi += Sign(d_phi - d0) * strength;
    out.u_amp += Sign(d_amp - d0) * strength;
  }
  return out;
}

}  // namespace

void SolverConfig::Validate() const {
  if (!(delta_d > 0.0)) throw ConfigError("solver delta_d must be positive");
  if (n_epochs < 0 || n1 < 0 || n1 > n2 || n2 > n3) {
    throw ConfigError("solver stage bounds must satisfy 0 <= n1 <= n2 <= n3");
  }
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw ConfigError("solver weights must be >= 0");
  }
  for (size_t k = 1; k < repulsive_profile.size(); ++k) {
    if (repulsive_profile[k].below >= repulsive_profile[k - 1].below ||
        repulsive_profile[k].strength < repulsive_profile[k - 1].strength) {
      throw ConfigError("repulsive profile must list descending thresholds with "
                        "non-decreasing strength");
    }
  }
}

double SolverConfig::Strength(double doc) const {
  double s = 0.0;
  for (const RepulsiveStep& step : repulsive_profile) {
    if (doc < step.below) s = step.strength;
  }
  return s;
}

bool InThrustBand(double amp) {
  const double mag = std::abs(amp);
  return mag == 0.0 ||
         (mag >= kMinBandAmplitude - kBandEps && mag <= kMaxBandAmplitude + kBandEps);
}

double ForceFromAmplitude(double amp) {
  if (!InThrustBand(amp)) {
    throw OutOfBandError("amplitude " + std::to_string(amp) + " outside the thrust band");
  }
  if (amp == 0.0) return 0.0;
  return kForceSlope * std::abs(amp) - kForceOffset;
}

ForceVector ModuleForce(const WaveformParams& p, const ModulePose& pose) {
  const double f = ForceFromAmplitude(p.amp);
  const double c = std::cos(p.phi0);
  const double s = std::sin(p.phi0);
  return {-f * c, -f * s, -f * s * pose.x + f * c * pose.y};
}

ForceVector TotalForce(std::span<const WaveformParams> params,
                       std::span<const ModulePose> poses) {
  ForceVector total;
  for (size_t i = 0; i < params.size(); ++i) total += ModuleForce(params[i], poses[i]);
  return total;
}

double WeightedError(const ForceVector& achieved, const ForceVector& desired,
                     const std::array<double, 3>& weights) {
  const ForceVector e = desired - achieved;
  return weights[0] * e.fx * e.fx + weights[1] * e.fy * e.fy + weights[2] * e.tau * e.tau;
}

ModuleJacobian ModuleForceJacobian(const WaveformParams& p, const ModulePose& pose) {
  const double f = ForceFromAmplitude(p.amp);
  const double c = std::cos(p.phi0);
  const double s = std::sin(p.phi0);
  const double k = kForceSlope * (p.amp < 0.0 ? -1.0 : 1.0);
  ModuleJacobian jac;
  jac.d_phi0 = {f * s, -f * c, -f * c * pose.x - f * s * pose.y};
  jac.d_amp = {-k * c, -k * s, -k * s * pose.x + k * c * pose.y};
  return jac;
}

ObjectiveGradients AttractiveGradients(std::span<const WaveformParams> params,
                                       std::span<const ModulePose> poses,
                                       const ForceVector& f_des,
                                       const std::array<double, 3>& weights) {
  const ForceVector e = f_des - TotalForce(params, poses);
  const double we[3] = {weights[0] * e.fx, weights[1] * e.fy, weights[2] * e.tau};
  auto contract = [&](const ForceVector& row) {
    return -2.0 * (we[0] * row.fx + we[1] * row.fy + we[2] * row.tau);
  };
  ObjectiveGradients g;
  g.phi0.resize(params.size());
  g.amp.resize(params.size());
  for (size_t i = 0; i < params.size(); ++i) {
    // A silent module is steered as if it were at the band floor, so the
    // centreline can turn towards useful thrust before it is switched on.
    WaveformParams p = params[i];
    if (p.amp == 0.0) p.amp = kMinBandAmplitude;
    const ModuleJacobian jac = ModuleForceJacobian(p, poses[i]);
    g.phi0[i] = contract(jac.d_phi0);
    g.amp[i] = contract(jac.d_amp);
  }
  return g;
}

double StepAmplitude(double amp, int direction, double delta_d) {
  if (direction == 0) return amp;
  const long k = std::lround(amp / delta_d);
  const long band = std::lround(kMinBandAmplitude / delta_d);
  const long max = std::lround(kMaxBandAmplitude / delta_d);
  long next = k + direction;
  if (std::abs(next) > max) return amp;
  if (next != 0 && std::abs(next) < band) next = k == 0 ? direction * band : 0;
  return static_cast<double>(next) * delta_d;
}

ParamSteps AttractiveStep(const ObjectiveGradients& grads,
                          std::span<const WaveformParams> params, double delta_d) {
  const Directions d = DescentDirections(grads, params);
  ParamSteps steps;
  steps.phi0.resize(params.size());
  steps.amp.resize(params.size());
  for (size_t i = 0; i < params.size(); ++i) {
    steps.phi0[i] = d.phi[i] * delta_d;
    steps.amp[i] = StepAmplitude(params[i].amp, d.amp[i], delta_d) - params[i].amp;
  }
  return steps;
}

RepulsiveOutput RepulsiveField(int module, std::span<const WaveformParams> params,
                               const ParamSteps& steps, const Structure& structure,
                               const CollisionModel& model, const SolverConfig& cfg) {
  const DocTable& t = model.grid();
  std::vector<GridIndex> g(params.size());
  for (size_t i = 0; i < params.size(); ++i) g[i] = t.IndexOf(params[i]);
  const WaveformParams& p = params[module];
  const GridIndex phi_moved = t.IndexOf({p.phi0 + steps.phi0[module], p.amp});
  const GridIndex amp_moved = t.IndexOf({p.phi0, p.amp + steps.amp[module]});
  return RepulsiveIndexed(module, g, phi_moved, amp_moved, structure, model, cfg);
}

double MinPairDoc(std::span<const WaveformParams> params, const Structure& structure,
                  const CollisionModel& model) {
  const DocTable& t = model.grid();
  std::vector<GridIndex> g(params.size());
  for (size_t i = 0; i < params.size(); ++i) g[i] = t.IndexOf(params[i]);
  return MinPairDocIndexed(g, structure, model);
}

CycleSolution SolveCycle(const Structure& structure, const ForceVector& f_des,
                         std::span<const WaveformParams> init, const SolverConfig& cfg,
                         const CollisionModel& model) {
  cfg.Validate();
  const int n = structure.size();
  if (static_cast<int>(init.size()) != n) {
    throw ConfigError("initial solution size does not match the structure");
  }
  const DocTable& t = model.grid();
  const AmpGrid amp_grid(t);
  const auto poses = structure.poses();

  std::vector<GridIndex> cur(n);
  for (int i = 0; i < n; ++i) {
    cur[i] = {t.PhiIndex(init[i].phi0), t.AmpIndex(SnapBandAmplitude(init[i].amp))};
  }

  CycleSolution best;
  bool found = false;
  auto evaluate = [&](const std::vector<WaveformParams>& params) {
    const double min_doc = MinPairDocIndexed(cur, structure, model);
    if (min_doc < cfg.margin) return;
    const ForceVector achieved = TotalForce(params, poses);
    const double err = WeightedError(achieved, f_des, cfg.weights);
    if (!found || err < best.error) {
      best = {params, achieved, err, true, min_doc};
      found = true;
    }
  };

  std::vector<WaveformParams> params = ParamsOf(t, cur);
  evaluate(params);
  std::vector<GridIndex> next(n);
  for (int epoch = 0; epoch < cfg.n_epochs; ++epoch) {
    for (int it = 1; it <= cfg.n3; ++it) {
      const ObjectiveGradients grads = AttractiveGradients(params, poses, f_des, cfg.weights);
      const Directions dir = DescentDirections(grads, params);
      for (int i = 0; i < n; ++i) {
        const GridIndex phi_moved{StepPhiIndex(t, cur[i].phi, dir.phi[i]), cur[i].amp};
        const GridIndex amp_moved{cur[i].phi, amp_grid.Step(cur[i].amp, dir.amp[i])};
        if (it <= cfg.n1) {
          next[i] = {phi_moved.phi, amp_moved.amp};
          continue;
        }
        const RepulsiveOutput u =
            RepulsiveIndexed(i, cur, phi_moved, amp_moved, structure, model, cfg);
        next[i] = cur[i];
        if (it <= cfg.n2) {
          if (u.u_phi > 0.0) next[i].phi = phi_moved.phi;
          if (u.u_amp > 0.0) next[i].amp = amp_moved.amp;
        } else {
          if (u.u_phi < 0.0) next[i].phi = StepPhiIndex(t, cur[i].phi, -dir.phi[i]);
          if (u.u_amp < 0.0) next[i].amp = amp_grid.Step(cur[i].amp, -dir.amp[i]);
        }
      }
      cur.swap(next);
      params = ParamsOf(t, cur);
      evaluate(params);
    }
  }
  if (!found) throw NoValidSolutionError("no collision-free candidate observed");
  return best;
}

CycleSolution ZeroThrustCycle(const Structure& structure, const ForceVector& f_des,
                              std::span<const double> preferred_phi0,
                              const SolverConfig& cfg, const CollisionModel& model) {
  const DocTable& t = model.grid();
  const int n = structure.size();
  const int zero = t.AmpIndex(0.0);
  std::vector<GridIndex> g(n);
  auto finish = [&]() {
    CycleSolution sol;
    sol.params = ParamsOf(t, g);
    sol.achieved = {};
    sol.error = WeightedError(sol.achieved, f_des, cfg.weights);
    sol.min_doc = MinPairDocIndexed(g, structure, model);
    sol.collision_free = sol.min_doc >= cfg.margin;
    return sol;
  };
  if (static_cast<int>(preferred_phi0.size()) == n) {
    for (int i = 0; i < n; ++i) g[i] = {t.PhiIndex(preferred_phi0[i]), zero};
    CycleSolution sol = finish();
    if (sol.collision_free) return sol;
  }
  const int common = t.PhiIndex(-0.5 * kPi);
  for (int i = 0; i < n; ++i) g[i] = {common, zero};
  return finish();
}

std::vector<WaveformParams> InitialParams(int modules) {
  return std::vector<WaveformParams>(modules, WaveformParams{-0.5 * kPi, 0.0});
}

}  // namespace modboat
