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

#ifndef MODBOAT_POTENTIAL_SOLVER_H_
#define MODBOAT_POTENTIAL_SOLVER_H_

#include <array>
#include <span>
#include <vector>

#include "modboat/collision_model.h"
#include "modboat/geometry.h"
#include "modboat/structure.h"

namespace modboat {

// Structure wrench [Fx, Fy, tau] in the structure frame.
struct ForceVector {
  double fx = 0.0;
  double fy = 0.0;
  double tau = 0.0;

  ForceVector& operator+=(const ForceVector& o) {
    fx += o.fx;
    fy += o.fy;
    tau += o.tau;
    return *this;
  }
  friend ForceVector operator+(ForceVector a, const ForceVector& b) { return a += b; }
  friend ForceVector operator-(const ForceVector& a, const ForceVector& b) {
    return {a.fx - b.fx, a.fy - b.fy, a.tau - b.tau};
  }
  friend bool operator==(const ForceVector&, const ForceVector&) = default;
};

// Linear thrust law of one swim cycle at T = 1.5 s.
inline constexpr double kForceSlope = 0.022;     // N per rad
inline constexpr double kForceOffset = 0.019;    // N
inline constexpr double kMinBandAmplitude = 0.9;
inline constexpr double kMaxBandAmplitude = 2.6;

// One step of the stepped repulsive strength S(D): every entry whose
// `below` threshold exceeds D contributes; the last such entry wins.
struct RepulsiveStep {
  double below = 0.0;
  double strength = 0.0;
};

struct SolverConfig {
  double delta_d = 0.1;
  std::array<double, 3> weights = {1.0, 1.0, 10.0};
  int n_epochs = 5;
  int n1 = 20;
  int n2 = 40;
  int n3 = 60;
  double margin = 0.1;
  // S(D) = 0 for D >= 0.3, 1 on [0, 0.3), 2 on [-0.5, 0), 4 below -0.5.
  std::vector<RepulsiveStep> repulsive_profile = {{0.3, 1.0}, {0.0, 2.0}, {-0.5, 4.0}};

  void Validate() const;
  double Strength(double doc) const;
};

struct CycleSolution {
  std::vector<WaveformParams> params;
  ForceVector achieved;
  double error = 0.0;  // weighted squared error J
  bool collision_free = false;
  double min_doc = 0.0;  // +inf without docked pairs
};

bool InThrustBand(double amp);

// 0 for amp == 0, else 0.022 |amp| - 0.019. Throws OutOfBandError inside the
// dead band or past 2.6.
double ForceFromAmplitude(double amp);

// Thrust points opposite the tail centreline.
ForceVector ModuleForce(const WaveformParams& p, const ModulePose& pose);
ForceVector TotalForce(std::span<const WaveformParams> params,
                       std::span<const ModulePose> poses);

// J = sum_k w_k (F_des,k - F_k)^2.
double WeightedError(const ForceVector& achieved, const ForceVector& desired,
                     const std::array<double, 3>& weights);

// d F_i / d phi0_i and d F_i / d A_i for one module.
struct ModuleJacobian {
  ForceVector d_phi0;
  ForceVector d_amp;
};
ModuleJacobian ModuleForceJacobian(const WaveformParams& p, const ModulePose& pose);

// dJ/dphi0 and dJ/dA per module.
struct ObjectiveGradients {
  std::vector<double> phi0;
  std::vector<double> amp;
};
ObjectiveGradients AttractiveGradients(std::span<const WaveformParams> params,
                                       std::span<const ModulePose> poses,
                                       const ForceVector& f_des,
                                       const std::array<double, 3>& weights);

// Next amplitude one grid step in `direction`, treating the dead band as a
// single step (0 <-> +-0.9) and holding at +-2.6.
double StepAmplitude(double amp, int direction, double delta_d);

// Fixed-size descent step: +-delta_d per centreline, and the effective
// amplitude change after band snapping.
struct ParamSteps {
  std::vector<double> phi0;
  std::vector<double> amp;
};
ParamSteps AttractiveStep(const ObjectiveGradients& grads,
                          std::span<const WaveformParams> params, double delta_d);

struct RepulsiveOutput {
  double u_phi = 0.0;
  double u_amp = 0.0;
};
RepulsiveOutput RepulsiveField(int module, std::span<const WaveformParams> params,
                               const ParamSteps& steps, const Structure& structure,
                               const CollisionModel& model, const SolverConfig& cfg);

// Smallest swim-trajectory table DoC over all docked pairs.
double MinPairDoc(std::span<const WaveformParams> params, const Structure& structure,
                  const CollisionModel& model);

// Three-stage potential-field search. Parameters are snapped to the table
// grid. Returns the lowest-J collision-free candidate seen, or throws
// NoValidSolutionError.
CycleSolution SolveCycle(const Structure& structure, const ForceVector& f_des,
                         std::span<const WaveformParams> init, const SolverConfig& cfg,
                         const CollisionModel& model);

// All-zero-amplitude cycle. Uses `preferred_phi0` (snapped) when that is
// collision-free, otherwise a common centreline near -pi/2.
CycleSolution ZeroThrustCycle(const Structure& structure, const ForceVector& f_des,
                              std::span<const double> preferred_phi0,
                              const SolverConfig& cfg, const CollisionModel& model);

// Starting point of the first cycle: every module at (-pi/2, 0).
std::vector<WaveformParams> InitialParams(int modules);

}  // namespace modboat

#endif  // MODBOAT_POTENTIAL_SOLVER_H_
