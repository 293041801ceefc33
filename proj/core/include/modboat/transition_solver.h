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

#ifndef MODBOAT_TRANSITION_SOLVER_H_
#define MODBOAT_TRANSITION_SOLVER_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "modboat/collision_model.h"
#include "modboat/geometry.h"
#include "modboat/structure.h"

namespace modboat {

enum class Rotation : std::uint8_t { kCW = 0, kCCW = 1 };

// Set of surviving rotations of one module, as a bitmask over Rotation.
using RotationDomain = std::uint8_t;
inline constexpr RotationDomain kNoRotation = 0;
inline constexpr RotationDomain kBothRotations = 0b11;
constexpr RotationDomain Bit(Rotation r) { return RotationDomain{1} << static_cast<int>(r); }

struct TransitionConfig {
  double t_trans = 0.75;  // s
  double margin = 0.1;    // rad
  // Upper bound on assignment-search nodes per negation branch.
  std::int64_t node_limit = 1 << 22;

  void Validate() const;
};

struct TransitionPlan {
  std::vector<double> from;   // tail pose at the end of the executed cycle
  std::vector<double> sweep;  // signed rotation, CCW positive
  std::vector<Rotation> rotation;
  double duration = 0.75;
  bool negate_next = false;
  double total_sweep = 0.0;
  double min_doc = 0.0;  // +inf without docked pairs

  // Tail angle of module i at fraction s in [0, 1] of the transition.
  double PoseAt(int i, double s) const { return from[i] + s * sweep[i]; }
};

// Tail pose at a cycle boundary: phi0 + A, or phi0 - A for a negated cycle.
double CycleEndpoint(const WaveformParams& p, bool negated);

// Signed rotation from `from` to `to`: CCW in [0, 2 pi), CW in (-2 pi, 0].
double SignedSweep(double from, double to, Rotation dir);

PhaseSegment TransitionSegment(double from_i, double to_i, Rotation dir_i, double from_j,
                               double to_j, Rotation dir_j);

bool PairConsistent(double from_i, double to_i, Rotation dir_i, double from_j, double to_j,
                    Rotation dir_j, const CollisionRegion& region, double margin);

// Binary constraint of the arc-consistency pass: may variable a take `ra`
// while b takes `rb`?
using RotationConstraint = std::function<bool(int a, Rotation ra, int b, Rotation rb)>;

// AC-3 over `arcs` (each undirected edge listed once) on `domains`, in place.
// Returns false when some domain empties.
bool EnforceArcConsistency(std::vector<RotationDomain>& domains,
                           std::span<const std::pair<int, int>> arcs,
                           const RotationConstraint& allowed);

// Minimum-total-sweep collision-free rotation plan. `executed` are the
// parameters of the cycle that just ran, `next` the solver output for the
// coming cycle. Throws NoTransitionError when neither negation option admits
// a consistent assignment.
TransitionPlan SolveTransition(const Structure& structure,
                               std::span<const WaveformParams> executed,
                               std::span<const WaveformParams> next,
                               const TransitionConfig& cfg, const CollisionModel& model);

// Parameters the next cycle actually runs with under `plan`.
std::vector<WaveformParams> ApplyNegation(std::span<const WaveformParams> next,
                                          bool negate_next);

// Exact DoC of every docked pair under `plan` against the model's regions.
double PlanMinDoc(const Structure& structure, const TransitionPlan& plan,
                  const CollisionModel& model);

}  // namespace modboat

#endif  // MODBOAT_TRANSITION_SOLVER_H_
