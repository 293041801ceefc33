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

#ifndef MODBOAT_HARNESS_COMMANDS_H_
#define MODBOAT_HARNESS_COMMANDS_H_

#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

#include "modboat/collision_model.h"
#include "modboat/harness/run_config.h"
#include "modboat/potential_solver.h"
#include "modboat/structure.h"

namespace modboat::harness {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSolverFailure = 2;
inline constexpr int kExitConfigError = 3;

std::uint64_t SplitMix64(std::uint64_t x);
// Independent seed for trial `trial` of stream `stream`.
std::uint64_t TrialSeed(std::uint64_t master, std::uint64_t stream, std::uint64_t trial);
// Unbiased integer in [0, n).
int UniformIndex(std::mt19937_64& rng, int n);
// Uniform double in [lo, hi).
double UniformReal(std::mt19937_64& rng, double lo, double hi);

// Random grid-aligned cycle parameters whose swim trajectories keep every
// docked pair at least `margin` from collision, sampled module by module
// with rejection.
std::vector<WaveformParams> RandomValidCycle(const Structure& structure,
                                             const CollisionModel& model, double margin,
                                             std::mt19937_64& rng);

struct Proportion {
  std::int64_t successes = 0;
  std::int64_t trials = 0;
  double rate = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

// Wilson score interval; z = 1.96 gives 95 %.
Proportion WilsonInterval(std::int64_t successes, std::int64_t trials,
                          double z = 1.959963984540054);

struct TransitionStats {
  int side = 0;
  Proportion success;
  // Returned plans that the exact tail geometry flags at some sampled instant.
  std::int64_t unsound = 0;
};

TransitionStats RunTransitionTrials(int side, std::int64_t trials, std::uint64_t seed,
                                    const RunConfig& cfg, const CollisionModel& model);

CollisionModel LoadModel(const RunConfig& cfg);

int CmdBuildTables(const RunConfig& cfg, std::ostream& out);
int CmdSolve(const RunConfig& cfg, const ForceVector& f_des, std::ostream& out);
int CmdTransitionStats(const RunConfig& cfg, std::ostream& out);
int CmdExperiment(const RunConfig& cfg, std::ostream& out);

}  // namespace modboat::harness

#endif  // MODBOAT_HARNESS_COMMANDS_H_
