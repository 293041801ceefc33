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

#ifndef MODBOAT_TRAJECTORY_IO_H_
#define MODBOAT_TRAJECTORY_IO_H_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "modboat/simulator.h"
#include "modboat/structure.h"

namespace modboat {

struct LegSummary {
  Vec2 v_des;
  double yaw_des = 0.0;
  double commanded_speed = 0.0;
  // Over the final third of the leg.
  double mean_speed = 0.0;
  double relative_speed_error = 0.0;
  double heading_error = 0.0;  // rad, mean-velocity direction vs command; NaN at zero speed
  // Mean |v - v_des| over the whole leg.
  double mean_velocity_error = 0.0;
  double final_yaw_error = 0.0;  // rad, wrapped
  // Largest excursion past the switch point along the previous course,
  // perpendicular to the new one. NaN when the course does not change.
  double cross_track_overshoot = 0.0;
};

struct ExperimentSummary {
  std::string name;
  std::vector<LegSummary> legs;
  int cycles = 0;
  int hold_cycles = 0;
  int fallback_cycles = 0;
  int audit_violations = 0;
  double min_doc = 0.0;
  double structure_length = 0.0;
};

ExperimentSummary Summarize(const TrajectoryLog& log, const ExperimentSpec& spec,
                            const Structure& structure);

// Header: t,x,y,theta,vx,vy,omega,fx_cmd,fy_cmd,tau_cmd,min_doc,event
void WriteTrajectoryCsv(std::ostream& out, const TrajectoryLog& log);
// One JSON object per cycle.
void WriteCycleJsonl(std::ostream& out, const TrajectoryLog& log);
std::string SummaryJson(const ExperimentSummary& summary);

// Writes <stem>.csv, <stem>_cycles.jsonl and <stem>_summary.json in `dir`.
std::vector<std::filesystem::path> WriteExperimentFiles(const std::filesystem::path& dir,
                                                        const std::string& stem,
                                                        const TrajectoryLog& log,
                                                        const ExperimentSummary& summary);

}  // namespace modboat

#endif  // MODBOAT_TRAJECTORY_IO_H_
