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

#include "modboat/trajectory_io.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>

#include <nlohmann/json.hpp>

#include "modboat/angles.h"
#include "modboat/errors.h"

namespace modboat {
namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string Num(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

// JSON has no infinities or NaNs; both become null.
json Finite(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json ForceJson(const ForceVector& f) { return json::array({f.fx, f.fy, f.tau}); }

json ParamsJson(const std::vector<WaveformParams>& params) {
  json arr = json::array();
  for (const WaveformParams& p : params) arr.push_back(json::array({p.phi0, p.amp}));
  return arr;
}

void OpenForWrite(std::ofstream& f, const std::filesystem::path& path) {
  f.open(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot open " + path.string() + " for writing");
}

}  // namespace

ExperimentSummary Summarize(const TrajectoryLog& log, const ExperimentSpec& spec,
                            const Structure& structure) {
  ExperimentSummary s;
  s.name = spec.name;
  s.cycles = static_cast<int>(log.cycles.size());
  s.structure_length = structure.Length();
  s.min_doc = std::numeric_limits<double>::infinity();
  for (const CycleRecord& c : log.cycles) {
    s.hold_cycles += c.status == "hold";
    s.fallback_cycles += c.status == "fallback";
    s.audit_violations += c.audit_violations;
    s.min_doc = std::min(s.min_doc, c.audit_min_doc);
  }

  double start = 0.0;
  Vec2 switch_point;
  for (size_t k = 0; k < spec.legs.size(); ++k) {
    const SetpointLeg& leg = spec.legs[k];
    const double end = start + leg.duration;
    const double third = start + 2.0 * leg.duration / 3.0;
    LegSummary ls;
    ls.v_des = leg.velocity;
    ls.yaw_des = leg.yaw;
    ls.commanded_speed = Norm(leg.velocity);

    Vec2 mean_v;
    double speed_sum = 0.0;
    double err_sum = 0.0;
    int tail_count = 0;
    int count = 0;
    const RigidBodyState* last = nullptr;
    for (const LogSample& sample : log.samples) {
      const double t = sample.state.t;
      if (t < start - 1e-9 || t >= end - 1e-9) continue;
      if (!last) switch_point = sample.state.position;
      last = &sample.state;
      err_sum += Norm(sample.state.velocity - leg.velocity);
      ++count;
      if (t >= third - 1e-9) {
        mean_v += sample.state.velocity;
        speed_sum += Norm(sample.state.velocity);
        ++tail_count;
      }
    }
    if (tail_count > 0) {
      mean_v = (1.0 / tail_count) * mean_v;
      ls.mean_speed = speed_sum / tail_count;
    }
    ls.mean_velocity_error = count > 0 ? err_sum / count : kNaN;
    ls.relative_speed_error = ls.commanded_speed > 0.0
                                  ? std::abs(ls.mean_speed - ls.commanded_speed) / ls.commanded_speed
                                  : kNaN;
    ls.heading_error =
        ls.commanded_speed > 0.0 && Norm(mean_v) > 0.0
            ? std::abs(WrapError(std::atan2(mean_v.y, mean_v.x) -
                                 std::atan2(leg.velocity.y, leg.velocity.x)))
            : kNaN;
    ls.final_yaw_error = last ? std::abs(WrapError(leg.yaw - last->yaw)) : kNaN;

    ls.cross_track_overshoot = kNaN;
    if (k > 0 && ls.commanded_speed > 0.0 && Norm(spec.legs[k - 1].velocity) > 0.0) {
      const Vec2 d1 = (1.0 / Norm(spec.legs[k - 1].velocity)) * spec.legs[k - 1].velocity;
      const Vec2 d2 = (1.0 / ls.commanded_speed) * leg.velocity;
      Vec2 nrm = d1 - Dot(d1, d2) * d2;
      if (Norm(nrm) > 1e-9) {
        nrm = (1.0 / Norm(nrm)) * nrm;
        double overshoot = 0.0;
        for (const LogSample& sample : log.samples) {
          const double t = sample.state.t;
          if (t < start - 1e-9 || t >= end - 1e-9) continue;
          overshoot = std::max(overshoot, Dot(sample.state.position - switch_point, nrm));
        }
        ls.cross_track_overshoot = overshoot;
      }
    }
    s.legs.push_back(ls);
    start = end;
  }
  return s;
}

void WriteTrajectoryCsv(std::ostream& out, const TrajectoryLog& log) {
  out << "t,x,y,theta,vx,vy,omega,fx_cmd,fy_cmd,tau_cmd,min_doc,event\n";
  for (const LogSample& s : log.samples) {
    const RigidBodyState& st = s.state;
    out << Num(st.t) << ',' << Num(st.position.x) << ',' << Num(st.position.y) << ','
        << Num(WrapToPi(st.yaw)) << ',' << Num(st.velocity.x) << ',' << Num(st.velocity.y) << ','
        << Num(st.omega) << ',' << Num(s.command.fx) << ',' << Num(s.command.fy) << ','
        << Num(s.command.tau) << ',' << Num(s.min_doc) << ',' << s.event << '\n';
  }
}

void WriteCycleJsonl(std::ostream& out, const TrajectoryLog& log) {
  for (const CycleRecord& c : log.cycles) {
    json j;
    j["cycle"] = c.index;
    j["t"] = c.t_start;
    j["status"] = c.status;
    j["v_des"] = json::array({c.v_des.x, c.v_des.y});
    j["yaw_des"] = c.yaw_des;
    j["f_des"] = ForceJson(c.f_des);
    j["solution"] = {{"params", ParamsJson(c.solution.params)},
                     {"achieved", ForceJson(c.solution.achieved)},
                     {"error", c.solution.error},
                     {"collision_free", c.solution.collision_free},
                     {"min_doc", Finite(c.solution.min_doc)}};
    j["executed"] = ParamsJson(c.executed);
    if (c.transition) {
      const TransitionPlan& p = *c.transition;
      j["transition"] = {{"sweep", p.sweep},
                         {"negate_next", p.negate_next},
                         {"total_sweep", p.total_sweep},
                         {"duration", p.duration},
                         {"min_doc", Finite(p.min_doc)}};
    } else {
      j["transition"] = nullptr;
    }
    j["audit_min_doc"] = Finite(c.audit_min_doc);
    j["audit_violations"] = c.audit_violations;
    out << j.dump() << '\n';
  }
}

std::string SummaryJson(const ExperimentSummary& s) {
  json legs = json::array();
  for (const LegSummary& l : s.legs) {
    legs.push_back({{"v_des", json::array({l.v_des.x, l.v_des.y})},
                    {"yaw_des", l.yaw_des},
                    {"commanded_speed", l.commanded_speed},
                    {"mean_speed", l.mean_speed},
                    {"relative_speed_error", Finite(l.relative_speed_error)},
                    {"heading_error", Finite(l.heading_error)},
                    {"mean_velocity_error", Finite(l.mean_velocity_error)},
                    {"final_yaw_error", Finite(l.final_yaw_error)},
                    {"cross_track_overshoot", Finite(l.cross_track_overshoot)}});
  }
  json j = {{"name", s.name},
            {"legs", legs},
            {"cycles", s.cycles},
            {"hold_cycles", s.hold_cycles},
            {"fallback_cycles", s.fallback_cycles},
            {"audit_violations", s.audit_violations},
            {"min_doc", Finite(s.min_doc)},
            {"structure_length", s.structure_length}};
  return j.dump(2);
}

std::vector<std::filesystem::path> WriteExperimentFiles(const std::filesystem::path& dir,
                                                        const std::string& stem,
                                                        const TrajectoryLog& log,
                                                        const ExperimentSummary& summary) {
  std::filesystem::create_directories(dir);
  const std::vector<std::filesystem::path> paths = {
      dir / (stem + ".csv"), dir / (stem + "_cycles.jsonl"), dir / (stem + "_summary.json")};
  std::ofstream f;
  OpenForWrite(f, paths[0]);
  WriteTrajectoryCsv(f, log);
  f.close();
  OpenForWrite(f, paths[1]);
  WriteCycleJsonl(f, log);
  f.close();
  OpenForWrite(f, paths[2]);
  f << SummaryJson(summary) << '\n';
  f.close();
  for (const auto& p : paths) {
    if (!std::filesystem::exists(p)) throw Error("failed to write " + p.string());
  }
  return paths;
}

}  // namespace modboat
