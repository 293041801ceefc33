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

#include "modboat/harness/commands.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "modboat/angles.h"
#include "modboat/errors.h"
#include "modboat/simulator.h"
#include "modboat/trajectory_io.h"
#include "modboat/transition_solver.h"

namespace modboat::harness {
namespace {

using nlohmann::json;

constexpr int kAttemptsPerModule = 500;
constexpr int kRestarts = 200;

void WriteText(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw Error("failed writing " + path.string());
}

json ParamsJson(const std::vector<WaveformParams>& params) {
  json arr = json::array();
  for (const WaveformParams& p : params) arr.push_back({{"phi0", p.phi0}, {"amp", p.amp}});
  return arr;
}

std::string Fixed(double v, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t TrialSeed(std::uint64_t master, std::uint64_t stream, std::uint64_t trial) {
  return SplitMix64(SplitMix64(SplitMix64(master) ^ stream) ^ trial);
}

int UniformIndex(std::mt19937_64& rng, int n) {
  const auto range = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<int>(x % range);
}

double UniformReal(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

std::vector<WaveformParams> RandomValidCycle(const Structure& structure,
                                             const CollisionModel& model, double margin,
                                             std::mt19937_64& rng) {
  const DocTable& t = model.grid();
  const int np = static_cast<int>(t.phi_axis().count);
  std::vector<int> amps;
  for (int k = 0; k < static_cast<int>(t.amp_axis().count); ++k) {
    if (InThrustBand(t.AmpAt(k))) amps.push_back(k);
  }
  const int n = structure.size();
  std::vector<GridIndex> g(n);
  for (int restart = 0; restart < kRestarts; ++restart) {
    bool complete = true;
    for (int i = 0; i < n && complete; ++i) {
      bool placed = false;
      for (int attempt = 0; attempt < kAttemptsPerModule && !placed; ++attempt) {
        g[i] = {UniformIndex(rng, np), amps[UniformIndex(rng, static_cast<int>(amps.size()))]};
        placed = true;
        for (const Neighbor& nb : structure.neighbors(i)) {
          if (nb.index < i && model.Doc(nb.relation, g[i], g[nb.index]) < margin) {
            placed = false;
            break;
          }
        }
      }
      complete = placed;
    }
    if (complete) {
      std::vector<WaveformParams> out(n);
      for (int i = 0; i < n; ++i) out[i] = t.ParamsAt(g[i]);
      return out;
    }
  }
  throw Error("could not sample a collision-free cycle");
}

Proportion WilsonInterval(std::int64_t successes, std::int64_t trials, double z) {
  Proportion p;
  p.successes = successes;
  p.trials = trials;
  if (trials == 0) {
    p.hi = 1.0;
    return p;
  }
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (phat + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  p.rate = phat;
  p.lo = std::max(0.0, centre - half);
  p.hi = std::min(1.0, centre + half);
  return p;
}

TransitionStats RunTransitionTrials(int side, std::int64_t trials, std::uint64_t seed,
                                    const RunConfig& cfg, const CollisionModel& model) {
  const Structure structure = Structure::Rectangle(side, side, cfg.module_spacing);
  TransitionConfig tc = cfg.transition;
  tc.margin = cfg.solver.margin;
  tc.t_trans = cfg.sim.t_trans;
  TransitionStats stats;
  stats.side = side;
  std::int64_t ok = 0;
  for (std::int64_t trial = 0; trial < trials; ++trial) {
    std::mt19937_64 rng(TrialSeed(seed, static_cast<std::uint64_t>(side),
                                  static_cast<std::uint64_t>(trial)));
    const auto end = RandomValidCycle(structure, model, cfg.solver.margin, rng);
    const auto next = RandomValidCycle(structure, model, cfg.solver.margin, rng);
    try {
      const TransitionPlan plan = SolveTransition(structure, end, next, tc, model);
      ++ok;
      const int n = structure.size();
      const MotorTrack track = [&plan, n](double s) {
        std::vector<double> phi(n);
        for (int i = 0; i < n; ++i) phi[i] = plan.PoseAt(i, s);
        return phi;
      };
      const AuditReport audit = AuditCollisions(track, 0.0, 1.0, structure, model, 0.01);
      if (audit.violations > 0) ++stats.unsound;
    } catch (const NoTransitionError&) {
    }
  }
  stats.success = WilsonInterval(ok, trials);
  return stats;
}

CollisionModel LoadModel(const RunConfig& cfg) {
  return LoadOrBuildCollisionModel(cfg.geometry, cfg.table_resolution, cfg.table_dir);
}

int CmdBuildTables(const RunConfig& cfg, std::ostream& out) {
  cfg.geometry.Validate();
  const auto paths = WriteTableCache(cfg.table_dir, cfg.geometry, cfg.table_resolution);
  for (const auto& p : paths) out << p.string() << '\n';
  return kExitOk;
}

int CmdSolve(const RunConfig& cfg, const ForceVector& f_des, std::ostream& out) {
  const Structure structure = cfg.MakeStructure();
  const CollisionModel model = LoadModel(cfg);
  CycleSolution sol;
  try {
    sol = SolveCycle(structure, f_des, InitialParams(structure.size()), cfg.solver, model);
  } catch (const NoValidSolutionError& e) {
    out << "no valid solution: " << e.what() << '\n';
    return kExitSolverFailure;
  }
  out << "module  phi0      amp\n";
  for (size_t i = 0; i < sol.params.size(); ++i) {
    out << i << "       " << Fixed(sol.params[i].phi0, 4) << "  " << Fixed(sol.params[i].amp, 2)
        << '\n';
  }
  out << "desired   " << Fixed(f_des.fx, 5) << ' ' << Fixed(f_des.fy, 5) << ' '
      << Fixed(f_des.tau, 5) << '\n';
  out << "achieved  " << Fixed(sol.achieved.fx, 5) << ' ' << Fixed(sol.achieved.fy, 5) << ' '
      << Fixed(sol.achieved.tau, 5) << '\n';
  out << "error " << sol.error << "  min_doc " << sol.min_doc << '\n';

  json j = {{"f_des", json::array({f_des.fx, f_des.fy, f_des.tau})},
            {"params", ParamsJson(sol.params)},
            {"achieved", json::array({sol.achieved.fx, sol.achieved.fy, sol.achieved.tau})},
            {"error", sol.error},
            {"collision_free", sol.collision_free},
            {"min_doc", std::isfinite(sol.min_doc) ? json(sol.min_doc) : json(nullptr)}};
  WriteText(cfg.out_dir / "solve.json", j.dump(2) + "\n");
  return kExitOk;
}

int CmdTransitionStats(const RunConfig& cfg, std::ostream& out) {
  json report = json::array();
  if (cfg.trials > 0 && !cfg.sides.empty()) {
    const CollisionModel model = LoadModel(cfg);
    out << "side  trials  success  rate     95% CI\n";
    for (int side : cfg.sides) {
      const auto t0 = std::chrono::steady_clock::now();
      const TransitionStats s = RunTransitionTrials(side, cfg.trials, cfg.seed, cfg, model);
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      out << side << "     " << s.success.trials << "  " << s.success.successes << "  "
          << Fixed(s.success.rate, 4) << "  [" << Fixed(s.success.lo, 4) << ", "
          << Fixed(s.success.hi, 4) << "]  (" << Fixed(secs, 1) << " s)\n";
      report.push_back({{"side", side},
                        {"trials", s.success.trials},
                        {"successes", s.success.successes},
                        {"rate", s.success.rate},
                        {"ci95", json::array({s.success.lo, s.success.hi})},
                        {"unsound", s.unsound}});
    }
  }
  WriteText(cfg.out_dir / "transition_stats.json",
            json({{"seed", cfg.seed}, {"sides", report}}).dump(2) + "\n");
  return kExitOk;
}

int CmdExperiment(const RunConfig& cfg, std::ostream& out) {
  const Structure structure = cfg.MakeStructure();
  const CollisionModel model = LoadModel(cfg);
  const TrajectoryLog log = RunExperiment(structure, cfg.experiment, cfg.MakeSettings(), model);
  const ExperimentSummary summary = Summarize(log, cfg.experiment, structure);
  const auto paths = WriteExperimentFiles(cfg.out_dir, cfg.experiment.name, log, summary);
  out << "experiment " << summary.name << ": " << summary.cycles << " cycles, "
      << summary.hold_cycles << " holds, " << summary.fallback_cycles << " fallbacks, "
      << summary.audit_violations << " audit violations, min DoC " << Fixed(summary.min_doc, 3)
      << '\n';
  for (size_t k = 0; k < summary.legs.size(); ++k) {
    const LegSummary& l = summary.legs[k];
    out << "  leg " << k << ": speed " << Fixed(l.mean_speed, 4) << " / "
        << Fixed(l.commanded_speed, 4) << " m/s, heading error "
        << Fixed(l.heading_error * 180.0 / kPi, 1) << " deg, yaw error "
        << Fixed(l.final_yaw_error * 180.0 / kPi, 1) << " deg";
    if (std::isfinite(l.cross_track_overshoot)) {
      out << ", overshoot " << Fixed(l.cross_track_overshoot, 3) << " m";
    }
    out << '\n';
  }
  for (const auto& p : paths) out << "  wrote " << p.string() << '\n';
  return kExitOk;
}

}  // namespace modboat::harness
