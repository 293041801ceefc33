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

// Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero when any
// criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "modboat/angles.h"
#include "modboat/doc_metric.h"
#include "modboat/errors.h"
#include "modboat/harness/commands.h"
#include "modboat/harness/run_config.h"
#include "modboat/potential_solver.h"
#include "modboat/simulator.h"
#include "modboat/trajectory_io.h"
#include "modboat/transition_solver.h"
#include "test_support.h"

namespace modboat {
namespace {

namespace fs = std::filesystem;
using harness::RunConfig;
using testing::DefaultModel;
using testing::Uniform;

class Stopwatch {
 public:
  double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int failures = 0;

void Report(int id, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] %d %s: %s\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string Format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return buf;
}

// 1. DoC cases against the brute-force oracle.
void DocCorrectness() {
  Stopwatch sw;
  const std::vector<PhasePoint> square = {{0, 0}, {2, 0}, {2, 2}, {0, 2}};
  struct Hand {
    PhaseSegment seg;
    double expected;
  };
  const std::vector<Hand> hand = {{{{3, 0}, {3, 2}}, 1.0},
                                  {{{-1, 1}, {1, 1}}, -1.0},
                                  {{{0.5, 1}, {1.0, 1}}, -1.0},
                                  {{{-1, 1}, {4, 1}}, -3.0}};
  double worst = 0.0;
  for (const Hand& h : hand) {
    const double d = SegmentPolygonDoc(h.seg, square);
    worst = std::max({worst, std::abs(d - h.expected),
                      std::abs(d - testing::BruteForceDoc(h.seg, square))});
  }
  std::mt19937_64 rng(101);
  const int fixtures = 1000;
  for (int k = 0; k < fixtures; ++k) {
    const auto ring = testing::RandomConvexPolygon(
        rng, {Uniform(rng, -1, 1), Uniform(rng, -1, 1)}, Uniform(rng, 0.3, 1.5));
    const PhaseSegment seg{{Uniform(rng, -3, 3), Uniform(rng, -3, 3)},
                           {Uniform(rng, -3, 3), Uniform(rng, -3, 3)}};
    worst = std::max(worst, std::abs(SegmentPolygonDoc(seg, ring) -
                                     testing::BruteForceDoc(seg, ring)));
  }
  const double secs = sw.Seconds();
  Report(1, "doc-four-case", worst <= 1e-6 && secs < 10.0,
         Format("max |err| %.2e rad over %d fixtures + 4 hand cases (tol 1e-6), %.2f s (limit 10 s)",
                worst, fixtures, secs));
}

// 2. Jacobian rows against central differences of the module force.
void GradientFidelity() {
  Stopwatch sw;
  std::mt19937_64 rng(102);
  const double h = 1e-5;
  double worst = 0.0;
  auto rel = [](const ForceVector& a, const ForceVector& b) {
    const ForceVector d = a - b;
    const double nb = std::sqrt(b.fx * b.fx + b.fy * b.fy + b.tau * b.tau);
    return std::sqrt(d.fx * d.fx + d.fy * d.fy + d.tau * d.tau) / nb;
  };
  auto scaled = [](const ForceVector& f, double s) {
    return ForceVector{s * f.fx, s * f.fy, s * f.tau};
  };
  for (int k = 0; k < 1000; ++k) {
    const double mag = Uniform(rng, 0.95, 2.55);
    const WaveformParams p{Uniform(rng, -kPi, kPi), rng() % 2 ? mag : -mag};
    const ModulePose pose{Uniform(rng, -0.3, 0.3), Uniform(rng, -0.3, 0.3)};
    const ModuleJacobian jac = ModuleForceJacobian(p, pose);
    const ForceVector fd_phi = scaled(
        ModuleForce({p.phi0 + h, p.amp}, pose) - ModuleForce({p.phi0 - h, p.amp}, pose),
        0.5 / h);
    const ForceVector fd_amp = scaled(
        ModuleForce({p.phi0, p.amp + h}, pose) - ModuleForce({p.phi0, p.amp - h}, pose),
        0.5 / h);
    worst = std::max({worst, rel(jac.d_phi0, fd_phi), rel(jac.d_amp, fd_amp)});
  }
  const double secs = sw.Seconds();
  Report(2, "gradient-fidelity", worst < 1e-6 && secs < 5.0,
         Format("max relative error %.2e at 1000 points (tol 1e-6), %.2f s (limit 5 s)", worst,
                secs));
}

// 3. Thrust law values and amplitude-sign invariance.
void ForceModel() {
  const double f1 = ForceFromAmplitude(1.0);
  const double f26 = ForceFromAmplitude(2.6);
  bool ok = std::abs(f1 - 0.003) < 1e-12 && std::abs(f26 - 0.0382) < 1e-12;
  std::mt19937_64 rng(103);
  int mismatches = 0;
  const Structure s = Structure::Rectangle(3, 3, 0.12);
  for (int k = 0; k < 1000; ++k) {
    std::vector<WaveformParams> p(s.size());
    for (auto& q : p) {
      q = {Uniform(rng, -kPi, kPi),
           rng() % 4 == 0 ? 0.0 : Uniform(rng, 0.9, 2.6) * (rng() % 2 ? 1 : -1)};
    }
    std::vector<WaveformParams> neg = p;
    for (auto& q : neg) q.amp = -q.amp;
    if (!(TotalForce(p, s.poses()) == TotalForce(neg, s.poses()))) ++mismatches;
  }
  ok = ok && mismatches == 0;
  Report(3, "force-model", ok,
         Format("F(1.0) = %.6f N, F(2.6) = %.6f N, negation mismatches %d/1000", f1, f26,
                mismatches));
}

// 4. Every returned cycle clears the margin.
void SolverSafety() {
  Stopwatch sw;
  const CollisionModel& m = DefaultModel();
  const SolverConfig cfg;
  std::mt19937_64 rng(104);
  const std::vector<std::pair<std::string, Structure>> lattices = {
      {"1x3", Structure::Rectangle(3, 1, 0.12)},
      {"2x2", Structure::Rectangle(2, 2, 0.12)},
      {"3x3", Structure::Rectangle(3, 3, 0.12)}};
  int unsafe = 0;
  int errors = 0;
  std::string rates;
  for (const auto& [name, s] : lattices) {
    int fallbacks = 0;
    const double fmax = ForceFromAmplitude(kMaxBandAmplitude) * s.size();
    for (int k = 0; k < 1000; ++k) {
      const ForceVector f_des{Uniform(rng, -fmax, fmax), Uniform(rng, -fmax, fmax),
                              Uniform(rng, -0.1 * fmax, 0.1 * fmax)};
      try {
        CycleSolution sol;
        try {
          sol = SolveCycle(s, f_des, InitialParams(s.size()), cfg, m);
        } catch (const NoValidSolutionError&) {
          ++fallbacks;
          const std::vector<double> pref(s.size(), -kPi / 2);
          sol = ZeroThrustCycle(s, f_des, pref, cfg, m);
        }
        if (MinPairDoc(sol.params, s, m) < cfg.margin) ++unsafe;
      } catch (const std::exception&) {
        ++errors;
      }
    }
    rates += Format(" %s %.1f%%", name.c_str(), fallbacks / 10.0);
  }
  const double secs = sw.Seconds();
  Report(4, "solver-safety", unsafe == 0 && errors == 0 && secs < 300.0,
         Format("unsafe %d, exceptions %d over 3x1000 wrenches; fallback rate%s; %.1f s "
                "(limit 300 s)",
                unsafe, errors, rates.c_str(), secs));
}

// 5. Single free module against the exhaustive grid optimum.
void SolverQuality() {
  const CollisionModel& m = DefaultModel();
  const SolverConfig cfg;
  const Structure s = Structure::FromLayout({"X"}, 0.12);
  std::mt19937_64 rng(105);
  const double bound = kForceSlope * cfg.delta_d;
  int within = 0;
  const int trials = 1000;
  for (int k = 0; k < trials; ++k) {
    const ForceVector f_des =
        ModuleForce({Uniform(rng, -kPi, kPi), Uniform(rng, 0.9, 2.6)}, s.poses()[0]);
    const double got = std::sqrt(SolveCycle(s, f_des, InitialParams(1), cfg, m).error);
    const double opt = std::sqrt(testing::ExhaustiveSingleModule(f_des, cfg, m).error);
    if (got - opt <= bound) ++within;
  }
  const double rate = static_cast<double>(within) / trials;
  Report(5, "solver-quality", rate >= 0.95,
         Format("%d/%d within %.4f N of the grid optimum (rate %.3f, need >= 0.95)", within,
                trials, bound, rate));
}

// 6. Monte-Carlo transition success on square lattices.
void TransitionRate() {
  Stopwatch sw;
  const CollisionModel& m = DefaultModel();
  RunConfig cfg;
  bool ok = true;
  std::string detail;
  for (int side = 2; side <= 5; ++side) {
    const std::int64_t trials = side <= 3 ? 10000 : 1000;
    const harness::TransitionStats st = harness::RunTransitionTrials(side, trials, cfg.seed, cfg, m);
    ok = ok && st.success.rate >= 0.99 && st.unsound == 0;
    detail += Format(" side %d: %.4f [%.4f, %.4f] n=%lld unsound=%lld;", side, st.success.rate,
                     st.success.lo, st.success.hi, static_cast<long long>(trials),
                     static_cast<long long>(st.unsound));
  }
  const double secs = sw.Seconds();
  ok = ok && secs < 600.0;
  Report(6, "transition-rate", ok,
         Format("need >= 0.99 per side;%s %.1f s (limit 600 s)", detail.c_str(), secs));
}

// 7. Solver feasibility against exhaustive enumeration on small lattices.
void ArcConsistencySoundness() {
  const CollisionModel& m = DefaultModel();
  const TransitionConfig cfg;
  const std::vector<Structure> lattices = {
      Structure::Rectangle(2, 1, 0.12), Structure::Rectangle(1, 2, 0.12),
      Structure::Rectangle(3, 1, 0.12), Structure::Rectangle(1, 3, 0.12),
      Structure::Rectangle(2, 2, 0.12), Structure::Rectangle(3, 2, 0.12),
      Structure::Rectangle(2, 3, 0.12)};
  std::mt19937_64 rng(107);
  auto random_params = [&](int n) {
    std::vector<WaveformParams> p(n);
    for (auto& q : p) {
      const double mag = rng() % 5 == 0 ? 0.0 : Uniform(rng, 0.9, 2.6);
      q = {Uniform(rng, -kPi, kPi), rng() % 2 ? mag : -mag};
    }
    return p;
  };
  int disagreements = 0;
  int feasible = 0;
  const int trials = 1000;
  for (int k = 0; k < trials; ++k) {
    const Structure& s = lattices[k % lattices.size()];
    const auto executed = random_params(s.size());
    const auto next = random_params(s.size());
    double oracle = std::numeric_limits<double>::infinity();
    for (bool negate : {false, true}) {
      for (int mask = 0; mask < (1 << s.size()); ++mask) {
        auto rot = [&](int i) { return (mask >> i) & 1 ? Rotation::kCCW : Rotation::kCW; };
        auto from = [&](int i) { return WrapToPi(CycleEndpoint(executed[i], false)); };
        auto to = [&](int i) { return WrapToPi(CycleEndpoint(next[i], negate)); };
        bool good = true;
        for (const DockedPair& p : s.pairs()) {
          good = good && PairConsistent(from(p.i), to(p.i), rot(p.i), from(p.j), to(p.j),
                                        rot(p.j), m.region(p.relation), cfg.margin);
        }
        if (!good) continue;
        double cost = 0.0;
        for (int i = 0; i < s.size(); ++i) cost += std::abs(SignedSweep(from(i), to(i), rot(i)));
        oracle = std::min(oracle, cost);
      }
    }
    try {
      const TransitionPlan plan = SolveTransition(s, executed, next, cfg, m);
      ++feasible;
      if (!std::isfinite(oracle) || std::abs(plan.total_sweep - oracle) > 1e-9) ++disagreements;
    } catch (const NoTransitionError&) {
      if (std::isfinite(oracle)) ++disagreements;
    }
  }
  Report(7, "ac-soundness", disagreements == 0,
         Format("%d disagreements with exhaustive enumeration over %d trials (%d feasible)",
                disagreements, trials, feasible));
}

// 8. Closed-loop presets.
void ClosedLoop() {
  const CollisionModel& m = DefaultModel();
  RunConfig cfg;
  const Structure s = cfg.MakeStructure();
  for (const char* preset : {"test1", "test2", "test3", "test4"}) {
    Stopwatch sw;
    const ExperimentSpec spec = PresetExperiment(preset);
    const TrajectoryLog log = RunExperiment(s, spec, cfg.MakeSettings(), m);
    const ExperimentSummary sum = Summarize(log, spec, s);
    const double secs = sw.Seconds();
    bool ok = sum.audit_violations == 0 && secs < 120.0;
    std::string detail;
    for (size_t k = 0; k < sum.legs.size(); ++k) {
      const LegSummary& l = sum.legs[k];
      const bool a = std::abs(l.relative_speed_error) <= 0.25;
      const bool b = l.heading_error <= 15.0 * kPi / 180.0;
      ok = ok && a && b;
      detail += Format(" leg %zu: speed %.4f/%.4f m/s (rel err %.1f%%), heading err %.1f deg;",
                       k, l.mean_speed, l.commanded_speed, 100.0 * l.relative_speed_error,
                       l.heading_error * 180.0 / kPi);
      if (std::isfinite(l.cross_track_overshoot)) {
        const bool c = l.cross_track_overshoot < 2.0 * sum.structure_length;
        ok = ok && c;
        detail += Format(" overshoot %.3f m (limit %.3f m);", l.cross_track_overshoot,
                         2.0 * sum.structure_length);
      }
    }
    Report(8, Format("closed-loop-%s", preset), ok,
           Format("%s audit violations %d, holds %d, fallbacks %d/%d; %.1f s (limit 120 s)",
                  detail.c_str(), sum.audit_violations, sum.hold_cycles, sum.fallback_cycles,
                  sum.cycles, secs));
  }
}

std::string ReadFile(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int RunCli(const std::string& args) {
  const std::string cmd = std::string(MODBOAT_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// 9. Reruns of every command produce identical files.
void Determinism() {
  const fs::path root = fs::temp_directory_path() / "modboat_acceptance_determinism";
  fs::remove_all(root);
  fs::create_directories(root);
  const fs::path cfg = root / "config.json";
  {
    std::ofstream out(cfg);
    out << R"({"tables": {"dir": ")" << testing::TableDir().string()
        << R"("}, "experiment": {"preset": "test4"}, "simulation": {"force_noise": 0.002, "torque_noise": 0.0002}})";
  }
  int failed_runs = 0;
  std::vector<std::vector<std::string>> outputs(2);
  for (int run = 0; run < 2; ++run) {
    const fs::path out = root / ("run" + std::to_string(run));
    const std::string base = "--config " + cfg.string() + " --seed 5 --out ";
    failed_runs += RunCli(base + (out / "tables").string() + " build-tables") != 0;
    failed_runs += RunCli(base + out.string() + " solve --fx 0.02 --fy 0.05 --tau 0.001") != 0;
    failed_runs += RunCli(base + out.string() + " transition-stats --trials 300") != 0;
    failed_runs += RunCli(base + out.string() + " experiment") != 0;
    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(out)) {
      if (e.is_regular_file()) files.push_back(fs::relative(e.path(), out));
    }
    std::sort(files.begin(), files.end());
    for (const fs::path& f : files) {
      outputs[run].push_back(f.string());
      outputs[run].push_back(ReadFile(out / f));
    }
  }
  const bool same = outputs[0] == outputs[1] && !outputs[0].empty();
  Report(9, "determinism", same && failed_runs == 0,
         Format("%zu files compared across two runs of build-tables, solve, transition-stats, "
                "experiment; %s; %d failed invocations",
                outputs[0].size() / 2, same ? "bit-identical" : "MISMATCH", failed_runs));
  fs::remove_all(root);
}

}  // namespace
}  // namespace modboat

int main() {
  using namespace modboat;
  Stopwatch total;
  DocCorrectness();
  GradientFidelity();
  ForceModel();
  SolverSafety();
  SolverQuality();
  TransitionRate();
  ArcConsistencySoundness();
  ClosedLoop();
  Determinism();
  std::printf("acceptance: %d failing criterion line(s), %.1f s total\n", failures,
              total.Seconds());
  return failures == 0 ? 0 : 1;
}
