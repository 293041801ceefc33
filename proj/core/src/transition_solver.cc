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

#include "modboat/transition_solver.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <limits>
#include <utility>

#include "modboat/angles.h"
#include "modboat/doc_metric.h"
#include "modboat/errors.h"

namespace modboat {
namespace {

constexpr std::array<Rotation, 2> kRotations = {Rotation::kCW, Rotation::kCCW};

struct Branch {
  std::vector<double> from;
  std::vector<std::array<double, 2>> sweep;  // indexed by Rotation
  // ok[p][ri][rj] for docked pair p.
  std::vector<std::array<std::array<bool, 2>, 2>> ok;
};

int Idx(Rotation r) { return static_cast<int>(r); }

Branch MakeBranch(const Structure& s, std::span<const WaveformParams> executed,
                  std::span<const WaveformParams> next, bool negate,
                  const TransitionConfig& cfg, const CollisionModel& model) {
  const int n = s.size();
  Branch b;
  b.from.resize(n);
  b.sweep.resize(n);
  for (int i = 0; i < n; ++i) {
    b.from[i] = WrapToPi(CycleEndpoint(executed[i], false));
    const double to = WrapToPi(CycleEndpoint(next[i], negate));
    for (Rotation r : kRotations) b.sweep[i][Idx(r)] = SignedSweep(b.from[i], to, r);
  }
  const auto pairs = s.pairs();
  b.ok.resize(pairs.size());
  for (size_t p = 0; p < pairs.size(); ++p) {
    const DockedPair& dp = pairs[p];
    const CollisionRegion& region = model.region(dp.relation);
    for (Rotation ri : kRotations) {
      for (Rotation rj : kRotations) {
        const PhasePoint a{b.from[dp.i], b.from[dp.j]};
        const PhasePoint d{b.sweep[dp.i][Idx(ri)], b.sweep[dp.j][Idx(rj)]};
        b.ok[p][Idx(ri)][Idx(rj)] = DocWrapped({a, a + d}, region) >= cfg.margin;
      }
    }
  }
  return b;
}

struct Assignment {
  std::vector<Rotation> rotation;
  double cost = std::numeric_limits<double>::infinity();
};

// Branch-and-bound over per-module domains, modules in index order.
class AssignmentSearch {
 public:
  AssignmentSearch(const Structure& s, const Branch& b,
                   const std::vector<RotationDomain>& domains, std::int64_t node_limit)
      : branch_(b), domains_(domains), node_limit_(node_limit) {
    const int n = s.size();
    earlier_.resize(n);
    const auto pairs = s.pairs();
    for (size_t p = 0; p < pairs.size(); ++p) {
      const int hi = std::max(pairs[p].i, pairs[p].j);
      earlier_[hi].push_back(static_cast<int>(p));
    }
    pairs_.assign(pairs.begin(), pairs.end());
    order_.resize(n);
    suffix_.assign(n + 1, 0.0);
    for (int i = n - 1; i >= 0; --i) {
      std::vector<Rotation>& vals = order_[i];
      for (Rotation r : kRotations) {
        if (domains_[i] & Bit(r)) vals.push_back(r);
      }
      std::stable_sort(vals.begin(), vals.end(), [&](Rotation x, Rotation y) {
        return std::abs(b.sweep[i][Idx(x)]) < std::abs(b.sweep[i][Idx(y)]);
      });
      const double min_cost = vals.empty() ? 0.0 : std::abs(b.sweep[i][Idx(vals.front())]);
      suffix_[i] = suffix_[i + 1] + min_cost;
    }
    current_.resize(n);
  }

  Assignment Run() {
    Recurse(0, 0.0);
    return best_;
  }

 private:
  bool Consistent(int i) const {
    for (int p : earlier_[i]) {
      const DockedPair& dp = pairs_[p];
      if (!branch_.ok[p][Idx(current_[dp.i])][Idx(current_[dp.j])]) return false;
    }
    return true;
  }

  void Recurse(int i, double cost) {
    if (++nodes_ > node_limit_) return;
    const int n = static_cast<int>(current_.size());
    if (i == n) {
      if (cost < best_.cost) best_ = {current_, cost};
      return;
    }
    for (Rotation r : order_[i]) {
      const double c = cost + std::abs(branch_.sweep[i][Idx(r)]);
      if (c + suffix_[i + 1] >= best_.cost) continue;
      current_[i] = r;
      if (Consistent(i)) Recurse(i + 1, c);
    }
  }

  const Branch& branch_;
  const std::vector<RotationDomain>& domains_;
  std::int64_t node_limit_;
  std::int64_t nodes_ = 0;
  std::vector<DockedPair> pairs_;
  std::vector<std::vector<int>> earlier_;
  std::vector<std::vector<Rotation>> order_;
  std::vector<double> suffix_;
  std::vector<Rotation> current_;
  Assignment best_;
};

}  // namespace

void TransitionConfig::Validate() const {
  if (!(t_trans > 0.0)) throw ConfigError("t_trans must be positive");
  if (node_limit <= 0) throw ConfigError("transition node limit must be positive");
}

double CycleEndpoint(const WaveformParams& p, bool negated) {
  return negated ? p.phi0 - p.amp : p.phi0 + p.amp;
}

double SignedSweep(double from, double to, Rotation dir) {
  double ccw = std::fmod(to - from, kTwoPi);
  if (ccw < 0.0) ccw += kTwoPi;
  if (ccw >= kTwoPi) ccw = 0.0;
  if (dir == Rotation::kCCW) return ccw;
  return ccw == 0.0 ? 0.0 : ccw - kTwoPi;
}

PhaseSegment TransitionSegment(double from_i, double to_i, Rotation dir_i, double from_j,
                               double to_j, Rotation dir_j) {
  const PhasePoint a{from_i, from_j};
  return {a, a + PhasePoint{SignedSweep(from_i, to_i, dir_i), SignedSweep(from_j, to_j, dir_j)}};
}

bool PairConsistent(double from_i, double to_i, Rotation dir_i, double from_j, double to_j,
                    Rotation dir_j, const CollisionRegion& region, double margin) {
  return DocWrapped(TransitionSegment(from_i, to_i, dir_i, from_j, to_j, dir_j), region) >=
         margin;
}

bool EnforceArcConsistency(std::vector<RotationDomain>& domains,
                           std::span<const std::pair<int, int>> arcs,
                           const RotationConstraint& allowed) {
  // Directed arcs (x, y): prune x's values lacking support in y.
  std::deque<std::pair<int, int>> queue;
  for (const auto& [a, b] : arcs) {
    queue.emplace_back(a, b);
    queue.emplace_back(b, a);
  }
  auto revise = [&](int x, int y) {
    bool changed = false;
    for (Rotation rx : kRotations) {
      if (!(domains[x] & Bit(rx))) continue;
      bool supported = false;
      for (Rotation ry : kRotations) {
        if ((domains[y] & Bit(ry)) && allowed(x, rx, y, ry)) {
          supported = true;
          break;
        }
      }
      if (!supported) {
        domains[x] &= static_cast<RotationDomain>(~Bit(rx));
        changed = true;
      }
    }
    return changed;
  };
  while (!queue.empty()) {
    const auto [x, y] = queue.front();
    queue.pop_front();
    if (!revise(x, y)) continue;
    if (domains[x] == kNoRotation) return false;
    for (const auto& [a, b] : arcs) {
      if (a == x && b != y) queue.emplace_back(b, x);
      if (b == x && a != y) queue.emplace_back(a, x);
    }
  }
  return true;
}

TransitionPlan SolveTransition(const Structure& structure,
                               std::span<const WaveformParams> executed,
                               std::span<const WaveformParams> next,
                               const TransitionConfig& cfg, const CollisionModel& model) {
  cfg.Validate();
  const int n = structure.size();
  if (static_cast<int>(executed.size()) != n || static_cast<int>(next.size()) != n) {
    throw ConfigError("transition parameters do not cover every module");
  }
  const auto pairs = structure.pairs();
  std::vector<std::pair<int, int>> horizontal;
  std::vector<std::pair<int, int>> vertical;
  for (const DockedPair& p : pairs) {
    (IsHorizontal(p.relation) ? horizontal : vertical).emplace_back(p.i, p.j);
  }

  TransitionPlan plan;
  double best_cost = std::numeric_limits<double>::infinity();
  for (bool negate : {false, true}) {
    const Branch b = MakeBranch(structure, executed, next, negate, cfg, model);
    auto allowed = [&](int x, Rotation rx, int y, Rotation ry) {
      for (size_t p = 0; p < pairs.size(); ++p) {
        if (pairs[p].i == x && pairs[p].j == y) return b.ok[p][Idx(rx)][Idx(ry)];
        if (pairs[p].i == y && pairs[p].j == x) return b.ok[p][Idx(ry)][Idx(rx)];
      }
      return true;
    };
    // Rows and columns are independent sub-problems; their surviving sets
    // are intersected per module.
    std::vector<RotationDomain> row_dom(n, kBothRotations);
    std::vector<RotationDomain> col_dom(n, kBothRotations);
    if (!EnforceArcConsistency(row_dom, horizontal, allowed)) continue;
    if (!EnforceArcConsistency(col_dom, vertical, allowed)) continue;
    std::vector<RotationDomain> dom(n);
    bool empty = false;
    for (int i = 0; i < n; ++i) {
      dom[i] = row_dom[i] & col_dom[i];
      empty |= dom[i] == kNoRotation;
    }
    if (empty) continue;

    AssignmentSearch search(structure, b, dom, cfg.node_limit);
    const Assignment a = search.Run();
    if (!(a.cost < best_cost)) continue;
    best_cost = a.cost;
    plan.from = b.from;
    plan.rotation = a.rotation;
    plan.sweep.resize(n);
    for (int i = 0; i < n; ++i) plan.sweep[i] = b.sweep[i][Idx(a.rotation[i])];
    plan.duration = cfg.t_trans;
    plan.negate_next = negate;
    plan.total_sweep = a.cost;
  }
  if (!std::isfinite(best_cost)) {
    throw NoTransitionError("no collision-free rotation assignment for either negation");
  }
  plan.min_doc = PlanMinDoc(structure, plan, model);
  return plan;
}

std::vector<WaveformParams> ApplyNegation(std::span<const WaveformParams> next,
                                          bool negate_next) {
  std::vector<WaveformParams> out(next.begin(), next.end());
  if (negate_next) {
    for (WaveformParams& p : out) p.amp = -p.amp;
  }
  return out;
}

double PlanMinDoc(const Structure& structure, const TransitionPlan& plan,
                  const CollisionModel& model) {
  double best = std::numeric_limits<double>::infinity();
  for (const DockedPair& p : structure.pairs()) {
    const PhasePoint a{plan.from[p.i], plan.from[p.j]};
    const PhaseSegment seg{a, a + PhasePoint{plan.sweep[p.i], plan.sweep[p.j]}};
    best = std::min(best, DocWrapped(seg, model.region(p.relation)));
  }
  return best;
}

}  // namespace modboat
