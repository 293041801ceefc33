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

#include <cmath>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "modboat/doc_metric.h"
#include "modboat/geometry.h"

namespace modboat {
namespace {

std::vector<PhaseSegment> RandomSegments(int n, double span) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-span, span);
  std::vector<PhaseSegment> out(n);
  for (auto& s : out) s = {{u(rng), u(rng)}, {u(rng), u(rng)}};
  return out;
}

void BM_SegmentPolygonDoc(benchmark::State& state) {
  std::vector<PhasePoint> ring;
  const int n = static_cast<int>(state.range(0));
  for (int k = 0; k < n; ++k) {
    const double a = 2.0 * 3.141592653589793 * k / n;
    ring.push_back({std::cos(a), std::sin(a)});
  }
  const auto segs = RandomSegments(1024, 2.0);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(SegmentPolygonDoc(segs[i++ & 1023], ring));
  }
}
BENCHMARK(BM_SegmentPolygonDoc)->Arg(4)->Arg(16)->Arg(64);

void BM_DocWrapped(benchmark::State& state) {
  static const CollisionRegion region =
      BuildCollisionRegion(NeighborRelation::kPlusX, ModuleGeometry{}, 0.1);
  const auto segs = RandomSegments(1024, 3.14);
  size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(DocWrapped(segs[i++ & 1023], region));
}
BENCHMARK(BM_DocWrapped);

void BM_BuildCollisionRegion(benchmark::State& state) {
  const double res = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(BuildCollisionRegion(NeighborRelation::kPlusX, ModuleGeometry{}, res));
  }
}
BENCHMARK(BM_BuildCollisionRegion)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace modboat
