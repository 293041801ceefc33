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

#include "modboat/doc_metric.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "modboat/angles.h"

namespace modboat {

namespace {

double BoundaryDistance(const PhasePoint& p, std::span<const PhasePoint> ring) {
  double best = HUGE_VAL;
  for (size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
    best = std::min(best, PointSegmentDistance(p, ring[j], ring[i]));
  }
  return best;
}

// Severity of one inside run [g, h] of the supporting line, in units of the
// segment parameter (A at 0, B at 1).
double RunDoc(double g, double h, double length) {
  const bool a_inside = g <= 0.0;
  const bool b_inside = h >= 1.0;
  if (a_inside && b_inside) return -(1.0 + std::min(-g, h - 1.0)) * length;
  if (b_inside) return -(1.0 - g) * length;
  if (a_inside) return -h * length;
  return -((h - g) + std::min(g, 1.0 - h)) * length;
}

}  // namespace

DocValue SegmentPolygonDoc(const PhaseSegment& seg, std::span<const PhasePoint> ring) {
  const PhasePoint& a = seg.a;
  const PhasePoint& b = seg.b;
  const size_t n = ring.size();

  if (seg.Degenerate()) {
    double d = BoundaryDistance(a, ring);
    return PointInPolygon(a, ring) ? -d : d;
  }

  bool touches = false;
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    if (SegmentsIntersect(a, b, ring[j], ring[i])) {
      touches = true;
      break;
    }
  }
  if (!touches && !PointInPolygon(a, ring)) {
    double best = HUGE_VAL;
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
      best = std::min(best, SegmentSegmentDistance(a, b, ring[j], ring[i]));
    }
    return best;
  }

  // Parameters at which the supporting line A + t (B - A) meets the boundary.
  const Vec2 d = b - a;
  const double len2 = Dot(d, d);
  thread_local std::vector<double> ts;
  ts.clear();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const PhasePoint& p = ring[j];
    const Vec2 e = ring[i] - p;
    const double denom = Cross(d, e);
    const Vec2 ap = p - a;
    if (denom != 0.0) {
      double s = Cross(ap, d) / denom;
      if (s >= 0.0 && s <= 1.0) ts.push_back(Cross(ap, e) / denom);
    } else if (Cross(ap, d) == 0.0) {
      ts.push_back(Dot(ap, d) / len2);
      ts.push_back(Dot(ring[i] - a, d) / len2);
    }
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end(),
                       [](double x, double y) { return y - x < 1e-12; }),
           ts.end());

  const double length = std::sqrt(len2);
  double worst = HUGE_VAL;
  size_t k = 0;
  while (k + 1 < ts.size()) {
    if (!PointInPolygon(a + (0.5 * (ts[k] + ts[k + 1])) * d, ring)) {
      ++k;
      continue;
    }
    // Merge consecutive inside pieces into one run.
    const double g = ts[k];
    size_t m = k + 1;
    while (m + 1 < ts.size() &&
           PointInPolygon(a + (0.5 * (ts[m] + ts[m + 1])) * d, ring)) {
      ++m;
    }
    const double h = ts[m];
    if (g < 1.0 && h > 0.0) worst = std::min(worst, RunDoc(g, h, length));
    k = m;
  }
  // Grazing contact only.
  if (worst == HUGE_VAL) return 0.0;
  return worst;
}

DocValue SegmentPolygonDoc(const PhaseSegment& seg, const CollisionPolygon& poly) {
  return SegmentPolygonDoc(seg, std::span<const PhasePoint>(poly.vertices));
}

DocValue DocWrapped(const PhaseSegment& seg, const CollisionRegion& region) {
  const PhasePoint mid = 0.5 * (seg.a + seg.b);
  const PhaseSegment s = seg.Shifted({WrapToPi(mid.x) - mid.x, WrapToPi(mid.y) - mid.y});
  Box sbox;
  sbox.Expand(s.a);
  sbox.Expand(s.b);

  struct Copy {
    double gap;
    const CollisionPolygon* poly;
    Vec2 shift;
  };
  thread_local std::vector<Copy> copies;
  copies.clear();
  for (const CollisionPolygon& poly : region.polygons) {
    const Box& pb = poly.bounds;
    const int x0 = static_cast<int>(std::floor((sbox.lo.x - pb.hi.x) / kTwoPi)) - 1;
    const int x1 = static_cast<int>(std::ceil((sbox.hi.x - pb.lo.x) / kTwoPi)) + 1;
    const int y0 = static_cast<int>(std::floor((sbox.lo.y - pb.hi.y) / kTwoPi)) - 1;
    const int y1 = static_cast<int>(std::ceil((sbox.hi.y - pb.lo.y) / kTwoPi)) + 1;
    for (int sx = x0; sx <= x1; ++sx) {
      for (int sy = y0; sy <= y1; ++sy) {
        const Vec2 shift = kTwoPi * Vec2{double(sx), double(sy)};
        copies.push_back({BoxGap(sbox, pb.Shifted(shift)), &poly, shift});
      }
    }
  }
  std::sort(copies.begin(), copies.end(),
            [](const Copy& l, const Copy& r) { return l.gap < r.gap; });

  double best = HUGE_VAL;
  for (const Copy& c : copies) {
    // A copy whose box is apart from the segment scores at least its gap.
    if (c.gap > 0.0 && c.gap >= best) break;
    best = std::min(best, SegmentPolygonDoc(s.Shifted(-c.shift), *c.poly));
  }
  return best;
}

}  // namespace modboat
