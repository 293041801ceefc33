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

#include "modboat/planar.h"

#include <algorithm>

namespace modboat {

void Box::Expand(const Vec2& p) {
  lo.x = std::min(lo.x, p.x);
  lo.y = std::min(lo.y, p.y);
  hi.x = std::max(hi.x, p.x);
  hi.y = std::max(hi.y, p.y);
}

double BoxGap(const Box& a, const Box& b) {
  double dx = std::max({0.0, b.lo.x - a.hi.x, a.lo.x - b.hi.x});
  double dy = std::max({0.0, b.lo.y - a.hi.y, a.lo.y - b.hi.y});
  return std::hypot(dx, dy);
}

double PointSegmentDistance(const Vec2& p, const Vec2& a, const Vec2& b) {
  Vec2 ab = b - a;
  double len2 = Dot(ab, ab);
  if (len2 == 0.0) return Distance(p, a);
  double t = std::clamp(Dot(p - a, ab) / len2, 0.0, 1.0);
  return Distance(p, a + t * ab);
}

namespace {

int Orientation(const Vec2& a, const Vec2& b, const Vec2& c) {
  double v = Cross(b - a, c - a);
  return (v > 0.0) - (v < 0.0);
}

bool OnSegment(const Vec2& p, const Vec2& a, const Vec2& b) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

}  // namespace

bool SegmentsIntersect(const Vec2& a0, const Vec2& a1, const Vec2& b0,
                       const Vec2& b1) {
  int o1 = Orientation(a0, a1, b0);
  int o2 = Orientation(a0, a1, b1);
  int o3 = Orientation(b0, b1, a0);
  int o4 = Orientation(b0, b1, a1);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && OnSegment(b0, a0, a1)) return true;
  if (o2 == 0 && OnSegment(b1, a0, a1)) return true;
  if (o3 == 0 && OnSegment(a0, b0, b1)) return true;
  if (o4 == 0 && OnSegment(a1, b0, b1)) return true;
  return false;
}

double SegmentSegmentDistance(const Vec2& a0, const Vec2& a1, const Vec2& b0,
                              const Vec2& b1) {
  if (SegmentsIntersect(a0, a1, b0, b1)) return 0.0;
  return std::min({PointSegmentDistance(a0, b0, b1),
                   PointSegmentDistance(a1, b0, b1),
                   PointSegmentDistance(b0, a0, a1),
                   PointSegmentDistance(b1, a0, a1)});
}

bool PointInPolygon(const Vec2& p, std::span<const Vec2> ring) {
  bool inside = false;
  const size_t n = ring.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2& a = ring[i];
    const Vec2& b = ring[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

double SignedArea(std::span<const Vec2> ring) {
  double twice = 0.0;
  const size_t n = ring.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    twice += Cross(ring[j], ring[i]);
  }
  return 0.5 * twice;
}

Vec2 Centroid(std::span<const Vec2> ring) {
  double a = 0.0;
  Vec2 c;
  const size_t n = ring.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    double w = Cross(ring[j], ring[i]);
    a += w;
    c += w * (ring[j] + ring[i]);
  }
  if (a == 0.0) {
    Vec2 mean;
    for (const Vec2& p : ring) mean += p;
    return (1.0 / static_cast<double>(n)) * mean;
  }
  return (1.0 / (3.0 * a)) * c;
}

}  // namespace modboat
