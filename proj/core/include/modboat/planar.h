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

#ifndef MODBOAT_PLANAR_H_
#define MODBOAT_PLANAR_H_

#include <cmath>
#include <span>

namespace modboat {

// Plain 2-vector used both for world/structure coordinates and for points of
// the pairwise phase space (x = phi_i, y = phi_j).
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(const Vec2& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  friend constexpr Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
  friend constexpr Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
  friend constexpr Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
  friend constexpr Vec2 operator*(double s, const Vec2& a) {
    return {s * a.x, s * a.y};
  }
  friend constexpr Vec2 operator*(const Vec2& a, double s) { return s * a; }
  friend constexpr bool operator==(const Vec2&, const Vec2&) = default;
};

constexpr double Dot(const Vec2& a, const Vec2& b) {
  return a.x * b.x + a.y * b.y;
}
constexpr double Cross(const Vec2& a, const Vec2& b) {
  return a.x * b.y - a.y * b.x;
}
inline double Norm(const Vec2& a) { return std::hypot(a.x, a.y); }
inline double Distance(const Vec2& a, const Vec2& b) { return Norm(a - b); }

// Axis-aligned bounding box.
struct Box {
  Vec2 lo{HUGE_VAL, HUGE_VAL};
  Vec2 hi{-HUGE_VAL, -HUGE_VAL};

  void Expand(const Vec2& p);
  bool Empty() const { return lo.x > hi.x; }
  Box Shifted(const Vec2& d) const { return {lo + d, hi + d}; }
};

// Euclidean gap between two boxes (0 if they overlap).
double BoxGap(const Box& a, const Box& b);

double PointSegmentDistance(const Vec2& p, const Vec2& a, const Vec2& b);

// True if closed segments [a0,a1] and [b0,b1] share at least one point,
// including collinear overlap.
bool SegmentsIntersect(const Vec2& a0, const Vec2& a1, const Vec2& b0,
                       const Vec2& b1);

double SegmentSegmentDistance(const Vec2& a0, const Vec2& a1, const Vec2& b0,
                              const Vec2& b1);

// Even-odd rule; points exactly on the boundary may go either way.
bool PointInPolygon(const Vec2& p, std::span<const Vec2> ring);

// Signed shoelace area; positive for counterclockwise rings.
double SignedArea(std::span<const Vec2> ring);

// Area centroid of a simple ring.
Vec2 Centroid(std::span<const Vec2> ring);

}  // namespace modboat

#endif  // MODBOAT_PLANAR_H_
