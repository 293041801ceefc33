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

#include "modboat/geometry.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <unordered_map>

#include "modboat/angles.h"
#include "modboat/errors.h"

namespace modboat {

void ModuleGeometry::Validate() const {
  if (!(lattice_pitch > 0.0)) throw ConfigError("lattice_pitch must be positive");
  if (!(tail_inner >= 0.0 && tail_inner < tail_outer)) {
    throw ConfigError("tail requires 0 <= tail_inner < tail_outer");
  }
  if (!(hull_radius > 0.0 && hull_radius <= 0.5 * lattice_pitch)) {
    throw ConfigError("hull_radius must lie in (0, lattice_pitch / 2]");
  }
  if (!(tail_half_width >= 0.0)) throw ConfigError("tail_half_width must be >= 0");
}

std::uint64_t ModuleGeometry::Fingerprint() const {
  // FNV-1a over the IEEE bit patterns.
  std::uint64_t h = 1469598103934665603ULL;
  for (double v : {lattice_pitch, tail_inner, tail_outer, hull_radius, tail_half_width}) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xffU;
      h *= 1099511628211ULL;
    }
  }
  return h;
}

void CollisionPolygon::UpdateBounds() {
  bounds = Box{};
  for (const PhasePoint& p : vertices) bounds.Expand(p);
}

namespace {

bool BoxContains(const Box& b, const Vec2& p) {
  return p.x >= b.lo.x && p.x <= b.hi.x && p.y >= b.lo.y && p.y <= b.hi.y;
}

Vec2 LatticeDirection(NeighborRelation rel) {
  switch (rel) {
    case NeighborRelation::kPlusX:
      return {1.0, 0.0};
    case NeighborRelation::kMinusX:
      return {-1.0, 0.0};
    case NeighborRelation::kPlusY:
      return {0.0, 1.0};
    case NeighborRelation::kMinusY:
      return {0.0, -1.0};
  }
  return {};
}

}  // namespace

bool CollisionRegion::Contains(const PhasePoint& p) const {
  PhasePoint c{WrapToPi(p.x), WrapToPi(p.y)};
  for (const CollisionPolygon& poly : polygons) {
    for (int sx = -1; sx <= 1; ++sx) {
      for (int sy = -1; sy <= 1; ++sy) {
        PhasePoint q = c - kTwoPi * Vec2{double(sx), double(sy)};
        if (BoxContains(poly.bounds, q) && PointInPolygon(q, poly.vertices)) {
          return true;
        }
      }
    }
  }
  return false;
}

double CollisionRegion::BoundaryDistance(const PhasePoint& p) const {
  PhasePoint c{WrapToPi(p.x), WrapToPi(p.y)};
  double best = HUGE_VAL;
  for (const CollisionPolygon& poly : polygons) {
    const auto& v = poly.vertices;
    for (int sx = -1; sx <= 1; ++sx) {
      for (int sy = -1; sy <= 1; ++sy) {
        PhasePoint q = c - kTwoPi * Vec2{double(sx), double(sy)};
        for (size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
          best = std::min(best, PointSegmentDistance(q, v[j], v[i]));
        }
      }
    }
  }
  return best;
}

bool TailsCollide(double phi_i, double phi_j, NeighborRelation rel,
                  const ModuleGeometry& geom) {
  const Vec2 ui{std::cos(phi_i), std::sin(phi_i)};
  const Vec2 uj{std::cos(phi_j), std::sin(phi_j)};
  const Vec2 offset = geom.lattice_pitch * LatticeDirection(rel);
  const Vec2 a0 = geom.tail_inner * ui;
  const Vec2 a1 = geom.tail_outer * ui;
  const Vec2 b0 = offset + geom.tail_inner * uj;
  const Vec2 b1 = offset + geom.tail_outer * uj;
  return SegmentSegmentDistance(a0, a1, b0, b1) <= 2.0 * geom.tail_half_width;
}

PhaseSegment SwimTrajectory(const WaveformParams& p_i, const WaveformParams& p_j) {
  return {{p_i.phi0 + p_i.amp, p_j.phi0 + p_j.amp},
          {p_i.phi0 - p_i.amp, p_j.phi0 - p_j.amp}};
}

namespace {

// Marching squares over the window -pi + k * res, k in [k0, k0 + n).
class ContourBuilder {
 public:
  ContourBuilder(const ModuleGeometry& geom, double res) : geom_(geom), res_(res) {
    k0_ = -static_cast<int>(std::ceil(kPi / res)) - 2;
    const int k1 = static_cast<int>(std::ceil(3.0 * kPi / res)) + 2;
    n_ = k1 - k0_ + 1;
    inside_.assign(static_cast<size_t>(n_) * n_, 0);
    for (int a = 1; a + 1 < n_; ++a) {
      for (int b = 1; b + 1 < n_; ++b) {
        inside_[Index(a, b)] = Collide(Coord(a), Coord(b)) ? 1 : 0;
      }
    }
  }

  bool AnyInside() const {
    return std::any_of(inside_.begin(), inside_.end(), [](auto v) { return v != 0; });
  }

  double Coord(int a) const { return -kPi + (k0_ + a) * res_; }
  double WindowLo() const { return Coord(0); }
  double WindowHi() const { return Coord(n_ - 1); }

  // Closed rings with the collided side on the left.
  std::vector<std::vector<PhasePoint>> Rings() {
    std::map<std::uint64_t, std::uint64_t> next;
    for (int a = 0; a + 1 < n_; ++a) {
      for (int b = 0; b + 1 < n_; ++b) Cell(a, b, next);
    }
    std::vector<std::vector<PhasePoint>> rings;
    while (!next.empty()) {
      auto start = next.begin()->first;
      std::vector<PhasePoint> ring;
      std::uint64_t cur = start;
      do {
        ring.push_back(Crossing(cur));
        auto it = next.find(cur);
        std::uint64_t nxt = it->second;
        next.erase(it);
        cur = nxt;
      } while (cur != start && next.count(cur));
      rings.push_back(std::move(ring));
    }
    return rings;
  }

 private:
  size_t Index(int a, int b) const { return static_cast<size_t>(a) * n_ + b; }
  bool In(int a, int b) const { return inside_[Index(a, b)] != 0; }
  bool Collide(double x, double y) const {
    return TailsCollide(x, y, NeighborRelation::kPlusX, geom_);
  }

  // Edge ids: horizontal edge (a,b)-(a+1,b) and vertical edge (a,b)-(a,b+1).
  std::uint64_t HEdge(int a, int b) const { return (Index(a, b) << 1) | 0U; }
  std::uint64_t VEdge(int a, int b) const { return (Index(a, b) << 1) | 1U; }

  PhasePoint Crossing(std::uint64_t edge) {
    if (auto it = crossings_.find(edge); it != crossings_.end()) return it->second;
    const bool vertical = (edge & 1U) != 0;
    const size_t node = edge >> 1;
    const int a = static_cast<int>(node / n_);
    const int b = static_cast<int>(node % n_);
    const PhasePoint p0{Coord(a), Coord(b)};
    const PhasePoint p1 = vertical ? PhasePoint{Coord(a), Coord(b + 1)}
                                   : PhasePoint{Coord(a + 1), Coord(b)};
    double t = 0.5;
    const bool on_border = a == 0 || b == 0 || a + 1 >= n_ - 1 || b + 1 >= n_ - 1;
    if (!on_border) {
      const bool s0 = In(a, b);
      double lo = 0.0, hi = 1.0;
      for (int it = 0; it < 40; ++it) {
        double mid = 0.5 * (lo + hi);
        PhasePoint q = p0 + mid * (p1 - p0);
        if (Collide(q.x, q.y) == s0) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      t = 0.5 * (lo + hi);
    }
    PhasePoint p = p0 + t * (p1 - p0);
    crossings_.emplace(edge, p);
    return p;
  }

  void Cell(int a, int b, std::map<std::uint64_t, std::uint64_t>& next) {
    const bool c[4] = {In(a, b), In(a + 1, b), In(a + 1, b + 1), In(a, b + 1)};
    // Cell boundary walked counterclockwise: bottom, right, top, left.
    const std::uint64_t edges[4] = {HEdge(a, b), VEdge(a + 1, b), HEdge(a, b + 1),
                                    VEdge(a, b)};
    struct Hit {
      std::uint64_t edge;
      bool leaving;
    };
    Hit hits[4];
    int count = 0;
    for (int k = 0; k < 4; ++k) {
      if (c[k] != c[(k + 1) % 4]) hits[count++] = {edges[k], c[k]};
    }
    if (count == 2) {
      const Hit& leave = hits[0].leaving ? hits[0] : hits[1];
      const Hit& enter = hits[0].leaving ? hits[1] : hits[0];
      next[leave.edge] = enter.edge;
    } else if (count == 4) {
      // Saddle: resolve with the exact predicate at the cell centre.
      const bool joined = Collide(Coord(a) + 0.5 * res_, Coord(b) + 0.5 * res_);
      for (int k = 0; k < 4; ++k) {
        if (!hits[k].leaving) continue;
        const Hit& enter = joined ? hits[(k + 1) % 4] : hits[(k + 3) % 4];
        next[hits[k].edge] = enter.edge;
      }
    }
  }

  const ModuleGeometry& geom_;
  double res_;
  int k0_ = 0;
  int n_ = 0;
  std::vector<std::uint8_t> inside_;
  std::unordered_map<std::uint64_t, PhasePoint> crossings_;
};

std::vector<PhasePoint> SimplifyRing(const std::vector<PhasePoint>& ring, double tol) {
  const size_t n = ring.size();
  if (n <= 4 || tol <= 0.0) return ring;
  size_t far = 0;
  double far_d = -1.0;
  for (size_t k = 1; k < n; ++k) {
    double d = Distance(ring[0], ring[k]);
    if (d > far_d) {
      far_d = d;
      far = k;
    }
  }
  std::vector<bool> keep(n, false);
  keep[0] = keep[far] = true;
  std::vector<std::pair<size_t, size_t>> stack = {{0, far}, {far, n}};
  while (!stack.empty()) {
    auto [i, j] = stack.back();
    stack.pop_back();
    const PhasePoint& p = ring[i];
    const PhasePoint& q = ring[j % n];
    double worst = -1.0;
    size_t at = i;
    for (size_t k = i + 1; k < j; ++k) {
      double d = PointSegmentDistance(ring[k], p, q);
      if (d > worst) {
        worst = d;
        at = k;
      }
    }
    if (worst > tol) {
      keep[at] = true;
      stack.push_back({i, at});
      stack.push_back({at, j});
    }
  }
  std::vector<PhasePoint> out;
  for (size_t k = 0; k < n; ++k) {
    if (keep[k]) out.push_back(ring[k]);
  }
  if (out.size() < 3) return ring;
  return out;
}

Vec2 CanonicalShift(const Vec2& centroid) {
  return {WrapToPi(centroid.x) - centroid.x, WrapToPi(centroid.y) - centroid.y};
}

CollisionPolygon MakePolygon(std::vector<PhasePoint> vertices, NeighborRelation rel,
                             double res) {
  CollisionPolygon poly;
  poly.vertices = std::move(vertices);
  poly.relation = rel;
  poly.resolution = res;
  poly.UpdateBounds();
  return poly;
}

// Grid soundness: collided region must not swallow a free grid node, and every
// colliding node must lie inside or within one step of the boundary.
bool GridConsistent(const CollisionRegion& region, const ModuleGeometry& geom,
                    double res) {
  const int count = static_cast<int>(std::ceil(kTwoPi / res));
  for (int a = 0; a < count; ++a) {
    for (int b = 0; b < count; ++b) {
      PhasePoint p{-kPi + a * res, -kPi + b * res};
      bool truth = TailsCollide(p.x, p.y, NeighborRelation::kPlusX, geom);
      bool in = region.Contains(p);
      if (in && !truth && region.BoundaryDistance(p) > 1e-9) return false;
      if (!in && truth && region.BoundaryDistance(p) > res) return false;
    }
  }
  return true;
}

CollisionRegion BuildPlusXRegion(const ModuleGeometry& geom, double res) {
  ContourBuilder builder(geom, res);
  if (!builder.AnyInside()) {
    throw EmptyRegionError("tails never collide on the sampled grid");
  }
  // Every component shows up once per 2 pi translate inside the window; keep
  // the copy farthest from the window edge and move it so its centroid is
  // canonical.
  const double lo = builder.WindowLo() + 1.5 * res;
  const double hi = builder.WindowHi() - 1.5 * res;
  struct Candidate {
    std::vector<PhasePoint> ring;
    Vec2 canonical;
    double clearance;
  };
  std::vector<Candidate> kept;
  for (auto& ring : builder.Rings()) {
    if (ring.size() < 3 || SignedArea(ring) <= 0.0) continue;  // holes are filled
    Box box;
    for (const PhasePoint& p : ring) box.Expand(p);
    const double clearance =
        std::min({box.lo.x - lo, box.lo.y - lo, hi - box.hi.x, hi - box.hi.y});
    if (clearance <= 0.0) continue;
    const Vec2 c = Centroid(ring);
    const Vec2 canonical{WrapToPi(c.x), WrapToPi(c.y)};
    auto same = std::find_if(kept.begin(), kept.end(), [&](const Candidate& k) {
      const double dx = WrapToPi(k.canonical.x - canonical.x);
      const double dy = WrapToPi(k.canonical.y - canonical.y);
      return std::hypot(dx, dy) < 2.0 * res;
    });
    if (same == kept.end()) {
      kept.push_back({std::move(ring), canonical, clearance});
    } else if (clearance > same->clearance) {
      *same = {std::move(ring), canonical, clearance};
    }
  }
  std::vector<std::vector<PhasePoint>> outer;
  for (Candidate& k : kept) {
    const Vec2 d = CanonicalShift(Centroid(k.ring));
    for (PhasePoint& p : k.ring) p += d;
    outer.push_back(std::move(k.ring));
  }
  if (outer.empty()) throw EmptyRegionError("no closed collision component found");

  CollisionRegion region;
  region.relation = NeighborRelation::kPlusX;
  region.resolution = res;
  for (double tol = 0.25 * res; ; tol *= 0.5) {
    region.polygons.clear();
    const double eff = tol < 1e-6 * res ? 0.0 : tol;
    for (const auto& ring : outer) {
      region.polygons.push_back(
          MakePolygon(SimplifyRing(ring, eff), NeighborRelation::kPlusX, res));
    }
    if (eff == 0.0 || GridConsistent(region, geom, res)) break;
  }
  return region;
}

CollisionRegion Transform(const CollisionRegion& base, NeighborRelation rel) {
  const bool swap = rel == NeighborRelation::kMinusX || rel == NeighborRelation::kMinusY;
  const bool shift = rel == NeighborRelation::kPlusY || rel == NeighborRelation::kMinusY;
  CollisionRegion out;
  out.relation = rel;
  out.resolution = base.resolution;
  for (const CollisionPolygon& poly : base.polygons) {
    std::vector<PhasePoint> v = poly.vertices;
    if (shift) {
      for (PhasePoint& p : v) p += Vec2{0.5 * kPi, 0.5 * kPi};
    }
    if (swap) {
      for (PhasePoint& p : v) std::swap(p.x, p.y);
      std::reverse(v.begin(), v.end());
    }
    Vec2 d = CanonicalShift(Centroid(v));
    for (PhasePoint& p : v) p += d;
    out.polygons.push_back(MakePolygon(std::move(v), rel, base.resolution));
  }
  return out;
}

}  // namespace

CollisionRegion BuildCollisionRegion(NeighborRelation rel, const ModuleGeometry& geom,
                                     double resolution) {
  geom.Validate();
  if (!(resolution > 0.0)) throw ConfigError("resolution must be positive");
  CollisionRegion plus_x = BuildPlusXRegion(geom, resolution);
  if (rel == NeighborRelation::kPlusX) return plus_x;
  return Transform(plus_x, rel);
}

}  // namespace modboat
