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

#ifndef MODBOAT_GEOMETRY_H_
#define MODBOAT_GEOMETRY_H_

#include <cstdint>
#include <vector>

#include "modboat/planar.h"
#include "modboat/structure.h"

namespace modboat {

// Module and tail dimensions. Only ratios matter for collision checks, so the
// lattice pitch is normally 1.
//
// Each tail is a radial segment from `tail_inner` to `tail_outer` along the
// motor angle, swept by a disc of radius `tail_half_width`; two tails collide
// when their segments come within 2 * tail_half_width of each other. A zero
// half-width gives bare segment intersection.
struct ModuleGeometry {
  double lattice_pitch = 1.0;
  double tail_inner = 0.0;
  double tail_outer = 0.7;
  double hull_radius = 0.5;
  double tail_half_width = 0.01;

  // Throws ConfigError on inconsistent dimensions. A tail too short to reach
  // the neighbour is accepted here and surfaces as EmptyRegionError later.
  void Validate() const;

  // Stable 64-bit digest of every field, used to key table caches.
  std::uint64_t Fingerprint() const;
};

// One cycle of phi(t) = phi0 + amp * cos(2 pi t / T).
struct WaveformParams {
  double phi0 = 0.0;
  double amp = 0.0;
  friend bool operator==(const WaveformParams&, const WaveformParams&) = default;
};

// Point of the pairwise phase space: x = phi_i, y = phi_j.
using PhasePoint = Vec2;

struct PhaseSegment {
  PhasePoint a;
  PhasePoint b;

  double Length() const { return Distance(a, b); }
  bool Degenerate() const { return a == b; }
  PhaseSegment Shifted(const Vec2& d) const { return {a + d, b + d}; }
};

// One connected component of the collided set, counterclockwise. The
// component is stored at the 2 pi shift that puts its centroid in
// [-pi, pi)^2, so vertices can reach slightly past that square.
struct CollisionPolygon {
  std::vector<PhasePoint> vertices;
  NeighborRelation relation = NeighborRelation::kPlusX;
  double resolution = 0.1;
  Box bounds;

  void UpdateBounds();
};

// The collided set of one neighbour relation: the union of `polygons` and all
// of their (2 pi m, 2 pi n) translates.
struct CollisionRegion {
  NeighborRelation relation = NeighborRelation::kPlusX;
  double resolution = 0.1;
  std::vector<CollisionPolygon> polygons;

  bool Contains(const PhasePoint& p) const;
  // Distance from p to the nearest boundary edge of any translate.
  double BoundaryDistance(const PhasePoint& p) const;
};

bool TailsCollide(double phi_i, double phi_j, NeighborRelation rel,
                  const ModuleGeometry& geom);

// Samples TailsCollide on the grid -pi + k * resolution, contours the boolean
// field with marching squares (edge crossings refined by bisection on the
// exact predicate) and simplifies the rings. Holes are filled. Relations other
// than +x are exact transforms of the +x region.
//
// Throws EmptyRegionError if no grid point collides.
CollisionRegion BuildCollisionRegion(NeighborRelation rel,
                                     const ModuleGeometry& geom,
                                     double resolution = 0.1);

// Straight phase-space segment traced by two modules sharing the cosine phase.
PhaseSegment SwimTrajectory(const WaveformParams& p_i, const WaveformParams& p_j);

}  // namespace modboat

#endif  // MODBOAT_GEOMETRY_H_
