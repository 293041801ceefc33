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

#ifndef MODBOAT_DOC_METRIC_H_
#define MODBOAT_DOC_METRIC_H_

#include <span>

#include "modboat/geometry.h"

namespace modboat {

// Signed distance to collision in phase-space radians: positive when the
// motion stays clear, negative with magnitude equal to the along-trajectory
// distance needed to get out of the collided set.
using DocValue = double;

// DoC of segment AB against one simple polygon (convex or not).
//
//  1. AB disjoint from the polygon: +min Euclidean distance.
//  2. A outside, B inside, entry G: -|BG| (mirrored when only A is inside).
//  3. AB inside, supporting line leaves at G (behind A) and H (past B):
//     -(|AB| + min(|AG|, |BH|)).
//  4. AB passes through, entering at G and leaving at H:
//     -(|GH| + min(|AG|, |BH|)).
//
// Each maximal inside run of the supporting line is scored separately and the
// most severe one is returned. A degenerate segment is a point: plus or minus
// its distance to the boundary.
DocValue SegmentPolygonDoc(const PhaseSegment& seg, std::span<const PhasePoint> ring);
DocValue SegmentPolygonDoc(const PhaseSegment& seg, const CollisionPolygon& poly);

// Most conservative DoC over every 2 pi translate of every polygon of the
// region that can bind. Invariant under shifting seg by multiples of 2 pi.
DocValue DocWrapped(const PhaseSegment& seg, const CollisionRegion& region);

}  // namespace modboat

#endif  // MODBOAT_DOC_METRIC_H_
