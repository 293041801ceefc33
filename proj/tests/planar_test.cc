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

// Tests for angle wrapping and the small planar geometry kit.

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "modboat/angles.h"
#include "modboat/planar.h"
#include "test_support.h"

namespace modboat {
namespace {

using ::modboat::testing::Uniform;

TEST(AnglesTest, WrapToPiIsHalfOpen) {
  EXPECT_DOUBLE_EQ(WrapToPi(kPi), -kPi);
  EXPECT_DOUBLE_EQ(WrapToPi(-kPi), -kPi);
  EXPECT_NEAR(WrapToPi(3.0 * kPi + 0.25), -kPi + 0.25, 1e-12);
  EXPECT_DOUBLE_EQ(WrapToPi(0.5), 0.5);
}

TEST(AnglesTest, WrapErrorIsHalfOpenOnTheOtherSide) {
  EXPECT_DOUBLE_EQ(WrapError(-kPi), kPi);
  EXPECT_DOUBLE_EQ(WrapError(kPi), kPi);
  EXPECT_NEAR(WrapError(-0.5 * kPi - kTwoPi), -0.5 * kPi, 1e-12);
}

TEST(AnglesTest, WrapIsPeriodic) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 1000; ++k) {
    const double a = Uniform(rng, -50.0, 50.0);
    const double w = WrapToPi(a);
    EXPECT_GE(w, -kPi);
    EXPECT_LT(w, kPi);
    EXPECT_NEAR(std::remainder(w - a, kTwoPi), 0.0, 1e-9);
    EXPECT_NEAR(WrapToPi(a + kTwoPi), w, 1e-9);
  }
}

TEST(AnglesTest, SignOfZeroIsZero) {
  EXPECT_EQ(Sign(0.0), 0);
  EXPECT_EQ(Sign(-3.0), -1);
  EXPECT_EQ(Sign(1e-300), 1);
}

TEST(PlanarTest, SegmentIntersection) {
  EXPECT_TRUE(SegmentsIntersect({0, 0}, {1, 1}, {0, 1}, {1, 0}));
  EXPECT_FALSE(SegmentsIntersect({0, 0}, {1, 0}, {0, 1}, {1, 1}));
  // Collinear overlap and a shared endpoint both count.
  EXPECT_TRUE(SegmentsIntersect({0, 0}, {2, 0}, {1, 0}, {3, 0}));
  EXPECT_TRUE(SegmentsIntersect({0, 0}, {1, 0}, {1, 0}, {1, 1}));
  EXPECT_FALSE(SegmentsIntersect({0, 0}, {1, 0}, {2, 0}, {3, 0}));
}

TEST(PlanarTest, SegmentDistances) {
  EXPECT_DOUBLE_EQ(PointSegmentDistance({0.5, 2.0}, {0, 0}, {1, 0}), 2.0);
  EXPECT_DOUBLE_EQ(PointSegmentDistance({3.0, 4.0}, {0, 0}, {0, 0}), 5.0);
  EXPECT_DOUBLE_EQ(SegmentSegmentDistance({0, 0}, {1, 0}, {0, 1}, {1, 1}), 1.0);
  EXPECT_DOUBLE_EQ(SegmentSegmentDistance({0, 0}, {1, 1}, {0, 1}, {1, 0}), 0.0);
}

TEST(PlanarTest, SegmentDistanceMatchesSampling) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    Vec2 p[4];
    for (Vec2& v : p) v = {Uniform(rng, -1, 1), Uniform(rng, -1, 1)};
    double sampled = HUGE_VAL;
    for (int i = 0; i <= 400; ++i) {
      const Vec2 q = p[0] + (i / 400.0) * (p[1] - p[0]);
      sampled = std::min(sampled, PointSegmentDistance(q, p[2], p[3]));
    }
    const double exact = SegmentSegmentDistance(p[0], p[1], p[2], p[3]);
    EXPECT_LE(exact, sampled + 1e-12);
    EXPECT_NEAR(exact, sampled, 1e-2);
  }
}

TEST(PlanarTest, PolygonAreaCentroidAndContainment) {
  const std::vector<Vec2> square = {{0, 0}, {2, 0}, {2, 2}, {0, 2}};
  EXPECT_DOUBLE_EQ(SignedArea(square), 4.0);
  const Vec2 c = Centroid(square);
  EXPECT_DOUBLE_EQ(c.x, 1.0);
  EXPECT_DOUBLE_EQ(c.y, 1.0);
  EXPECT_TRUE(PointInPolygon({1, 1}, square));
  EXPECT_FALSE(PointInPolygon({3, 1}, square));
  const std::vector<Vec2> cw(square.rbegin(), square.rend());
  EXPECT_DOUBLE_EQ(SignedArea(cw), -4.0);
}

TEST(PlanarTest, BoxGap) {
  Box a;
  a.Expand({0, 0});
  a.Expand({1, 1});
  Box b = a.Shifted({4, 5});
  EXPECT_DOUBLE_EQ(BoxGap(a, b), 5.0);
  EXPECT_DOUBLE_EQ(BoxGap(a, a.Shifted({0.5, 0.5})), 0.0);
  EXPECT_TRUE(Box{}.Empty());
}

}  // namespace
}  // namespace modboat
