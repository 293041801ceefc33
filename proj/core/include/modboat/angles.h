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

#ifndef MODBOAT_ANGLES_H_
#define MODBOAT_ANGLES_H_

#include <numbers>

namespace modboat {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Canonical representative in [-pi, pi).
double WrapToPi(double angle);

// Representative in (-pi, pi], used for yaw errors.
double WrapError(double angle);

// Sign with sign(0) = 0.
constexpr int Sign(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace modboat

#endif  // MODBOAT_ANGLES_H_
