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

#include "modboat/angles.h"

#include <cmath>

namespace modboat {

double WrapToPi(double angle) {
  double wrapped = std::fmod(angle + kPi, kTwoPi);
  if (wrapped < 0.0) wrapped += kTwoPi;
  wrapped -= kPi;
  // fmod can round up to exactly pi for inputs just below an odd multiple.
  if (wrapped >= kPi) wrapped -= kTwoPi;
  return wrapped;
}

double WrapError(double angle) {
  double wrapped = -WrapToPi(-angle);
  return wrapped;
}

}  // namespace modboat
