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

#ifndef MODBOAT_ERRORS_H_
#define MODBOAT_ERRORS_H_

#include <stdexcept>
#include <string>

namespace modboat {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// No grid point of the pairwise phase space produced a tail collision.
class EmptyRegionError : public Error {
 public:
  using Error::Error;
};

// An amplitude lies in the thrust dead band (0, 0.9) or beyond 2.6.
class OutOfBandError : public Error {
 public:
  using Error::Error;
};

// A table lookup left the amplitude axis.
class OutOfRangeError : public Error {
 public:
  using Error::Error;
};

// The swim-cycle search never visited a collision-free candidate.
class NoValidSolutionError : public Error {
 public:
  using Error::Error;
};

// Neither amplitude-negation branch admits a collision-free transition.
class NoTransitionError : public Error {
 public:
  using Error::Error;
};

class NumericalBlowupError : public Error {
 public:
  using Error::Error;
};

// Malformed or mismatched DoC table cache file.
class TableFormatError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace modboat

#endif  // MODBOAT_ERRORS_H_
