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

#ifndef MODBOAT_DOC_TABLE_H_
#define MODBOAT_DOC_TABLE_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "modboat/doc_metric.h"
#include "modboat/geometry.h"

namespace modboat {

// Uniform axis min + k * step, k in [0, count).
struct GridAxis {
  double min = 0.0;
  double step = 0.0;
  std::uint32_t count = 0;

  friend bool operator==(const GridAxis&, const GridAxis&) = default;
};

// Position of one module's (phi0, amp) on the table grid.
struct GridIndex {
  int phi = 0;
  int amp = 0;
  friend bool operator==(const GridIndex&, const GridIndex&) = default;
};

struct DocTriple {
  DocValue d0 = 0.0;
  DocValue d_phi = 0.0;
  DocValue d_amp = 0.0;
};

// Precomputed DoC of the swim trajectory for every (phi0_i, A_i, phi0_j, A_j)
// on the grid, stored row-major as float.
//
// Cache file layout (little-endian): "DOCT", u32 version, u8 relation,
// f64 resolution, four axes of (f64 min, f64 step, u32 count), then the
// values as f32.
class DocTable {
 public:
  static constexpr std::uint32_t kFormatVersion = 1;
  static constexpr double kMaxAmplitude = 2.6;

  DocTable() = default;

  // Parallel over the first axis; output is identical for any thread count.
  static DocTable Build(const CollisionRegion& region, unsigned threads = 0);

  // The grid a table of this resolution uses, for callers that snap
  // parameters without owning a table.
  static GridAxis PhiAxisFor(double resolution);
  static GridAxis AmpAxisFor(double resolution);

  NeighborRelation relation() const { return relation_; }
  double resolution() const { return resolution_; }
  const GridAxis& phi_axis() const { return phi_axis_; }
  const GridAxis& amp_axis() const { return amp_axis_; }
  std::span<const float> values() const { return values_; }

  double PhiAt(int k) const;
  double AmpAt(int k) const;
  // Nearest grid cell, wrapping on the circle.
  int PhiIndex(double phi) const;
  // Nearest grid cell; throws OutOfRangeError beyond the axis.
  int AmpIndex(double amp) const;
  GridIndex IndexOf(const WaveformParams& p) const;
  WaveformParams ParamsAt(const GridIndex& g) const;

  float At(const GridIndex& i, const GridIndex& j) const {
    return values_[Offset(i, j)];
  }
  float Lookup(const WaveformParams& p_i, const WaveformParams& p_j) const;

  void Write(std::ostream& out) const;
  static DocTable Read(std::istream& in);
  void Save(const std::filesystem::path& path) const;
  static DocTable Load(const std::filesystem::path& path);

  friend bool operator==(const DocTable&, const DocTable&) = default;

 private:
  size_t Offset(const GridIndex& i, const GridIndex& j) const {
    const size_t np = phi_axis_.count;
    const size_t na = amp_axis_.count;
    return ((static_cast<size_t>(i.phi) * na + i.amp) * np + j.phi) * na + j.amp;
  }

  NeighborRelation relation_ = NeighborRelation::kPlusX;
  double resolution_ = 0.0;
  GridAxis phi_axis_;
  GridAxis amp_axis_;
  std::vector<float> values_;
};

// D0 at the current parameters, D_phi after phi0_i += step_phi and D_A after
// A_i += step_amp, neighbour held fixed. Throws OutOfRangeError when an
// amplitude would leave the table.
DocTriple ComputeDocTriple(const WaveformParams& p_i, const WaveformParams& p_j,
                           double step_phi, double step_amp, const DocTable& table);

}  // namespace modboat

#endif  // MODBOAT_DOC_TABLE_H_
