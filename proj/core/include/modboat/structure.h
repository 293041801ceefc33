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

#ifndef MODBOAT_STRUCTURE_H_
#define MODBOAT_STRUCTURE_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace modboat {

// Lattice offset of module j relative to module i in the structure frame.
enum class NeighborRelation : std::uint8_t {
  kPlusX = 0,
  kMinusX = 1,
  kPlusY = 2,
  kMinusY = 3,
};

NeighborRelation Opposite(NeighborRelation rel);
bool IsHorizontal(NeighborRelation rel);
std::string_view ToString(NeighborRelation rel);

struct LatticeCell {
  int col = 0;
  int row = 0;
  friend bool operator==(const LatticeCell&, const LatticeCell&) = default;
};

// Module centre in the structure frame (m), relative to the centre of mass.
// x is the sway axis and y the surge axis.
struct ModulePose {
  double x = 0.0;
  double y = 0.0;
};

// Docked pair stored once, with j at the +x or +y site of i.
struct DockedPair {
  int i = 0;
  int j = 0;
  NeighborRelation relation = NeighborRelation::kPlusX;
};

// Occupied site next to a module, with its offset as seen from that module.
struct Neighbor {
  int index = 0;
  NeighborRelation relation = NeighborRelation::kPlusX;
};

// A connected set of docked modules on the square lattice.
class Structure {
 public:
  // `cells` must be unique and 4-connected. `spacing` is the physical
  // centre-to-centre distance in metres.
  Structure(std::vector<LatticeCell> cells, double spacing);

  // Rows are listed top to bottom; any character other than '.' or ' '
  // marks a module. {"XXX"} is the three-module parallel configuration.
  static Structure FromLayout(const std::vector<std::string>& rows,
                              double spacing);
  static Structure Rectangle(int cols, int rows, double spacing);

  int size() const { return static_cast<int>(cells_.size()); }
  double spacing() const { return spacing_; }
  std::span<const LatticeCell> cells() const { return cells_; }
  std::span<const ModulePose> poses() const { return poses_; }
  std::span<const DockedPair> pairs() const { return pairs_; }
  std::span<const Neighbor> neighbors(int i) const { return neighbors_[i]; }

  // Module indices per lattice row (sorted by column) and per column
  // (sorted by row); these index the horizontal and vertical sub-problems.
  const std::vector<std::vector<int>>& rows() const { return rows_; }
  const std::vector<std::vector<int>>& columns() const { return columns_; }

  // Largest bounding-box side in metres.
  double Length() const;

  std::vector<std::string> Layout() const;

 private:
  std::vector<LatticeCell> cells_;
  double spacing_;
  std::vector<ModulePose> poses_;
  std::vector<DockedPair> pairs_;
  std::vector<std::vector<Neighbor>> neighbors_;
  std::vector<std::vector<int>> rows_;
  std::vector<std::vector<int>> columns_;
};

}  // namespace modboat

#endif  // MODBOAT_STRUCTURE_H_
