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

#include "modboat/structure.h"

#include <algorithm>
#include <map>
#include <queue>

#include "modboat/errors.h"

namespace modboat {

NeighborRelation Opposite(NeighborRelation rel) {
  switch (rel) {
    case NeighborRelation::kPlusX:
      return NeighborRelation::kMinusX;
    case NeighborRelation::kMinusX:
      return NeighborRelation::kPlusX;
    case NeighborRelation::kPlusY:
      return NeighborRelation::kMinusY;
    case NeighborRelation::kMinusY:
      return NeighborRelation::kPlusY;
  }
  return rel;
}

bool IsHorizontal(NeighborRelation rel) {
  return rel == NeighborRelation::kPlusX || rel == NeighborRelation::kMinusX;
}

std::string_view ToString(NeighborRelation rel) {
  switch (rel) {
    case NeighborRelation::kPlusX:
      return "+x";
    case NeighborRelation::kMinusX:
      return "-x";
    case NeighborRelation::kPlusY:
      return "+y";
    case NeighborRelation::kMinusY:
      return "-y";
  }
  return "?";
}

Structure::Structure(std::vector<LatticeCell> cells, double spacing)
    : cells_(std::move(cells)), spacing_(spacing) {
  if (cells_.empty()) throw ConfigError("structure has no modules");
  if (!(spacing_ > 0.0)) throw ConfigError("module spacing must be positive");

  std::map<std::pair<int, int>, int> index;
  for (int k = 0; k < size(); ++k) {
    auto [it, fresh] = index.emplace(std::pair{cells_[k].col, cells_[k].row}, k);
    if (!fresh) throw ConfigError("duplicate lattice cell in structure");
  }

  double mean_col = 0.0;
  double mean_row = 0.0;
  for (const LatticeCell& c : cells_) {
    mean_col += c.col;
    mean_row += c.row;
  }
  mean_col /= size();
  mean_row /= size();
  poses_.reserve(cells_.size());
  for (const LatticeCell& c : cells_) {
    poses_.push_back({(c.col - mean_col) * spacing_, (c.row - mean_row) * spacing_});
  }

  neighbors_.resize(cells_.size());
  auto find = [&](int col, int row) {
    auto it = index.find({col, row});
    return it == index.end() ? -1 : it->second;
  };
  for (int k = 0; k < size(); ++k) {
    const LatticeCell& c = cells_[k];
    if (int j = find(c.col + 1, c.row); j >= 0) {
      pairs_.push_back({k, j, NeighborRelation::kPlusX});
    }
    if (int j = find(c.col, c.row + 1); j >= 0) {
      pairs_.push_back({k, j, NeighborRelation::kPlusY});
    }
    const std::pair<LatticeCell, NeighborRelation> sites[] = {
        {{c.col + 1, c.row}, NeighborRelation::kPlusX},
        {{c.col - 1, c.row}, NeighborRelation::kMinusX},
        {{c.col, c.row + 1}, NeighborRelation::kPlusY},
        {{c.col, c.row - 1}, NeighborRelation::kMinusY},
    };
    for (const auto& [site, rel] : sites) {
      if (int j = find(site.col, site.row); j >= 0) {
        neighbors_[k].push_back({j, rel});
      }
    }
  }

  // Docked structures must be one connected component.
  std::vector<bool> seen(cells_.size(), false);
  std::queue<int> todo;
  todo.push(0);
  seen[0] = true;
  int reached = 1;
  while (!todo.empty()) {
    int k = todo.front();
    todo.pop();
    for (const Neighbor& n : neighbors_[k]) {
      if (!seen[n.index]) {
        seen[n.index] = true;
        ++reached;
        todo.push(n.index);
      }
    }
  }
  if (reached != size()) throw ConfigError("structure layout is not connected");

  std::map<int, std::vector<int>> by_row;
  std::map<int, std::vector<int>> by_col;
  for (int k = 0; k < size(); ++k) {
    by_row[cells_[k].row].push_back(k);
    by_col[cells_[k].col].push_back(k);
  }
  for (auto& [row, members] : by_row) {
    std::sort(members.begin(), members.end(),
              [&](int a, int b) { return cells_[a].col < cells_[b].col; });
    rows_.push_back(members);
  }
  for (auto& [col, members] : by_col) {
    std::sort(members.begin(), members.end(),
              [&](int a, int b) { return cells_[a].row < cells_[b].row; });
    columns_.push_back(members);
  }
}

Structure Structure::FromLayout(const std::vector<std::string>& rows,
                                double spacing) {
  std::vector<LatticeCell> cells;
  const int n_rows = static_cast<int>(rows.size());
  for (int r = 0; r < n_rows; ++r) {
    const std::string& line = rows[r];
    for (int c = 0; c < static_cast<int>(line.size()); ++c) {
      if (line[c] != '.' && line[c] != ' ') {
        cells.push_back({c, n_rows - 1 - r});
      }
    }
  }
  return Structure(std::move(cells), spacing);
}

Structure Structure::Rectangle(int cols, int rows, double spacing) {
  if (cols <= 0 || rows <= 0) throw ConfigError("empty rectangle structure");
  std::vector<LatticeCell> cells;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) cells.push_back({c, r});
  }
  return Structure(std::move(cells), spacing);
}

double Structure::Length() const {
  auto [cmin, cmax] = std::minmax_element(
      cells_.begin(), cells_.end(),
      [](const LatticeCell& a, const LatticeCell& b) { return a.col < b.col; });
  auto [rmin, rmax] = std::minmax_element(
      cells_.begin(), cells_.end(),
      [](const LatticeCell& a, const LatticeCell& b) { return a.row < b.row; });
  int extent = std::max(cmax->col - cmin->col, rmax->row - rmin->row) + 1;
  return extent * spacing_;
}

std::vector<std::string> Structure::Layout() const {
  int cmin = cells_[0].col, cmax = cells_[0].col;
  int rmin = cells_[0].row, rmax = cells_[0].row;
  for (const LatticeCell& c : cells_) {
    cmin = std::min(cmin, c.col);
    cmax = std::max(cmax, c.col);
    rmin = std::min(rmin, c.row);
    rmax = std::max(rmax, c.row);
  }
  std::vector<std::string> out(rmax - rmin + 1, std::string(cmax - cmin + 1, '.'));
  for (const LatticeCell& c : cells_) out[rmax - c.row][c.col - cmin] = 'X';
  return out;
}

}  // namespace modboat
