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

#include "modboat/collision_model.h"

#include <cstdio>

#include "modboat/errors.h"

namespace modboat {

CollisionModel::CollisionModel(const ModuleGeometry& geometry, double resolution,
                               DocTable plus_x, DocTable plus_y)
    : geometry_(geometry),
      resolution_(resolution),
      plus_x_(std::move(plus_x)),
      plus_y_(std::move(plus_y)) {
  if (plus_x_.relation() != NeighborRelation::kPlusX ||
      plus_y_.relation() != NeighborRelation::kPlusY) {
    throw TableFormatError("collision model needs +x and +y tables");
  }
  if (plus_x_.resolution() != resolution || plus_y_.resolution() != resolution) {
    throw TableFormatError("DoC table resolution does not match the model");
  }
  for (auto rel : {NeighborRelation::kPlusX, NeighborRelation::kMinusX,
                   NeighborRelation::kPlusY, NeighborRelation::kMinusY}) {
    regions_[static_cast<size_t>(rel)] = BuildCollisionRegion(rel, geometry_, resolution_);
  }
}

const DocTable& CollisionModel::table(NeighborRelation rel) const {
  return IsHorizontal(rel) ? plus_x_ : plus_y_;
}

float CollisionModel::Doc(NeighborRelation rel, const GridIndex& i, const GridIndex& j) const {
  switch (rel) {
    case NeighborRelation::kPlusX:
      return plus_x_.At(i, j);
    case NeighborRelation::kMinusX:
      return plus_x_.At(j, i);
    case NeighborRelation::kPlusY:
      return plus_y_.At(i, j);
    case NeighborRelation::kMinusY:
      return plus_y_.At(j, i);
  }
  return 0.0f;
}

CollisionModel BuildCollisionModel(const ModuleGeometry& geometry, double resolution) {
  DocTable px = DocTable::Build(BuildCollisionRegion(NeighborRelation::kPlusX, geometry, resolution));
  DocTable py = DocTable::Build(BuildCollisionRegion(NeighborRelation::kPlusY, geometry, resolution));
  return CollisionModel(geometry, resolution, std::move(px), std::move(py));
}

std::filesystem::path TableCachePath(const std::filesystem::path& dir, NeighborRelation rel,
                                     const ModuleGeometry& geometry, double resolution) {
  char name[96];
  std::snprintf(name, sizeof(name), "doc_%s_%016llx_r%g_v%u.doct",
                rel == NeighborRelation::kPlusX ? "px" : "py",
                static_cast<unsigned long long>(geometry.Fingerprint()), resolution,
                DocTable::kFormatVersion);
  return dir / name;
}

std::array<std::filesystem::path, 2> WriteTableCache(const std::filesystem::path& dir,
                                                     const ModuleGeometry& geometry,
                                                     double resolution) {
  std::filesystem::create_directories(dir);
  std::array<std::filesystem::path, 2> paths;
  int k = 0;
  for (auto rel : {NeighborRelation::kPlusX, NeighborRelation::kPlusY}) {
    DocTable t = DocTable::Build(BuildCollisionRegion(rel, geometry, resolution));
    paths[k] = TableCachePath(dir, rel, geometry, resolution);
    t.Save(paths[k]);
    ++k;
  }
  return paths;
}

CollisionModel LoadOrBuildCollisionModel(const ModuleGeometry& geometry, double resolution,
                                         const std::filesystem::path& dir) {
  const auto px_path = TableCachePath(dir, NeighborRelation::kPlusX, geometry, resolution);
  const auto py_path = TableCachePath(dir, NeighborRelation::kPlusY, geometry, resolution);
  if (!std::filesystem::exists(px_path) || !std::filesystem::exists(py_path)) {
    WriteTableCache(dir, geometry, resolution);
  }
  DocTable px = DocTable::Load(px_path);
  DocTable py = DocTable::Load(py_path);
  if (px.relation() != NeighborRelation::kPlusX || py.relation() != NeighborRelation::kPlusY ||
      px.resolution() != resolution || py.resolution() != resolution) {
    throw TableFormatError("cached DoC table header does not match the requested geometry");
  }
  return CollisionModel(geometry, resolution, std::move(px), std::move(py));
}

}  // namespace modboat
