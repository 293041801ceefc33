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

#ifndef MODBOAT_COLLISION_MODEL_H_
#define MODBOAT_COLLISION_MODEL_H_

#include <array>
#include <filesystem>
#include <string>

#include "modboat/doc_table.h"
#include "modboat/geometry.h"

namespace modboat {

// Everything the solvers need to reason about tail collisions for one module
// geometry: the exact regions for all four relations and the DoC tables.
// Tables exist for +x and +y only; -x and -y lookups swap the two modules.
class CollisionModel {
 public:
  CollisionModel(const ModuleGeometry& geometry, double resolution, DocTable plus_x,
                 DocTable plus_y);

  const ModuleGeometry& geometry() const { return geometry_; }
  double resolution() const { return resolution_; }
  const CollisionRegion& region(NeighborRelation rel) const {
    return regions_[static_cast<size_t>(rel)];
  }
  const DocTable& table(NeighborRelation rel) const;
  // Any of the two tables; both share axes.
  const DocTable& grid() const { return plus_x_; }

  // Table DoC of module i against neighbour j sitting at `rel` of i.
  float Doc(NeighborRelation rel, const GridIndex& i, const GridIndex& j) const;

 private:
  ModuleGeometry geometry_;
  double resolution_;
  std::array<CollisionRegion, 4> regions_;
  DocTable plus_x_;
  DocTable plus_y_;
};

CollisionModel BuildCollisionModel(const ModuleGeometry& geometry, double resolution = 0.1);

// Cache file name; embeds the geometry fingerprint so stale tables are never
// picked up for a different geometry.
std::filesystem::path TableCachePath(const std::filesystem::path& dir, NeighborRelation rel,
                                     const ModuleGeometry& geometry, double resolution);

// Builds the +x and +y tables and writes them to `dir`. Returns the paths.
std::array<std::filesystem::path, 2> WriteTableCache(const std::filesystem::path& dir,
                                                     const ModuleGeometry& geometry,
                                                     double resolution = 0.1);

// Loads cached tables when present and valid, otherwise builds and stores
// them. A cached file whose header disagrees with the live geometry is
// rejected with TableFormatError.
CollisionModel LoadOrBuildCollisionModel(const ModuleGeometry& geometry, double resolution,
                                         const std::filesystem::path& dir);

}  // namespace modboat

#endif  // MODBOAT_COLLISION_MODEL_H_
