// Copyright 2026 The egoscene Authors
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

#include "egoscene/voxel.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "egoscene/errors.h"

namespace egoscene {

VoxelGridSpec VoxelGridSpec::Cubic(const Vec3& origin, double voxel_size,
                                   const VoxelIndex& dims) {
  VoxelGridSpec s;
  s.origin = origin;
  s.voxel_size = Vec3::Constant(voxel_size);
  s.dims = dims;
  s.Validate();
  return s;
}

VoxelGridSpec VoxelGridSpec::FromRange(const Vec3& lo, const Vec3& hi,
                                       const VoxelIndex& dims) {
  if (!lo.allFinite() || !hi.allFinite() || !(hi.array() > lo.array()).all()) {
    throw InvalidArgument("grid range must satisfy lo < hi on every axis");
  }
  if (dims[0] < 1 || dims[1] < 1 || dims[2] < 1) {
    throw InvalidArgument("grid dims must be >= 1");
  }
  VoxelGridSpec s;
  s.origin = lo;
  s.dims = dims;
  for (int a = 0; a < 3; ++a) s.voxel_size[a] = (hi[a] - lo[a]) / dims[a];
  s.Validate();
  return s;
}

void VoxelGridSpec::Validate() const {
  if (!origin.allFinite() || !voxel_size.allFinite() ||
      !(voxel_size.array() > 0.0).all()) {
    throw InvalidArgument("grid spec: voxel size must be positive and finite");
  }
  if (dims[0] < 1 || dims[1] < 1 || dims[2] < 1) {
    throw InvalidArgument("grid spec: dims must be >= 1");
  }
}

VoxelIndex VoxelGridSpec::Unlinear(std::size_t k) const {
  VoxelIndex i;
  i[0] = int(k % std::size_t(dims[0]));
  k /= std::size_t(dims[0]);
  i[1] = int(k % std::size_t(dims[1]));
  i[2] = int(k / std::size_t(dims[1]));
  return i;
}

std::optional<VoxelIndex> VoxelGridSpec::Locate(const Vec3& p) const {
  if (!p.allFinite()) return std::nullopt;
  VoxelIndex i;
  for (int a = 0; a < 3; ++a) {
    const std::int64_t k = CellCoordinate(p[a], origin[a], voxel_size[a]);
    if (k < 0 || k >= dims[a]) return std::nullopt;
    i[a] = int(k);
  }
  return i;
}

Vec3 VoxelGridSpec::Center(const VoxelIndex& i) const {
  return origin + (Vec3(i[0], i[1], i[2]).array() + 0.5).matrix().cwiseProduct(
                      voxel_size);
}

VoxelGridSpec DefaultOccupancySpec() {
  return VoxelGridSpec::Cubic(Vec3(-3.2, -3.2, -0.78), 0.16, {40, 40, 16});
}

void LabeledPointCloud::Validate() const {
  if (points.size() != labels.size()) {
    throw InvalidArgument("labeled cloud: points and labels differ in length");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!points[i].allFinite()) {
      throw InvalidArgument("labeled cloud: point " + std::to_string(i) +
                            " is not finite");
    }
  }
}

std::int64_t CellCoordinate(double p, double origin, double size) {
  auto k = std::int64_t(std::floor((p - origin) / size));
  // The division can round across a cell boundary; settle on the cell whose
  // half-open interval, evaluated the same way, actually contains p.
  while (origin + double(k) * size > p) --k;
  while (origin + double(k + 1) * size <= p) ++k;
  return k;
}

VoxelizedCloud VoxelizePoints(const PointCloud& cloud, double voxel_size) {
  if (cloud.empty()) throw EmptyInput("VoxelizePoints: empty cloud");
  if (!(voxel_size > 0.0) || !std::isfinite(voxel_size)) {
    throw InvalidArgument("VoxelizePoints: voxel size must be positive");
  }
  VoxelizedCloud out;
  out.voxel_size = voxel_size;
  out.origin = cloud.front();
  for (const Vec3& p : cloud) {
    if (!p.allFinite()) throw InvalidArgument("VoxelizePoints: non-finite point");
    out.origin = out.origin.cwiseMin(p);
  }
  std::map<std::array<std::int64_t, 3>, std::vector<std::size_t>> cells;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    std::array<std::int64_t, 3> k;
    for (int a = 0; a < 3; ++a) {
      k[a] = CellCoordinate(cloud[i][a], out.origin[a], voxel_size);
    }
    cells[k].push_back(i);
  }
  out.cells.reserve(cells.size());
  for (auto& [k, pts] : cells) out.cells.push_back({k, std::move(pts)});
  return out;
}

OccupancyGrid OccupancyFromLabels(const LabeledPointCloud& cloud,
                                  const VoxelGridSpec& spec) {
  spec.Validate();
  cloud.Validate();
  std::vector<std::pair<std::size_t, int>> hits;
  hits.reserve(cloud.points.size());
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    if (cloud.labels[i] < 0) {
      throw InvalidArgument("OccupancyFromLabels: negative class id at point " +
                            std::to_string(i));
    }
    if (auto v = spec.Locate(cloud.points[i])) {
      hits.emplace_back(spec.Linear(*v), cloud.labels[i]);
    }
  }
  // Sorting by (cell, class) makes the vote independent of point order and
  // lets the first maximal run win, i.e. the smallest class id on ties.
  std::sort(hits.begin(), hits.end());
  OccupancyGrid grid(spec);
  std::size_t i = 0;
  while (i < hits.size()) {
    const std::size_t cell = hits[i].first;
    int best_label = kEmptyLabel;
    std::size_t best_count = 0;
    while (i < hits.size() && hits[i].first == cell) {
      const int label = hits[i].second;
      std::size_t count = 0;
      while (i < hits.size() && hits[i].first == cell &&
             hits[i].second == label) {
        ++count;
        ++i;
      }
      if (count > best_count) {
        best_count = count;
        best_label = label;
      }
    }
    grid.labels[cell] = best_label;
  }
  return grid;
}

std::size_t VoxelMask::CountVisible() const {
  return std::size_t(std::count_if(visible.begin(), visible.end(),
                                   [](std::uint8_t v) { return v != 0; }));
}

}  // namespace egoscene
