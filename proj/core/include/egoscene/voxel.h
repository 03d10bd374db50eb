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

#ifndef EGOSCENE_VOXEL_H_
#define EGOSCENE_VOXEL_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "egoscene/camera.h"
#include "egoscene/scene.h"
#include "egoscene/types.h"

namespace egoscene {

inline constexpr int kEmptyLabel = -1;
inline constexpr double kDetectionVoxelSize = 0.01;
inline constexpr double kOcclusionTolerance = 0.1;

using VoxelIndex = std::array<int, 3>;

// Regular grid with half-open cells [origin + i*size, origin + (i+1)*size).
// Cells are stored x-fastest. Voxel extents may differ per axis so coarser
// levels of the default grid (e.g. 10x10x8) keep the same metric range.
struct VoxelGridSpec {
  Vec3 origin = Vec3::Zero();
  Vec3 voxel_size = Vec3::Constant(1.0);
  VoxelIndex dims = {1, 1, 1};

  static VoxelGridSpec Cubic(const Vec3& origin, double voxel_size,
                             const VoxelIndex& dims);
  // Grid covering [lo, hi) per axis with the given cell counts.
  static VoxelGridSpec FromRange(const Vec3& lo, const Vec3& hi,
                                 const VoxelIndex& dims);

  void Validate() const;
  std::size_t NumCells() const {
    return std::size_t(dims[0]) * dims[1] * dims[2];
  }
  std::size_t Linear(const VoxelIndex& i) const {
    return (std::size_t(i[2]) * dims[1] + i[1]) * dims[0] + i[0];
  }
  VoxelIndex Unlinear(std::size_t k) const;
  // Cell containing p, or nullopt outside the grid.
  std::optional<VoxelIndex> Locate(const Vec3& p) const;
  Vec3 Center(const VoxelIndex& i) const;

  friend bool operator==(const VoxelGridSpec& a, const VoxelGridSpec& b) {
    return a.origin == b.origin && a.voxel_size == b.voxel_size &&
           a.dims == b.dims;
  }
};

// 40 x 40 x 16 cells of 0.16 m over [-3.2, 3.2] x [-3.2, 3.2] x [-0.78, 1.78].
VoxelGridSpec DefaultOccupancySpec();

struct OccupancyGrid {
  VoxelGridSpec spec;
  std::vector<int> labels;  // kEmptyLabel or a class id >= 0

  OccupancyGrid() = default;
  explicit OccupancyGrid(const VoxelGridSpec& s)
      : spec(s), labels(s.NumCells(), kEmptyLabel) {}

  int at(const VoxelIndex& i) const { return labels[spec.Linear(i)]; }
};

struct LabeledPointCloud {
  PointCloud points;
  std::vector<int> labels;

  void Validate() const;
};

struct VoxelCell {
  std::array<std::int64_t, 3> index;
  std::vector<std::size_t> points;  // indices into the input cloud
};

struct VoxelizedCloud {
  Vec3 origin = Vec3::Zero();
  double voxel_size = kDetectionVoxelSize;
  std::vector<VoxelCell> cells;  // sorted by index (lexicographic x, y, z)
};

// Floor-division of each point relative to the cloud's component-wise
// minimum. Throws EmptyInput for an empty cloud, InvalidArgument for a
// non-positive size.
VoxelizedCloud VoxelizePoints(const PointCloud& cloud,
                              double voxel_size = kDetectionVoxelSize);

// Cell index of p for a grid anchored at `origin`; the result satisfies
// origin + k*size <= p < origin + (k+1)*size in floating point.
std::int64_t CellCoordinate(double p, double origin, double size);

// Majority label per cell; ties go to the smallest class id. Points outside
// the grid are ignored.
OccupancyGrid OccupancyFromLabels(const LabeledPointCloud& cloud,
                                  const VoxelGridSpec& spec);

struct VoxelMask {
  VoxelIndex dims = {0, 0, 0};
  std::vector<std::uint8_t> visible;

  std::size_t CountVisible() const;
  friend bool operator==(const VoxelMask&, const VoxelMask&) = default;
};

struct VisibilityOptions {
  double occlusion_tolerance = kOcclusionTolerance;
};

// Deterministic face samples of a box: a g x g grid of cell centers on each
// of the six faces with g = max(1, ceil(sqrt(samples / 6))).
PointCloud BoxSurfaceSamples(const OrientedBox3D& box, int samples);

// Instances with at least one surface sample in the frustum whose camera
// depth agrees with the raster within the tolerance. Views without depth use
// the frustum test alone. Result sorted ascending.
std::vector<int> VisibleInstances(const View& view, const SceneGraph& scene,
                                  int samples_per_box,
                                  const VisibilityOptions& options = {});

// Cells whose center is in the frustum and not behind the observed surface
// by more than the tolerance.
VoxelMask VisibleOccupancyMask(const View& view, const VoxelGridSpec& spec,
                               const VisibilityOptions& options = {});

// Element-wise OR. Throws InvalidArgument on an empty list or mismatched
// dims.
VoxelMask MergeVisibility(std::span<const VoxelMask> masks);

}  // namespace egoscene

#endif  // EGOSCENE_VOXEL_H_
