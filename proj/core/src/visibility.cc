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

#include <algorithm>
#include <cmath>

#include "egoscene/errors.h"
#include "egoscene/voxel.h"

namespace egoscene {
namespace {

// Raster value at the pixel nearest to an in-frustum projection.
double RasterDepthAt(const DepthImage& depth, const Projection& proj) {
  const int u = std::min(depth.width - 1, int(std::floor(proj.u + 0.5)));
  const int v = std::min(depth.height - 1, int(std::floor(proj.v + 0.5)));
  return depth.at(u, v);
}

}  // namespace

PointCloud BoxSurfaceSamples(const OrientedBox3D& box, int samples) {
  if (samples < 1) throw InvalidArgument("BoxSurfaceSamples: samples < 1");
  const int g = std::max(1, int(std::ceil(std::sqrt(samples / 6.0))));
  const Mat3 r = box.Rotation();
  const Vec3 h = 0.5 * box.size;
  PointCloud out;
  out.reserve(std::size_t(6) * g * g);
  for (int axis = 0; axis < 3; ++axis) {
    const int b = (axis + 1) % 3;
    const int c = (axis + 2) % 3;
    for (double side : {-1.0, 1.0}) {
      for (int i = 0; i < g; ++i) {
        for (int j = 0; j < g; ++j) {
          Vec3 local;
          local[axis] = side * h[axis];
          local[b] = -h[b] + (i + 0.5) * 2.0 * h[b] / g;
          local[c] = -h[c] + (j + 0.5) * 2.0 * h[c] / g;
          out.push_back(box.center + r * local);
        }
      }
    }
  }
  return out;
}

std::vector<int> VisibleInstances(const View& view, const SceneGraph& scene,
                                  int samples_per_box,
                                  const VisibilityOptions& options) {
  if (samples_per_box < 1) {
    throw InvalidArgument("VisibleInstances: samples_per_box must be >= 1");
  }
  view.Validate();
  std::vector<int> visible;
  for (const Instance& inst : scene.instances) {
    for (const Vec3& p : BoxSurfaceSamples(inst.box, samples_per_box)) {
      const Projection proj = ProjectPoint(view, p);
      if (!proj.in_frustum) continue;
      if (view.depth) {
        const double observed = RasterDepthAt(*view.depth, proj);
        if (!(observed > 0.0) ||
            std::abs(proj.depth - observed) > options.occlusion_tolerance) {
          continue;
        }
      }
      visible.push_back(inst.id);
      break;
    }
  }
  std::sort(visible.begin(), visible.end());
  return visible;
}

VoxelMask VisibleOccupancyMask(const View& view, const VoxelGridSpec& spec,
                               const VisibilityOptions& options) {
  view.Validate();
  spec.Validate();
  VoxelMask mask;
  mask.dims = spec.dims;
  mask.visible.assign(spec.NumCells(), 0);
  for (std::size_t k = 0; k < spec.NumCells(); ++k) {
    const Projection proj = ProjectPoint(view, spec.Center(spec.Unlinear(k)));
    if (!proj.in_frustum) continue;
    if (view.depth) {
      // An invalid pixel has no return along the ray, so nothing occludes.
      const double observed = RasterDepthAt(*view.depth, proj);
      if (observed > 0.0 &&
          proj.depth > observed + options.occlusion_tolerance) {
        continue;
      }
    }
    mask.visible[k] = 1;
  }
  return mask;
}

VoxelMask MergeVisibility(std::span<const VoxelMask> masks) {
  if (masks.empty()) throw InvalidArgument("MergeVisibility: no masks");
  VoxelMask out = masks.front();
  for (const VoxelMask& m : masks.subspan(1)) {
    if (m.dims != out.dims || m.visible.size() != out.visible.size()) {
      throw InvalidArgument("MergeVisibility: mask dims differ");
    }
    for (std::size_t i = 0; i < m.visible.size(); ++i) {
      out.visible[i] = (out.visible[i] || m.visible[i]) ? 1 : 0;
    }
  }
  return out;
}

}  // namespace egoscene
