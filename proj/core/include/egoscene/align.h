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

#ifndef EGOSCENE_ALIGN_H_
#define EGOSCENE_ALIGN_H_

#include <cstddef>

#include "egoscene/types.h"

namespace egoscene {

// p' = Rz(yaw) * p + translation.
struct ZRigidTransform {
  double yaw = 0.0;
  Vec3 translation = Vec3::Zero();

  Vec3 Apply(const Vec3& p) const;
};

struct AlignOptions {
  // Neighborhood radius for local surface normals, meters.
  double neighbor_radius = 0.1;
  // Upper bound on the number of points whose neighborhood is analyzed.
  std::size_t max_queries = 20000;
  // Quantile of z taken as the floor height.
  double floor_quantile = 0.01;
};

// Estimates the transform that makes dominant vertical surfaces parallel to
// the X/Y axes, centers the horizontal bounding box at the origin and puts
// the floor at z = 0. The returned yaw lies in [-pi/4, pi/4). Throws
// InsufficientData for fewer than 100 points.
ZRigidTransform AlignScene(const PointCloud& cloud,
                           const AlignOptions& options = {});

}  // namespace egoscene

#endif  // EGOSCENE_ALIGN_H_
