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

#ifndef EGOSCENE_TYPES_H_
#define EGOSCENE_TYPES_H_

#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace egoscene {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// World-space points in meters.
using PointCloud = std::vector<Vec3>;

}  // namespace egoscene

#endif  // EGOSCENE_TYPES_H_
