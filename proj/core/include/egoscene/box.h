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

#ifndef EGOSCENE_BOX_H_
#define EGOSCENE_BOX_H_

#include <array>

#include "egoscene/rotation.h"
#include "egoscene/types.h"

namespace egoscene {

// 9-DoF oriented cuboid. `size` holds the full extents along the box's own
// X, Y and Z axes. The parameterization is not unique (swapping extents and
// rotating by 90 degrees describes the same solid); boxes compare equal
// geometrically through their corner sets, not through their fields.
struct OrientedBox3D {
  Vec3 center = Vec3::Zero();
  Vec3 size = Vec3::Ones();
  EulerZXY rot;

  Mat3 Rotation() const;
  double Volume() const { return size.x() * size.y() * size.z(); }

  // Throws InvalidArgument for non-finite fields or non-positive extents.
  void Validate() const;

  // Point containment with closed faces, tolerance in meters.
  bool Contains(const Vec3& p, double tol = 0.0) const;

  // World point to box-local coordinates (box center at origin).
  Vec3 ToLocal(const Vec3& p) const;
};

using Corners = std::array<Vec3, 8>;

// Sign pattern of corner i: bit 2 -> x, bit 1 -> y, bit 0 -> z, with a clear
// bit meaning the negative side. The order is therefore
// (---, --+, -+-, -++, +--, +-+, ++-, +++).
Vec3 CornerSign(int i);

// Corners in the order documented at CornerSign.
Corners BoxCorners(const OrientedBox3D& b);

// Vertex indices of the six faces, counter-clockwise seen from outside.
const std::array<std::array<int, 4>, 6>& BoxFaces();

}  // namespace egoscene

#endif  // EGOSCENE_BOX_H_
