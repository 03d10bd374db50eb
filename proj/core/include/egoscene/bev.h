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

#ifndef EGOSCENE_BEV_H_
#define EGOSCENE_BEV_H_

#include <array>
#include <vector>

#include "egoscene/box.h"
#include "egoscene/types.h"

namespace egoscene {

// Rotated rectangle in the XY plane.
struct Rect2D {
  Vec2 center = Vec2::Zero();
  Vec2 size = Vec2::Ones();
  double yaw = 0.0;

  // Counter-clockwise corners.
  std::array<Vec2, 4> Corners() const;
  double Area() const { return size.x() * size.y(); }
};

// Footprint of the yaw-only reduction of a box (alpha kept, beta and gamma
// dropped).
Rect2D Footprint(const OrientedBox3D& box);

// Same box with beta = gamma = 0.
OrientedBox3D YawOnly(const OrientedBox3D& box);

// Intersection of two convex counter-clockwise polygons.
std::vector<Vec2> ClipConvexPolygon(const std::vector<Vec2>& subject,
                                    const std::vector<Vec2>& clip);

double PolygonArea(const std::vector<Vec2>& polygon);

double RectIntersectionArea(const Rect2D& a, const Rect2D& b);
double RectIoU(const Rect2D& a, const Rect2D& b);

}  // namespace egoscene

#endif  // EGOSCENE_BEV_H_
