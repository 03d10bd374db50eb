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

#ifndef EGOSCENE_BOX_IOU_H_
#define EGOSCENE_BOX_IOU_H_

#include <cstdint>

#include "egoscene/box.h"

namespace egoscene {

// Boxes with a volume below this are rejected by the IoU routines.
inline constexpr double kMinBoxVolume = 1e-12;

// Separating-axis test over the 15 candidate axes (3 + 3 face normals and
// 9 edge cross products). True when a strictly separating axis exists.
bool BoxesDisjoint(const OrientedBox3D& a, const OrientedBox3D& b);

// Exact intersection volume: b's polytope is clipped against the six
// half-spaces of a and the volume of the remaining convex polytope is
// integrated face by face.
double IntersectionVolume(const OrientedBox3D& a, const OrientedBox3D& b);

// 3D IoU of two oriented boxes. Throws DegenerateInput for boxes with
// volume below kMinBoxVolume.
double BoxIoU(const OrientedBox3D& a, const OrientedBox3D& b);

// Monte-Carlo estimate: uniform samples in the AABB of both boxes, IoU taken
// as (#inside both) / (#inside either). Deterministic per seed; 0 when no
// sample lands in either box.
double BoxIoUMonteCarlo(const OrientedBox3D& a, const OrientedBox3D& b,
                        std::int64_t n_samples, std::uint64_t seed);

}  // namespace egoscene

#endif  // EGOSCENE_BOX_IOU_H_
