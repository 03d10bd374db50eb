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

#include "egoscene/box.h"

#include <cmath>

#include "egoscene/errors.h"

namespace egoscene {

Mat3 OrientedBox3D::Rotation() const { return EulerToMatrix(rot); }

void OrientedBox3D::Validate() const {
  if (!center.allFinite() || !size.allFinite() || !std::isfinite(rot.alpha) ||
      !std::isfinite(rot.beta) || !std::isfinite(rot.gamma)) {
    throw InvalidArgument("box has non-finite fields");
  }
  if (!(size.x() > 0.0 && size.y() > 0.0 && size.z() > 0.0)) {
    throw InvalidArgument("box extents must be positive");
  }
}

Vec3 OrientedBox3D::ToLocal(const Vec3& p) const {
  return Rotation().transpose() * (p - center);
}

bool OrientedBox3D::Contains(const Vec3& p, double tol) const {
  const Vec3 q = ToLocal(p).cwiseAbs();
  const Vec3 h = 0.5 * size;
  return q.x() <= h.x() + tol && q.y() <= h.y() + tol && q.z() <= h.z() + tol;
}

Vec3 CornerSign(int i) {
  return {(i & 4) ? 1.0 : -1.0, (i & 2) ? 1.0 : -1.0, (i & 1) ? 1.0 : -1.0};
}

Corners BoxCorners(const OrientedBox3D& b) {
  const Mat3 r = b.Rotation();
  Corners out;
  for (int i = 0; i < 8; ++i) {
    out[i] = b.center + r * (0.5 * b.size.cwiseProduct(CornerSign(i)));
  }
  return out;
}

const std::array<std::array<int, 4>, 6>& BoxFaces() {
  static const std::array<std::array<int, 4>, 6> kFaces = {{
      {0, 1, 3, 2},  // -x
      {4, 6, 7, 5},  // +x
      {0, 4, 5, 1},  // -y
      {2, 3, 7, 6},  // +y
      {0, 2, 6, 4},  // -z
      {1, 5, 7, 3},  // +z
  }};
  return kFaces;
}

}  // namespace egoscene
