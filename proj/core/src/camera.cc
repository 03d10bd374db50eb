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

#include "egoscene/camera.h"

#include <cmath>
#include <string>

#include "egoscene/errors.h"
#include "egoscene/rotation.h"

namespace egoscene {

void CameraIntrinsics::Validate() const {
  if (!(fx > 0.0 && fy > 0.0) || !std::isfinite(fx) || !std::isfinite(fy)) {
    throw InvalidArgument("intrinsics: focal lengths must be positive");
  }
  if (width <= 0 || height <= 0) {
    throw InvalidArgument("intrinsics: image size must be positive");
  }
  if (!(cx > 0.0 && cx < width && cy > 0.0 && cy < height)) {
    throw InvalidArgument("intrinsics: principal point outside the image");
  }
}

void Pose::Validate(double tol) const {
  if (!translation.allFinite()) {
    throw InvalidArgument("pose: non-finite translation");
  }
  if (!IsRotation(rotation, tol)) {
    throw InvalidArgument("pose: rotation is not orthonormal");
  }
}

Pose LookAt(const Vec3& eye, const Vec3& target) {
  const Vec3 forward = (target - eye).normalized();
  Vec3 right = forward.cross(Vec3::UnitZ());
  if (right.norm() < 1e-9) {
    throw InvalidArgument("LookAt: viewing direction is vertical");
  }
  right.normalize();
  const Vec3 down = forward.cross(right);
  Pose pose;
  pose.rotation.col(0) = right;
  pose.rotation.col(1) = down;
  pose.rotation.col(2) = forward;
  pose.translation = eye;
  return pose;
}

void View::Validate() const {
  intrinsics.Validate();
  pose.Validate();
  if (depth && (depth->width != intrinsics.width ||
                depth->height != intrinsics.height ||
                depth->meters.size() != std::size_t(depth->width) * depth->height)) {
    throw InvalidArgument("view " + std::to_string(frame_id) +
                          ": depth raster does not match the image size");
  }
}

Projection ProjectPoint(const View& view, const Vec3& p_world) {
  const CameraIntrinsics& k = view.intrinsics;
  const Vec3 pc = view.pose.WorldToCamera(p_world);
  Projection out;
  out.depth = pc.z();
  if (pc.z() <= 0.0) {
    out.u = out.v = std::nan("");
    return out;
  }
  out.u = k.fx * pc.x() / pc.z() + k.cx;
  out.v = k.fy * pc.y() / pc.z() + k.cy;
  out.in_frustum = out.u >= 0.0 && out.u < k.width && out.v >= 0.0 &&
                   out.v < k.height;
  return out;
}

Vec3 BackProject(const CameraIntrinsics& k, double u, double v, double d) {
  return {d * (u - k.cx) / k.fx, d * (v - k.cy) / k.fy, d};
}

PointCloud UnprojectDepth(const View& view) {
  if (!view.depth) {
    throw InvalidArgument("UnprojectDepth: view " +
                          std::to_string(view.frame_id) + " has no depth");
  }
  view.Validate();
  const DepthImage& d = *view.depth;
  PointCloud cloud;
  for (int v = 0; v < d.height; ++v) {
    for (int u = 0; u < d.width; ++u) {
      const double z = d.at(u, v);
      if (z > 0.0) {
        cloud.push_back(
            view.pose.CameraToWorld(BackProject(view.intrinsics, u, v, z)));
      }
    }
  }
  return cloud;
}

}  // namespace egoscene
