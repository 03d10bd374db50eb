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

#ifndef EGOSCENE_CAMERA_H_
#define EGOSCENE_CAMERA_H_

#include <optional>
#include <vector>

#include "egoscene/types.h"

namespace egoscene {

// Pinhole intrinsics. Integer pixel coordinates address pixel centers, so the
// image covers the continuous range [0, width) x [0, height).
struct CameraIntrinsics {
  double fx = 1.0;
  double fy = 1.0;
  double cx = 0.5;
  double cy = 0.5;
  int width = 1;
  int height = 1;

  void Validate() const;
};

// Camera-to-world rigid transform: p_world = rotation * p_cam + translation.
// Camera frame: +X right, +Y down, +Z along the optical axis.
struct Pose {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  Vec3 CameraToWorld(const Vec3& p_cam) const {
    return rotation * p_cam + translation;
  }
  Vec3 WorldToCamera(const Vec3& p_world) const {
    return rotation.transpose() * (p_world - translation);
  }

  void Validate(double tol = 1e-9) const;
};

// Camera looking from `eye` towards `target` with world +Z as up.
Pose LookAt(const Vec3& eye, const Vec3& target);

// Metric depth raster, row-major, 0 marks an invalid pixel.
struct DepthImage {
  int width = 0;
  int height = 0;
  std::vector<double> meters;

  DepthImage() = default;
  DepthImage(int w, int h) : width(w), height(h), meters(std::size_t(w) * h) {}

  double at(int u, int v) const { return meters[std::size_t(v) * width + u]; }
  double& at(int u, int v) { return meters[std::size_t(v) * width + u]; }
};

struct View {
  int frame_id = 0;
  CameraIntrinsics intrinsics;
  Pose pose;
  std::optional<DepthImage> depth;

  void Validate() const;
};

struct Projection {
  double u = 0.0;
  double v = 0.0;
  double depth = 0.0;  // camera-frame z, meters
  bool in_frustum = false;
};

Projection ProjectPoint(const View& view, const Vec3& p_world);

// Camera-frame point for pixel (u, v) at depth d.
Vec3 BackProject(const CameraIntrinsics& k, double u, double v, double d);

// One world point per valid depth pixel, row-major order. Throws
// InvalidArgument when the view carries no depth.
PointCloud UnprojectDepth(const View& view);

}  // namespace egoscene

#endif  // EGOSCENE_CAMERA_H_
