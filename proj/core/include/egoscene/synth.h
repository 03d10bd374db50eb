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

#ifndef EGOSCENE_SYNTH_H_
#define EGOSCENE_SYNTH_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "egoscene/camera.h"
#include "egoscene/evaluation.h"
#include "egoscene/scene.h"
#include "egoscene/voxel.h"

namespace egoscene {

struct ClassSpec {
  std::string name;
  Vec3 size_min;
  Vec3 size_max;
};

// A furniture-like vocabulary of indoor object classes.
std::vector<ClassSpec> DefaultVocabulary();

struct SynthParams {
  std::uint64_t seed = 0;
  // Side of the square room centered at the origin, meters.
  double room_extent = 6.0;
  int instance_min = 8;
  int instance_max = 20;
  std::vector<ClassSpec> vocabulary = DefaultVocabulary();
  int camera_count = 10;
  double camera_height_min = 1.2;
  double camera_height_max = 1.8;
  CameraIntrinsics intrinsics = {120.0, 120.0, 79.5, 59.5, 160, 120};
  // Upper bound of the random beta/gamma tilt, radians.
  double max_tilt = 0.0;
  // Adds floor and wall samples (classes "floor" and "wall") to the labeled
  // cloud. They are not instances and are not rendered.
  bool room_shell = true;
  // Labeled surface samples per square meter.
  double surface_density = 400.0;
  int max_placement_retries = 200;

  void Validate() const;
};

struct SynthScene {
  SceneGraph scene;
  std::vector<View> views;
  LabeledPointCloud labeled_cloud;
  // Class id -> name for the labeled cloud and derived detections.
  std::vector<std::string> class_names;
};

// Throws PlacementFailure when an instance cannot be placed without
// overlapping previously placed ones.
SynthScene GenerateScene(const SynthParams& params);

// Entry distance along the ray origin + t * dir (t > 0), if any.
std::optional<double> RayBoxIntersection(const OrientedBox3D& box,
                                         const Vec3& origin, const Vec3& dir);

// Analytic z-buffer of the scene's boxes; 0 where no box is hit.
DepthImage RenderDepth(const SceneGraph& scene, const CameraIntrinsics& k,
                       const Pose& pose);

struct NoiseParams {
  double center_sigma = 0.0;  // meters
  double size_sigma = 0.0;    // relative
  double yaw_sigma = 0.0;     // radians
  double drop_rate = 0.0;
};

// Ground-truth boxes jittered with Gaussian noise. Scores decrease with the
// perturbation magnitude: score = 1 / (1 + |dc| + |ds| + |dyaw|).
std::vector<Detection> PerturbDetections(
    const SceneGraph& scene, const std::vector<std::string>& class_names,
    const NoiseParams& noise, std::uint64_t seed);

// Throws InvalidArgument for classes missing from class_names.
std::vector<GroundTruthBox> GroundTruthFromScene(
    const SceneGraph& scene, const std::vector<std::string>& class_names);

int ClassIdOf(const std::vector<std::string>& class_names,
              const std::string& name);

}  // namespace egoscene

#endif  // EGOSCENE_SYNTH_H_
