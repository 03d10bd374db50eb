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

#include "egoscene/synth.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <random>
#include <string>

#include "egoscene/box_iou.h"
#include "egoscene/errors.h"

namespace egoscene {
namespace {

constexpr double kWallHeight = 2.6;
// Cameras keep this distance from every box.
constexpr double kCameraClearance = 0.1;
// Cameras look at this height above the room center.
constexpr double kLookAtHeight = 0.4;

double Uniform(std::mt19937_64& rng, double lo, double hi) {
  if (lo == hi) return lo;
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int UniformInt(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Uniform samples on the six faces of a box, about `density` per m^2.
void SampleBoxSurface(const OrientedBox3D& box, int label, double density,
                      std::mt19937_64& rng, LabeledPointCloud& cloud) {
  const Mat3 r = box.Rotation();
  const Vec3 h = 0.5 * box.size;
  for (int axis = 0; axis < 3; ++axis) {
    const int u = (axis + 1) % 3;
    const int v = (axis + 2) % 3;
    const double area = box.size[u] * box.size[v];
    const int n = std::max(1, int(std::lround(area * density)));
    for (double side : {-1.0, 1.0}) {
      for (int i = 0; i < n; ++i) {
        Vec3 local;
        local[axis] = side * h[axis];
        local[u] = Uniform(rng, -h[u], h[u]);
        local[v] = Uniform(rng, -h[v], h[v]);
        cloud.points.push_back(box.center + r * local);
        cloud.labels.push_back(label);
      }
    }
  }
}

void SampleRoomShell(double extent, int floor_label, int wall_label,
                     double density, std::mt19937_64& rng,
                     LabeledPointCloud& cloud) {
  const double half = 0.5 * extent;
  const int floor_n = std::max(1, int(std::lround(extent * extent * density)));
  for (int i = 0; i < floor_n; ++i) {
    cloud.points.emplace_back(Uniform(rng, -half, half),
                              Uniform(rng, -half, half), 0.0);
    cloud.labels.push_back(floor_label);
  }
  const int wall_n =
      std::max(1, int(std::lround(extent * kWallHeight * density)));
  for (int wall = 0; wall < 4; ++wall) {
    for (int i = 0; i < wall_n; ++i) {
      const double s = Uniform(rng, -half, half);
      const double z = Uniform(rng, 0.0, kWallHeight);
      const double sign = (wall & 1) ? 1.0 : -1.0;
      Vec3 p = (wall < 2) ? Vec3(sign * half, s, z) : Vec3(s, sign * half, z);
      cloud.points.push_back(p);
      cloud.labels.push_back(wall_label);
    }
  }
}

bool Overlaps(const OrientedBox3D& b, const std::vector<Instance>& placed) {
  for (const Instance& other : placed) {
    if (!BoxesDisjoint(b, other.box) && BoxIoU(b, other.box) > 0.0) {
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<ClassSpec> DefaultVocabulary() {
  return {
      {"chair", {0.45, 0.45, 0.80}, {0.60, 0.60, 1.00}},
      {"table", {0.90, 0.60, 0.70}, {1.40, 0.90, 0.78}},
      {"sofa", {1.40, 0.80, 0.70}, {2.00, 0.95, 0.90}},
      {"cabinet", {0.50, 0.40, 0.80}, {0.90, 0.60, 1.60}},
      {"shelf", {0.70, 0.30, 1.20}, {1.10, 0.40, 1.90}},
      {"desk", {1.00, 0.55, 0.70}, {1.30, 0.75, 0.78}},
      {"box", {0.25, 0.25, 0.20}, {0.55, 0.55, 0.50}},
      {"plant", {0.30, 0.30, 0.50}, {0.50, 0.50, 1.20}},
      {"lamp", {0.25, 0.25, 1.20}, {0.40, 0.40, 1.70}},
      {"stool", {0.30, 0.30, 0.40}, {0.45, 0.45, 0.70}},
  };
}

void SynthParams::Validate() const {
  if (!(room_extent > 0.0) || !std::isfinite(room_extent)) {
    throw InvalidArgument("synth: room extent must be positive");
  }
  if (instance_min < 1 || instance_min > instance_max) {
    throw InvalidArgument("synth: instance range must satisfy 1 <= min <= max");
  }
  if (vocabulary.empty()) throw InvalidArgument("synth: empty vocabulary");
  for (const ClassSpec& c : vocabulary) {
    if (c.name.empty() || c.name == "floor" || c.name == "wall") {
      throw InvalidArgument("synth: invalid class name '" + c.name + "'");
    }
    if (!(c.size_min.minCoeff() > 0.0) ||
        !(c.size_min.array() <= c.size_max.array()).all()) {
      throw InvalidArgument("synth: size range of '" + c.name +
                            "' must be positive and ordered");
    }
  }
  if (camera_count < 1) throw InvalidArgument("synth: need at least 1 camera");
  if (!(camera_height_min > 0.0 && camera_height_min <= camera_height_max)) {
    throw InvalidArgument("synth: camera height range must be positive and "
                          "ordered");
  }
  intrinsics.Validate();
  if (!(max_tilt >= 0.0 && max_tilt < std::numbers::pi / 4)) {
    throw InvalidArgument("synth: max_tilt must lie in [0, pi/4)");
  }
  if (!(surface_density > 0.0)) {
    throw InvalidArgument("synth: surface density must be positive");
  }
  if (max_placement_retries < 1) {
    throw InvalidArgument("synth: max_placement_retries must be >= 1");
  }
}

SynthScene GenerateScene(const SynthParams& params) {
  params.Validate();
  std::mt19937_64 rng(params.seed);
  SynthScene out;
  for (const ClassSpec& c : params.vocabulary) out.class_names.push_back(c.name);
  const int floor_label = int(out.class_names.size());
  out.class_names.push_back("floor");
  const int wall_label = int(out.class_names.size());
  out.class_names.push_back("wall");

  const double half = 0.5 * params.room_extent;
  const int count = UniformInt(rng, params.instance_min, params.instance_max);
  for (int id = 0; id < count; ++id) {
    bool placed = false;
    for (int attempt = 0; attempt < params.max_placement_retries; ++attempt) {
      const ClassSpec& cls =
          params.vocabulary[UniformInt(rng, 0, int(params.vocabulary.size()) - 1)];
      OrientedBox3D box;
      for (int k = 0; k < 3; ++k) {
        box.size[k] = Uniform(rng, cls.size_min[k], cls.size_max[k]);
      }
      box.rot.alpha = Uniform(rng, -std::numbers::pi, std::numbers::pi);
      if (params.max_tilt > 0.0) {
        box.rot.beta = Uniform(rng, -params.max_tilt, params.max_tilt);
        box.rot.gamma = Uniform(rng, -params.max_tilt, params.max_tilt);
      }
      const double reach = 0.5 * box.size.norm();
      if (reach >= half) continue;
      box.center.x() = Uniform(rng, -half + reach, half - reach);
      box.center.y() = Uniform(rng, -half + reach, half - reach);
      box.center.z() = 0.0;
      double lowest = 0.0;
      for (const Vec3& c : BoxCorners(box)) lowest = std::min(lowest, c.z());
      box.center.z() = -lowest;
      if (Overlaps(box, out.scene.instances)) continue;
      out.scene.instances.push_back({id, cls.name, box});
      placed = true;
      break;
    }
    if (!placed) {
      throw PlacementFailure("synth: could not place instance " +
                             std::to_string(id) + " after " +
                             std::to_string(params.max_placement_retries) +
                             " attempts");
    }
  }

  const double radius = 0.4 * params.room_extent;
  const Vec3 look_at(0.0, 0.0, kLookAtHeight);
  for (int k = 0; k < params.camera_count; ++k) {
    bool placed = false;
    for (int attempt = 0; attempt < params.max_placement_retries; ++attempt) {
      const double theta =
          2.0 * std::numbers::pi * (k + Uniform(rng, -0.25, 0.25)) /
          params.camera_count;
      const double r = radius * Uniform(rng, 0.8, 1.0);
      const Vec3 eye(r * std::cos(theta), r * std::sin(theta),
                     Uniform(rng, params.camera_height_min,
                             params.camera_height_max));
      const bool blocked = std::any_of(
          out.scene.instances.begin(), out.scene.instances.end(),
          [&](const Instance& inst) {
            return inst.box.Contains(eye, kCameraClearance);
          });
      if (blocked) continue;
      View view;
      view.frame_id = k;
      view.intrinsics = params.intrinsics;
      view.pose = LookAt(eye, look_at);
      view.depth = RenderDepth(out.scene, view.intrinsics, view.pose);
      out.views.push_back(std::move(view));
      placed = true;
      break;
    }
    if (!placed) {
      throw PlacementFailure("synth: could not place camera " +
                             std::to_string(k));
    }
  }

  for (const Instance& inst : out.scene.instances) {
    SampleBoxSurface(inst.box, ClassIdOf(out.class_names, inst.class_name),
                     params.surface_density, rng, out.labeled_cloud);
  }
  if (params.room_shell) {
    SampleRoomShell(params.room_extent, floor_label, wall_label,
                    params.surface_density, rng, out.labeled_cloud);
  }
  return out;
}

std::optional<double> RayBoxIntersection(const OrientedBox3D& box,
                                         const Vec3& origin, const Vec3& dir) {
  const Mat3 rt = box.Rotation().transpose();
  const Vec3 o = rt * (origin - box.center);
  const Vec3 d = rt * dir;
  const Vec3 h = 0.5 * box.size;
  double t_near = -std::numeric_limits<double>::infinity();
  double t_far = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 3; ++k) {
    if (d[k] == 0.0) {
      if (std::abs(o[k]) > h[k]) return std::nullopt;
      continue;
    }
    double t1 = (-h[k] - o[k]) / d[k];
    double t2 = (h[k] - o[k]) / d[k];
    if (t1 > t2) std::swap(t1, t2);
    t_near = std::max(t_near, t1);
    t_far = std::min(t_far, t2);
  }
  if (t_near > t_far || t_near <= 0.0) return std::nullopt;
  return t_near;
}

DepthImage RenderDepth(const SceneGraph& scene, const CameraIntrinsics& k,
                       const Pose& pose) {
  k.Validate();
  DepthImage img(k.width, k.height);
  for (int v = 0; v < k.height; ++v) {
    for (int u = 0; u < k.width; ++u) {
      // Unit camera-frame z, so the ray parameter equals the depth.
      const Vec3 dir =
          pose.rotation * Vec3((u - k.cx) / k.fx, (v - k.cy) / k.fy, 1.0);
      double best = 0.0;
      for (const Instance& inst : scene.instances) {
        const std::optional<double> t =
            RayBoxIntersection(inst.box, pose.translation, dir);
        if (t && (best == 0.0 || *t < best)) best = *t;
      }
      img.at(u, v) = best;
    }
  }
  return img;
}

int ClassIdOf(const std::vector<std::string>& class_names,
              const std::string& name) {
  const auto it = std::find(class_names.begin(), class_names.end(), name);
  if (it == class_names.end()) {
    throw InvalidArgument("unknown class '" + name + "'");
  }
  return int(it - class_names.begin());
}

std::vector<GroundTruthBox> GroundTruthFromScene(
    const SceneGraph& scene, const std::vector<std::string>& class_names) {
  std::vector<GroundTruthBox> out;
  for (const Instance& inst : scene.instances) {
    out.push_back({inst.box, ClassIdOf(class_names, inst.class_name)});
  }
  return out;
}

std::vector<Detection> PerturbDetections(
    const SceneGraph& scene, const std::vector<std::string>& class_names,
    const NoiseParams& noise, std::uint64_t seed) {
  if (!(noise.center_sigma >= 0.0 && noise.size_sigma >= 0.0 &&
        noise.yaw_sigma >= 0.0)) {
    throw InvalidArgument("PerturbDetections: noise sigmas must be >= 0");
  }
  if (!(noise.drop_rate >= 0.0 && noise.drop_rate <= 1.0)) {
    throw InvalidArgument("PerturbDetections: drop rate must lie in [0, 1]");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Detection> out;
  for (const Instance& inst : scene.instances) {
    const double drop = unit(rng);
    Vec3 dc, ds;
    for (int k = 0; k < 3; ++k) dc[k] = noise.center_sigma * normal(rng);
    for (int k = 0; k < 3; ++k) ds[k] = noise.size_sigma * normal(rng);
    const double dyaw = noise.yaw_sigma * normal(rng);
    if (drop < noise.drop_rate) continue;
    Detection d;
    d.class_id = ClassIdOf(class_names, inst.class_name);
    d.box = inst.box;
    d.box.center += dc;
    for (int k = 0; k < 3; ++k) {
      d.box.size[k] *= std::max(0.05, 1.0 + ds[k]);
    }
    d.box.rot.alpha += dyaw;
    d.score = 1.0 / (1.0 + dc.norm() + ds.norm() + std::abs(dyaw));
    out.push_back(d);
  }
  return out;
}

}  // namespace egoscene
