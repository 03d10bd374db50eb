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

#ifndef EGOSCENE_MULTIVIEW_H_
#define EGOSCENE_MULTIVIEW_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "egoscene/camera.h"
#include "egoscene/types.h"

namespace egoscene {

inline constexpr std::size_t kDefaultPointCap = 100000;
inline constexpr int kDefaultFrameStride = 10;

// Keyframe indices 0, stride, 2*stride, ... below n_frames.
std::vector<int> SampleFrames(int n_frames, int stride = kDefaultFrameStride);

// Union of the unprojected clouds of every view with depth. When the union
// exceeds `cap`, exactly `cap` points are drawn uniformly without
// replacement (kept in their original relative order). Deterministic per
// seed. Throws EmptyInput when no view contributes a point.
PointCloud AggregateViews(std::span<const View> views,
                          std::size_t cap = kDefaultPointCap,
                          std::uint64_t seed = 0);

// Dense per-view feature map, channel-last, row-major.
struct FeatureGrid {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<double> data;

  FeatureGrid() = default;
  FeatureGrid(int w, int h, int c)
      : width(w), height(h), channels(c), data(std::size_t(w) * h * c) {}

  double at(int u, int v, int c) const {
    return data[(std::size_t(v) * width + u) * channels + c];
  }
  double& at(int u, int v, int c) {
    return data[(std::size_t(v) * width + u) * channels + c];
  }
};

// Bilinear lookup at continuous pixel coordinates (integer = pixel center),
// clamped at the border.
std::vector<double> SampleBilinear(const FeatureGrid& grid, double u, double v);

struct FeatureSample {
  std::vector<double> feature;
  int valid_count = 0;
};

// Mean of the bilinear samples of `p` over every view that sees it.
// Contributions are ordered by frame id before accumulation so the result
// does not depend on the order of `views`. grids[i] belongs to views[i].
FeatureSample MultiviewFeatureSample(const Vec3& p, std::span<const View> views,
                                     std::span<const FeatureGrid> grids);

}  // namespace egoscene

#endif  // EGOSCENE_MULTIVIEW_H_
