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

#include "egoscene/multiview.h"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <numeric>
#include <random>
#include <string>
#include <utility>

#include "egoscene/errors.h"

namespace egoscene {

std::vector<int> SampleFrames(int n_frames, int stride) {
  if (stride < 1) throw InvalidArgument("SampleFrames: stride must be >= 1");
  if (n_frames < 0) throw InvalidArgument("SampleFrames: negative frame count");
  std::vector<int> out;
  for (int i = 0; i < n_frames; i += stride) out.push_back(i);
  return out;
}

PointCloud AggregateViews(std::span<const View> views, std::size_t cap,
                          std::uint64_t seed) {
  PointCloud all;
  for (const View& view : views) {
    if (!view.depth) continue;
    PointCloud part = UnprojectDepth(view);
    all.insert(all.end(), part.begin(), part.end());
  }
  if (all.empty()) {
    throw EmptyInput("AggregateViews: no valid depth in any view");
  }
  if (all.size() <= cap) return all;

  std::vector<std::size_t> index(all.size());
  std::iota(index.begin(), index.end(), std::size_t{0});
  std::vector<std::size_t> chosen;
  chosen.reserve(cap);
  std::mt19937_64 rng(seed);
  // Selection sampling keeps the chosen indices in ascending order.
  std::sample(index.begin(), index.end(), std::back_inserter(chosen), cap, rng);
  PointCloud out;
  out.reserve(cap);
  for (std::size_t i : chosen) out.push_back(all[i]);
  return out;
}

std::vector<double> SampleBilinear(const FeatureGrid& grid, double u,
                                   double v) {
  const double uc = std::clamp(u, 0.0, double(grid.width - 1));
  const double vc = std::clamp(v, 0.0, double(grid.height - 1));
  const int u0 = int(std::floor(uc));
  const int v0 = int(std::floor(vc));
  const int u1 = std::min(u0 + 1, grid.width - 1);
  const int v1 = std::min(v0 + 1, grid.height - 1);
  const double fu = uc - u0;
  const double fv = vc - v0;
  std::vector<double> out(grid.channels);
  for (int c = 0; c < grid.channels; ++c) {
    const double top = (1.0 - fu) * grid.at(u0, v0, c) + fu * grid.at(u1, v0, c);
    const double bottom =
        (1.0 - fu) * grid.at(u0, v1, c) + fu * grid.at(u1, v1, c);
    out[c] = (1.0 - fv) * top + fv * bottom;
  }
  return out;
}

FeatureSample MultiviewFeatureSample(const Vec3& p, std::span<const View> views,
                                     std::span<const FeatureGrid> grids) {
  if (views.size() != grids.size()) {
    throw InvalidArgument("MultiviewFeatureSample: one grid per view required");
  }
  const int channels = grids.empty() ? 0 : grids.front().channels;
  for (std::size_t i = 0; i < grids.size(); ++i) {
    if (grids[i].channels != channels) {
      throw InvalidArgument("MultiviewFeatureSample: channel count mismatch");
    }
    if (grids[i].width != views[i].intrinsics.width ||
        grids[i].height != views[i].intrinsics.height ||
        grids[i].data.size() !=
            std::size_t(grids[i].width) * grids[i].height * channels) {
      throw InvalidArgument("MultiviewFeatureSample: grid " +
                            std::to_string(i) + " does not match its view");
    }
  }

  std::vector<std::pair<int, std::vector<double>>> contributions;
  for (std::size_t i = 0; i < views.size(); ++i) {
    const Projection proj = ProjectPoint(views[i], p);
    if (!proj.in_frustum) continue;
    contributions.emplace_back(views[i].frame_id,
                               SampleBilinear(grids[i], proj.u, proj.v));
  }
  std::sort(contributions.begin(), contributions.end());

  FeatureSample out;
  out.feature.assign(channels, 0.0);
  out.valid_count = int(contributions.size());
  if (contributions.empty()) return out;
  for (const auto& [id, f] : contributions) {
    for (int c = 0; c < channels; ++c) out.feature[c] += f[c];
  }
  for (double& x : out.feature) x /= double(contributions.size());
  return out;
}

}  // namespace egoscene
