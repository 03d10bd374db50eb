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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "egoscene/errors.h"
#include "support/oracles.h"

namespace egoscene {
namespace {

using testing::Uniform;

View DepthView(int id, int w, int h, double depth) {
  View v;
  v.frame_id = id;
  v.intrinsics = {40.0, 40.0, (w - 1) / 2.0, (h - 1) / 2.0, w, h};
  v.depth = DepthImage(w, h);
  std::fill(v.depth->meters.begin(), v.depth->meters.end(), depth);
  return v;
}

TEST(SampleFrames, Examples) {
  EXPECT_EQ(SampleFrames(25, 10), (std::vector<int>{0, 10, 20}));
  EXPECT_EQ(SampleFrames(5, 1), (std::vector<int>{0, 1, 2, 3, 4}));
  EXPECT_TRUE(SampleFrames(0).empty());
  EXPECT_EQ(SampleFrames(11), (std::vector<int>{0, 10}));
  EXPECT_THROW(SampleFrames(10, 0), InvalidArgument);
}

TEST(AggregateViews, UnderCapKeepsEverything) {
  std::vector<View> views = {DepthView(0, 25, 20, 1.0)};
  EXPECT_EQ(AggregateViews(views).size(), 500u);
}

TEST(AggregateViews, IdenticalViewsDouble) {
  std::vector<View> one = {DepthView(0, 25, 20, 1.0)};
  std::vector<View> two = {one[0], one[0]};
  const PointCloud a = AggregateViews(one);
  const PointCloud b = AggregateViews(two);
  ASSERT_EQ(b.size(), 2 * a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(b[i], a[i]);
    EXPECT_EQ(b[i + a.size()], a[i]);
  }
}

TEST(AggregateViews, CapIsExactAndSeeded) {
  std::vector<View> views;
  for (int i = 0; i < 3; ++i) views.push_back(DepthView(i, 250, 200, 1.0 + i));
  const PointCloud a = AggregateViews(views, 100000, 9);
  const PointCloud b = AggregateViews(views, 100000, 9);
  const PointCloud c = AggregateViews(views, 100000, 10);
  ASSERT_EQ(a.size(), 100000u);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  EXPECT_EQ(AggregateViews(views, 10, 1).size(), 10u);
}

TEST(AggregateViews, NoDepthAnywhere) {
  std::vector<View> views = {DepthView(0, 4, 4, 0.0)};
  EXPECT_THROW(AggregateViews(views), EmptyInput);
  views[0].depth.reset();
  EXPECT_THROW(AggregateViews(views), EmptyInput);
}

TEST(SampleBilinear, InterpolatesAndClamps) {
  FeatureGrid g(2, 2, 1);
  g.at(0, 0, 0) = 0;
  g.at(1, 0, 0) = 1;
  g.at(0, 1, 0) = 2;
  g.at(1, 1, 0) = 3;
  EXPECT_DOUBLE_EQ(SampleBilinear(g, 0.5, 0.5)[0], 1.5);
  EXPECT_DOUBLE_EQ(SampleBilinear(g, 1, 0)[0], 1.0);
  EXPECT_DOUBLE_EQ(SampleBilinear(g, 5, -3)[0], 1.0);
}

TEST(MultiviewFeatureSample, ConstantGrid) {
  std::vector<View> views = {DepthView(0, 8, 6, 1.0), DepthView(1, 8, 6, 1.0)};
  views[1].pose.translation = {0, 0, 100};  // p ends up behind this camera
  std::vector<FeatureGrid> grids(2, FeatureGrid(8, 6, 3));
  for (auto& g : grids) std::fill(g.data.begin(), g.data.end(), 0.7);
  const FeatureSample s = MultiviewFeatureSample(Vec3(0, 0, 2), views, grids);
  EXPECT_EQ(s.valid_count, 1);
  for (double f : s.feature) EXPECT_DOUBLE_EQ(f, 0.7);
}

TEST(MultiviewFeatureSample, BehindAllCameras) {
  std::vector<View> views = {DepthView(0, 8, 6, 1.0)};
  std::vector<FeatureGrid> grids = {FeatureGrid(8, 6, 2)};
  const FeatureSample s = MultiviewFeatureSample(Vec3(0, 0, -2), views, grids);
  EXPECT_EQ(s.valid_count, 0);
  EXPECT_EQ(s.feature, std::vector<double>(2, 0.0));
}

TEST(MultiviewFeatureSample, ChannelMismatch) {
  std::vector<View> views = {DepthView(0, 8, 6, 1.0), DepthView(1, 8, 6, 1.0)};
  std::vector<FeatureGrid> grids = {FeatureGrid(8, 6, 2), FeatureGrid(8, 6, 3)};
  EXPECT_THROW(MultiviewFeatureSample(Vec3(0, 0, 1), views, grids),
               InvalidArgument);
  grids.pop_back();
  EXPECT_THROW(MultiviewFeatureSample(Vec3(0, 0, 1), views, grids),
               InvalidArgument);
}

TEST(MultiviewFeatureSample, PermutationInvariant) {
  std::mt19937_64 rng(41);
  const int n = 7;
  std::vector<View> views;
  std::vector<FeatureGrid> grids;
  for (int i = 0; i < n; ++i) {
    View v = DepthView(i * 3 + 1, 16, 12, 1.0);
    v.depth.reset();
    v.pose = LookAt(Vec3(Uniform(rng, -3, 3), Uniform(rng, -3, 3), 1.5),
                    Vec3(Uniform(rng, -0.2, 0.2), Uniform(rng, -0.2, 0.2), 0.5));
    views.push_back(v);
    FeatureGrid g(16, 12, 4);
    for (double& x : g.data) x = Uniform(rng, -1, 1);
    grids.push_back(g);
  }
  const Vec3 p(0.05, -0.1, 0.5);
  const FeatureSample ref = MultiviewFeatureSample(p, views, grids);
  ASSERT_GT(ref.valid_count, 1);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int t = 0; t < 200; ++t) {
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<View> pv;
    std::vector<FeatureGrid> pg;
    for (int i : order) {
      pv.push_back(views[i]);
      pg.push_back(grids[i]);
    }
    const FeatureSample s = MultiviewFeatureSample(p, pv, pg);
    ASSERT_EQ(s.valid_count, ref.valid_count);
    for (std::size_t c = 0; c < s.feature.size(); ++c) {
      ASSERT_NEAR(s.feature[c], ref.feature[c], 1e-12);
    }
  }
}

}  // namespace
}  // namespace egoscene
