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

#include "egoscene/voxel.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "egoscene/errors.h"
#include "support/oracles.h"

namespace egoscene {
namespace {

using testing::Uniform;

TEST(VoxelGridSpec, DefaultMatchesPerceptionRange) {
  const VoxelGridSpec s = DefaultOccupancySpec();
  EXPECT_EQ(s.dims, (VoxelIndex{40, 40, 16}));
  EXPECT_EQ(s.voxel_size, Vec3::Constant(0.16));
  EXPECT_EQ(s.origin, Vec3(-3.2, -3.2, -0.78));
  EXPECT_EQ(s.NumCells(), 25600u);
  const VoxelGridSpec r =
      VoxelGridSpec::FromRange({-3.2, -3.2, -0.78}, {3.2, 3.2, 1.78}, {40, 40, 16});
  EXPECT_NEAR((r.voxel_size - s.voxel_size).norm(), 0.0, 1e-15);
}

TEST(VoxelGridSpec, LinearIsXFastest) {
  const VoxelGridSpec s = VoxelGridSpec::Cubic(Vec3::Zero(), 1.0, {3, 4, 5});
  EXPECT_EQ(s.Linear({1, 0, 0}), 1u);
  EXPECT_EQ(s.Linear({0, 1, 0}), 3u);
  EXPECT_EQ(s.Linear({0, 0, 1}), 12u);
  for (std::size_t k = 0; k < s.NumCells(); ++k) {
    EXPECT_EQ(s.Linear(s.Unlinear(k)), k);
  }
}

TEST(VoxelGridSpec, RejectsBadInput) {
  EXPECT_THROW(VoxelGridSpec::Cubic(Vec3::Zero(), 0.0, {1, 1, 1}), InvalidArgument);
  EXPECT_THROW(VoxelGridSpec::Cubic(Vec3::Zero(), 1.0, {0, 1, 1}), InvalidArgument);
  EXPECT_THROW(VoxelGridSpec::FromRange(Vec3::Zero(), Vec3(1, 0, 1), {1, 1, 1}),
               InvalidArgument);
}

TEST(VoxelGridSpec, LocateIsHalfOpen) {
  const VoxelGridSpec s = VoxelGridSpec::Cubic(Vec3::Zero(), 0.5, {2, 2, 2});
  EXPECT_EQ(*s.Locate({0, 0, 0}), (VoxelIndex{0, 0, 0}));
  EXPECT_EQ(*s.Locate({0.5, 0.25, 0.75}), (VoxelIndex{1, 0, 1}));
  EXPECT_FALSE(s.Locate({1.0, 0, 0}).has_value());
  EXPECT_FALSE(s.Locate({-1e-12, 0, 0}).has_value());
  EXPECT_FALSE(s.Locate({std::nan(""), 0, 0}).has_value());
}

TEST(CellCoordinate, AgreesWithIntervalScan) {
  std::mt19937_64 rng(51);
  const double origin = -0.78, size = 0.16;
  for (int t = 0; t < 20000; ++t) {
    // Half the draws land exactly on a computed boundary.
    const int k = int(Uniform(rng, 0, 16));
    const double p = t % 2 ? origin + double(k) * size
                           : Uniform(rng, origin, origin + 16 * size);
    ASSERT_EQ(CellCoordinate(p, origin, size), testing::ScanCell(p, origin, size, 16))
        << p;
  }
}

TEST(VoxelizePoints, SinglePoint) {
  const VoxelizedCloud v = VoxelizePoints({Vec3(1, 2, 3)});
  ASSERT_EQ(v.cells.size(), 1u);
  EXPECT_EQ(v.cells[0].index, (std::array<std::int64_t, 3>{0, 0, 0}));
  EXPECT_EQ(v.cells[0].points, std::vector<std::size_t>{0});
}

TEST(VoxelizePoints, HalfMeterApart) {
  const VoxelizedCloud v = VoxelizePoints({Vec3(0, 0, 0), Vec3(0.5, 0, 0)}, 0.01);
  ASSERT_EQ(v.cells.size(), 2u);
  EXPECT_EQ(v.cells[1].index[0] - v.cells[0].index[0], 50);
}

TEST(VoxelizePoints, MatchesFloorDivisionOracle) {
  std::mt19937_64 rng(52);
  PointCloud pc(10000);
  for (Vec3& p : pc) p = {Uniform(rng, -2, 2), Uniform(rng, -1, 3), Uniform(rng, 0, 1)};
  const VoxelizedCloud v = VoxelizePoints(pc, 0.01);
  Vec3 origin = pc[0];
  for (const Vec3& p : pc) origin = origin.cwiseMin(p);
  EXPECT_EQ(v.origin, origin);
  std::vector<int> seen(pc.size(), 0);
  for (const VoxelCell& c : v.cells) {
    for (std::size_t i : c.points) {
      ++seen[i];
      for (int a = 0; a < 3; ++a) {
        ASSERT_EQ(c.index[a],
                  std::int64_t(std::floor((pc[i][a] - origin[a]) / 0.01)));
        ASSERT_LE(origin[a] + double(c.index[a]) * 0.01, pc[i][a]);
        ASSERT_LT(pc[i][a], origin[a] + double(c.index[a] + 1) * 0.01);
      }
    }
  }
  EXPECT_TRUE(std::all_of(seen.begin(), seen.end(), [](int n) { return n == 1; }));
  EXPECT_TRUE(std::is_sorted(v.cells.begin(), v.cells.end(),
                             [](const VoxelCell& a, const VoxelCell& b) {
                               return a.index < b.index;
                             }));
}

TEST(VoxelizePoints, Errors) {
  EXPECT_THROW(VoxelizePoints({}), EmptyInput);
  EXPECT_THROW(VoxelizePoints({Vec3::Zero()}, 0.0), InvalidArgument);
}

TEST(OccupancyFromLabels, MajorityAndEmpty) {
  const VoxelGridSpec s = VoxelGridSpec::Cubic(Vec3::Zero(), 1.0, {2, 1, 1});
  LabeledPointCloud pc;
  for (int i = 0; i < 3; ++i) {
    pc.points.emplace_back(0.5, 0.5, 0.5);
    pc.labels.push_back(4);
  }
  for (int i = 0; i < 2; ++i) {
    pc.points.emplace_back(0.2, 0.2, 0.2);
    pc.labels.push_back(1);
  }
  pc.points.emplace_back(5, 5, 5);  // out of range
  pc.labels.push_back(1);
  const OccupancyGrid g = OccupancyFromLabels(pc, s);
  EXPECT_EQ(g.labels, (std::vector<int>{4, kEmptyLabel}));
}

TEST(OccupancyFromLabels, TieGoesToSmallestId) {
  const VoxelGridSpec s = VoxelGridSpec::Cubic(Vec3::Zero(), 1.0, {1, 1, 1});
  LabeledPointCloud pc;
  pc.points = {Vec3(0.1, 0.1, 0.1), Vec3(0.2, 0.2, 0.2), Vec3(0.3, 0.3, 0.3),
               Vec3(0.4, 0.4, 0.4)};
  pc.labels = {7, 2, 7, 2};
  EXPECT_EQ(OccupancyFromLabels(pc, s).labels, std::vector<int>{2});
}

TEST(OccupancyFromLabels, RejectsBadCloud) {
  const VoxelGridSpec s = DefaultOccupancySpec();
  LabeledPointCloud pc;
  pc.points = {Vec3::Zero()};
  EXPECT_THROW(OccupancyFromLabels(pc, s), InvalidArgument);
  pc.labels = {-3};
  EXPECT_THROW(OccupancyFromLabels(pc, s), InvalidArgument);
}

LabeledPointCloud RandomLabeledCloud(std::mt19937_64& rng, const VoxelGridSpec& s,
                                     int n, int classes) {
  LabeledPointCloud pc;
  for (int i = 0; i < n; ++i) {
    Vec3 p;
    for (int a = 0; a < 3; ++a) {
      const double lo = s.origin[a] - 0.1;
      const double hi = s.origin[a] + s.dims[a] * s.voxel_size[a] + 0.1;
      p[a] = i % 5 == 0 ? s.origin[a] + double(int(Uniform(rng, 0, s.dims[a] + 1))) *
                                            s.voxel_size[a]
                        : Uniform(rng, lo, hi);
    }
    pc.points.push_back(p);
    // Few classes and clustered points give plenty of ties.
    pc.labels.push_back(int(Uniform(rng, 0, classes)));
  }
  return pc;
}

TEST(OccupancyFromLabels, MatchesHistogramOracle) {
  std::mt19937_64 rng(53);
  const VoxelGridSpec s = DefaultOccupancySpec();
  for (int t = 0; t < 10; ++t) {
    const LabeledPointCloud pc = RandomLabeledCloud(rng, s, 60000, 3);
    ASSERT_EQ(OccupancyFromLabels(pc, s).labels, testing::HistogramOccupancy(pc, s));
  }
}

TEST(OccupancyFromLabels, PointOrderInvariant) {
  std::mt19937_64 rng(54);
  const VoxelGridSpec s = VoxelGridSpec::Cubic(Vec3::Zero(), 0.5, {4, 4, 2});
  LabeledPointCloud pc = RandomLabeledCloud(rng, s, 400, 4);
  const OccupancyGrid ref = OccupancyFromLabels(pc, s);
  std::vector<std::size_t> order(pc.points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (int t = 0; t < 20; ++t) {
    std::shuffle(order.begin(), order.end(), rng);
    LabeledPointCloud q;
    for (std::size_t i : order) {
      q.points.push_back(pc.points[i]);
      q.labels.push_back(pc.labels[i]);
    }
    ASSERT_EQ(OccupancyFromLabels(q, s).labels, ref.labels);
  }
}

TEST(OccupancyFromLabels, LabelIsAPluralityInItsCell) {
  std::mt19937_64 rng(55);
  const VoxelGridSpec s = VoxelGridSpec::Cubic(Vec3::Zero(), 0.5, {4, 4, 2});
  const LabeledPointCloud pc = RandomLabeledCloud(rng, s, 300, 5);
  const OccupancyGrid g = OccupancyFromLabels(pc, s);
  std::vector<std::map<int, int>> counts(s.NumCells());
  for (std::size_t i = 0; i < pc.points.size(); ++i) {
    if (auto v = s.Locate(pc.points[i])) ++counts[s.Linear(*v)][pc.labels[i]];
  }
  for (std::size_t c = 0; c < s.NumCells(); ++c) {
    if (g.labels[c] == kEmptyLabel) {
      EXPECT_TRUE(counts[c].empty());
      continue;
    }
    const int mine = counts[c][g.labels[c]];
    EXPECT_GE(mine, 1);
    for (const auto& [label, n] : counts[c]) EXPECT_GE(mine, n);
  }
}

}  // namespace
}  // namespace egoscene
