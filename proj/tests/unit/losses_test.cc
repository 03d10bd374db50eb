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

#include "egoscene/losses.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "egoscene/bev.h"
#include "egoscene/box_iou.h"
#include "egoscene/errors.h"
#include "egoscene/gradcheck.h"
#include "support/oracles.h"

namespace egoscene {
namespace {

using testing::RandomBox;
using testing::Uniform;

std::array<Vec3, 8> RandomCorners(std::mt19937_64& rng) {
  std::array<Vec3, 8> c;
  for (Vec3& p : c) p = {Uniform(rng, -1, 1), Uniform(rng, -1, 1), Uniform(rng, -1, 1)};
  return c;
}

std::vector<double> Params9(const OrientedBox3D& b) {
  return {b.center.x(), b.center.y(), b.center.z(), b.size.x(), b.size.y(),
          b.size.z(), b.rot.alpha, b.rot.beta, b.rot.gamma};
}

OrientedBox3D FromParams(std::span<const double> x) {
  OrientedBox3D b;
  b.center = {x[0], x[1], x[2]};
  b.size = {x[3], x[4], x[5]};
  if (x.size() == 9) {
    b.rot = {x[6], x[7], x[8]};
  } else {
    b.rot.alpha = x[6];
  }
  return b;
}

TEST(ChamferCorner, ZeroForIdenticalSets) {
  std::mt19937_64 rng(101);
  const auto a = RandomCorners(rng);
  EXPECT_EQ(ChamferCorner(a, a), 0.0);
}

TEST(ChamferCorner, TranslatedBoxGivesOffset) {
  OrientedBox3D b;
  b.size = {1.0, 0.8, 0.6};
  b.rot = {0.3, 0.2, -0.1};
  const Corners a = BoxCorners(b);
  b.center.x() += 0.05;
  EXPECT_NEAR(ChamferCorner(a, BoxCorners(b)), 0.05, 1e-12);
}

TEST(ChamferCorner, MatchesTableOracleAndIsSymmetric) {
  std::mt19937_64 rng(102);
  for (int t = 0; t < 5000; ++t) {
    const auto a = RandomCorners(rng), b = RandomCorners(rng);
    ASSERT_EQ(ChamferCorner(a, b), testing::TableChamfer(a, b));
    ASSERT_EQ(ChamferCorner(a, b), ChamferCorner(b, a));
  }
}

TEST(ChamferCorner, WrongCardinality) {
  std::vector<Vec3> seven(7, Vec3::Zero()), eight(8, Vec3::Zero());
  EXPECT_THROW(ChamferCorner(seven, eight), InvalidArgument);
  EXPECT_THROW(ChamferCorner(eight, seven), InvalidArgument);
  EXPECT_THROW(ChamferCornerGrad(seven, eight), InvalidArgument);
}

TEST(ChamferCornerGrad, MatchesCentralDifferences) {
  std::mt19937_64 rng(103);
  for (int t = 0; t < 200; ++t) {
    const auto a = RandomCorners(rng), b = RandomCorners(rng);
    const auto g = ChamferCornerGrad(a, b);
    std::vector<double> x, analytic;
    for (int i = 0; i < 8; ++i) {
      for (int k = 0; k < 3; ++k) {
        x.push_back(a[i][k]);
        analytic.push_back(g[i][k]);
      }
    }
    auto f = [&](std::span<const double> v) {
      std::array<Vec3, 8> p;
      for (int i = 0; i < 8; ++i) p[i] = {v[3 * i], v[3 * i + 1], v[3 * i + 2]};
      return ChamferCorner(p, b);
    };
    ASSERT_LE(GradCheck(f, analytic, x, 1e-6), 1e-4);
  }
}

TEST(DisentangledCornerLoss, ZeroAtGroundTruth) {
  std::mt19937_64 rng(104);
  const OrientedBox3D gt = RandomBox(rng, 2, 0.3, 2);
  const CornerLosses l = DisentangledCornerLoss(gt, gt);
  EXPECT_EQ(l.center, 0.0);
  EXPECT_EQ(l.size, 0.0);
  EXPECT_EQ(l.rotation, 0.0);
  EXPECT_EQ(l.pred, 0.0);
  EXPECT_EQ(l.loc, 0.0);
}

TEST(DisentangledCornerLoss, CenterOffsetExample) {
  OrientedBox3D gt;
  gt.size = {1.2, 0.9, 0.8};
  gt.rot.alpha = 0.4;
  OrientedBox3D pred = gt;
  pred.center.y() += 0.1;
  const CornerLosses l = DisentangledCornerLoss(pred, gt);
  EXPECT_NEAR(l.center, 0.1, 1e-12);
  EXPECT_NEAR(l.pred, 0.1, 1e-12);
  EXPECT_EQ(l.size, 0.0);
  EXPECT_EQ(l.rotation, 0.0);
  EXPECT_NEAR(l.loc, 0.06, 1e-12);
}

TEST(DisentangledCornerLoss, GroupsAreIsolated) {
  std::mt19937_64 rng(105);
  const OrientedBox3D gt = RandomBox(rng, 2, 0.3, 2);
  OrientedBox3D pred = gt;
  pred.size *= 1.3;
  CornerLosses l = DisentangledCornerLoss(pred, gt);
  EXPECT_GT(l.size, 0.0);
  EXPECT_EQ(l.center, 0.0);
  EXPECT_EQ(l.rotation, 0.0);
  pred = gt;
  pred.rot.beta += 0.2;
  l = DisentangledCornerLoss(pred, gt);
  EXPECT_GT(l.rotation, 0.0);
  EXPECT_EQ(l.center, 0.0);
  EXPECT_EQ(l.size, 0.0);
}

TEST(DisentangledCornerLoss, WeightedSumIdentity) {
  std::mt19937_64 rng(106);
  for (int t = 0; t < 1000; ++t) {
    const OrientedBox3D pred = RandomBox(rng, 2, 0.2, 2);
    const OrientedBox3D gt = RandomBox(rng, 2, 0.2, 2);
    const CornerLosses l = DisentangledCornerLoss(pred, gt);
    ASSERT_GE(l.center, 0.0);
    ASSERT_GE(l.size, 0.0);
    ASSERT_GE(l.rotation, 0.0);
    ASSERT_GE(l.pred, 0.0);
    const double expected = 0.2 * (l.center + l.size + l.rotation) + 0.4 * l.pred;
    ASSERT_NEAR(l.loc, expected, 4 * std::numeric_limits<double>::epsilon() * l.loc);
  }
}

TEST(DisentangledCornerLoss, InvalidInput) {
  OrientedBox3D bad;
  bad.size.z() = 0.0;
  EXPECT_THROW(DisentangledCornerLoss(bad, OrientedBox3D{}), InvalidArgument);
  CornerLossWeights w;
  w.pred = -0.1;
  EXPECT_THROW(DisentangledCornerLoss(OrientedBox3D{}, OrientedBox3D{}, w),
               InvalidArgument);
}

TEST(DisentangledCornerLossGrad, MatchesCentralDifferences) {
  std::mt19937_64 rng(107);
  for (int t = 0; t < 200; ++t) {
    const OrientedBox3D pred = RandomBox(rng, 1, 0.3, 2);
    const OrientedBox3D gt = RandomBox(rng, 1, 0.3, 2);
    const auto g = DisentangledCornerLossGrad(pred, gt);
    const auto f = [&](std::span<const double> x) {
      return DisentangledCornerLoss(FromParams(x), gt).loc;
    };
    ASSERT_LE(GradCheck(f, g, Params9(pred), 1e-6), 1e-4) << t;
  }
}

TEST(Iou7DofLoss, IdenticalAndDisjoint) {
  OrientedBox3D a;
  a.size = {1.5, 0.7, 0.9};
  a.rot.alpha = 0.8;
  EXPECT_NEAR(Iou7DofLoss(a, a), 0.0, 1e-12);
  OrientedBox3D b = a;
  b.center.x() += 5;
  EXPECT_EQ(Iou7DofLoss(a, b), 1.0);
  for (double g : Iou7DofLossGrad(a, b)) EXPECT_EQ(g, 0.0);
}

TEST(Iou7DofLoss, ZeroForAnyIdenticalYawBox) {
  std::mt19937_64 rng(114);
  for (int t = 0; t < 2000; ++t) {
    const OrientedBox3D a = RandomBox(rng, 3, 0.05, 3, false);
    ASSERT_NEAR(Iou7DofLoss(a, a), 0.0, 1e-12);
    const Rect2D r = Footprint(a);
    ASSERT_NEAR(RectIntersectionArea(r, r), r.Area(), 1e-12 * r.Area());
  }
}

TEST(Iou7DofLoss, IgnoresTilt) {
  OrientedBox3D a;
  a.rot = {0.3, 0.4, -0.2};
  OrientedBox3D b = a;
  b.rot.beta = b.rot.gamma = 0;
  EXPECT_NEAR(Iou7DofLoss(a, b), 0.0, 1e-12);
}

TEST(Iou7DofLoss, AgreesWithExactIou) {
  std::mt19937_64 rng(108);
  for (int t = 0; t < 2000; ++t) {
    const OrientedBox3D a = RandomBox(rng, 0.6, 0.2, 1.5, false);
    const OrientedBox3D b = RandomBox(rng, 0.6, 0.2, 1.5, false);
    ASSERT_NEAR(Iou7DofLoss(a, b), 1.0 - BoxIoU(a, b), 1e-9);
  }
}

TEST(Iou7DofLoss, MonotoneAlongARay) {
  std::mt19937_64 rng(109);
  for (int t = 0; t < 50; ++t) {
    const OrientedBox3D gt = RandomBox(rng, 0, 0.3, 1.5, false);
    OrientedBox3D pred = gt;
    pred.size *= Uniform(rng, 0.8, 1.2);
    const double heading = Uniform(rng, 0, 2 * std::numbers::pi);
    const Vec3 dir(std::cos(heading), std::sin(heading), Uniform(rng, -0.3, 0.3));
    double prev = -1.0;
    for (int s = 0; s <= 100; ++s) {
      pred.center = gt.center + 0.03 * s * dir;
      const double loss = Iou7DofLoss(pred, gt);
      ASSERT_GE(loss, prev - 1e-12);
      prev = loss;
    }
  }
}

TEST(Iou7DofLoss, Degenerate) {
  OrientedBox3D flat;
  flat.size = {1e-7, 1e-7, 1.0};
  EXPECT_THROW(Iou7DofLoss(flat, OrientedBox3D{}), DegenerateInput);
}

TEST(Iou7DofLossGrad, MatchesCentralDifferencesInTheInterior) {
  std::mt19937_64 rng(110);
  int checked = 0;
  for (int t = 0; t < 300 && checked < 100; ++t) {
    const OrientedBox3D gt = RandomBox(rng, 0.2, 0.5, 1.5, false);
    const OrientedBox3D pred = RandomBox(rng, 0.2, 0.5, 1.5, false);
    const double loss = Iou7DofLoss(pred, gt);
    if (loss > 0.95) continue;
    const auto g = Iou7DofLossGrad(pred, gt);
    std::vector<double> x = Params9(pred);
    x.resize(7);
    const auto f = [&](std::span<const double> v) {
      return Iou7DofLoss(FromParams(v), gt);
    };
    // Near a kink the one-sided slopes differ; accept those draws only when
    // a smaller step agrees.
    const double err = GradCheck(f, g, x, 1e-6);
    if (err > 1e-4) {
      ASSERT_LE(GradCheck(f, g, x, 1e-9), 1e-3) << t;
      continue;
    }
    ++checked;
  }
  EXPECT_GE(checked, 90);
}

ContrastiveBatch RandomBatch(std::mt19937_64& rng, int k, int l, int d) {
  ContrastiveBatch b;
  b.objects = Eigen::MatrixXd(k, d);
  b.texts = Eigen::MatrixXd(l, d);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < d; ++j) b.objects(i, j) = Uniform(rng, -1, 1);
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < d; ++j) b.texts(i, j) = Uniform(rng, -1, 1);
  for (int i = 0; i < k; ++i) b.object_positive.push_back(int(rng() % l));
  for (int j = 0; j < l; ++j) b.text_positive.push_back(int(rng() % k));
  b.tau = Uniform(rng, 0.2, 1.0);
  return b;
}

TEST(ContrastiveLoss, SingleElementIsZero) {
  ContrastiveBatch b;
  b.objects = Eigen::MatrixXd::Constant(1, 3, 0.5);
  b.texts = Eigen::MatrixXd::Constant(1, 3, -0.2);
  b.object_positive = {0};
  b.text_positive = {0};
  const ContrastiveLosses l = ContrastiveLoss(b);
  EXPECT_EQ(l.object_to_text, 0.0);
  EXPECT_EQ(l.text_to_object, 0.0);
}

TEST(ContrastiveLoss, AlignedTwoByTwo) {
  ContrastiveBatch b;
  b.objects = Eigen::MatrixXd::Identity(2, 2);
  b.texts = b.objects;
  b.object_positive = {0, 1};
  b.text_positive = {0, 1};
  b.tau = 1.0;
  const ContrastiveLosses l = ContrastiveLoss(b);
  const double expected = 2.0 * std::log1p(std::exp(-1.0));
  EXPECT_NEAR(l.object_to_text, expected, 1e-15);
  EXPECT_NEAR(l.text_to_object, expected, 1e-15);
  EXPECT_NEAR(l.total, 2 * expected, 1e-15);
  EXPECT_NEAR(expected, 0.6265, 5e-5);
}

TEST(ContrastiveLoss, StableForLargeLogits) {
  ContrastiveBatch b;
  b.objects = 100.0 * Eigen::MatrixXd::Identity(2, 2);
  b.texts = b.objects;
  b.object_positive = {1, 0};
  b.text_positive = {1, 0};
  b.tau = 0.01;
  const ContrastiveLosses l = ContrastiveLoss(b);
  EXPECT_TRUE(std::isfinite(l.total));
  EXPECT_NEAR(l.object_to_text, 2 * 1e6, 1e-6);
}

TEST(ContrastiveLoss, OrthogonalInvariance) {
  std::mt19937_64 rng(111);
  for (int t = 0; t < 50; ++t) {
    ContrastiveBatch b = RandomBatch(rng, 4, 5, 3);
    const ContrastiveLosses before = ContrastiveLoss(b);
    const Mat3 q = testing::RandomRotation(rng);
    b.objects = b.objects * q;
    b.texts = b.texts * q;
    const ContrastiveLosses after = ContrastiveLoss(b);
    ASSERT_NEAR(after.total, before.total, 1e-9);
    ASSERT_GE(after.object_to_text, 0.0);
  }
}

TEST(ContrastiveLoss, InvalidBatches) {
  std::mt19937_64 rng(112);
  ContrastiveBatch b = RandomBatch(rng, 2, 3, 4);
  b.tau = 0.0;
  EXPECT_THROW(ContrastiveLoss(b), InvalidArgument);
  b = RandomBatch(rng, 2, 3, 4);
  b.object_positive[0] = 3;
  EXPECT_THROW(ContrastiveLoss(b), InvalidArgument);
  b = RandomBatch(rng, 2, 3, 4);
  b.texts = Eigen::MatrixXd::Zero(3, 5);
  EXPECT_THROW(ContrastiveLoss(b), InvalidArgument);
  b = RandomBatch(rng, 2, 3, 4);
  b.text_positive.pop_back();
  EXPECT_THROW(ContrastiveLossGrad(b), InvalidArgument);
}

TEST(ContrastiveLossGrad, MatchesCentralDifferences) {
  std::mt19937_64 rng(113);
  for (int t = 0; t < 100; ++t) {
    const ContrastiveBatch b =
        RandomBatch(rng, 1 + int(rng() % 5), 1 + int(rng() % 5), 1 + int(rng() % 6));
    const ContrastiveGrad g = ContrastiveLossGrad(b);
    const Eigen::Index no = b.objects.size();
    std::vector<double> x, analytic;
    for (Eigen::Index i = 0; i < no; ++i) {
      x.push_back(b.objects.data()[i]);
      analytic.push_back(g.objects.data()[i]);
    }
    for (Eigen::Index i = 0; i < b.texts.size(); ++i) {
      x.push_back(b.texts.data()[i]);
      analytic.push_back(g.texts.data()[i]);
    }
    const auto f = [&](std::span<const double> v) {
      ContrastiveBatch c = b;
      for (Eigen::Index i = 0; i < no; ++i) c.objects.data()[i] = v[i];
      for (Eigen::Index i = 0; i < c.texts.size(); ++i) c.texts.data()[i] = v[no + i];
      return ContrastiveLoss(c).total;
    };
    ASSERT_LE(GradCheck(f, analytic, x, 1e-6), 1e-4) << t;
  }
}

}  // namespace
}  // namespace egoscene
