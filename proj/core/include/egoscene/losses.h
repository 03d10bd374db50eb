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

#ifndef EGOSCENE_LOSSES_H_
#define EGOSCENE_LOSSES_H_

#include <array>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "egoscene/box.h"

namespace egoscene {

// Weights of the combined localization loss. Defaults: 0.2 for each
// disentangled term and 0.4 for the full-prediction term.
struct CornerLossWeights {
  double center = 0.2;
  double size = 0.2;
  double rotation = 0.2;
  double pred = 0.4;

  void Validate() const;
};

// Symmetric corner Chamfer distance: the mean nearest-neighbor Euclidean
// distance from a to b and from b to a, averaged. Both sets must hold
// exactly 8 points (InvalidArgument otherwise).
double ChamferCorner(std::span<const Vec3> a, std::span<const Vec3> b);

// d ChamferCorner / d a. Nearest-neighbor ties resolve to the lowest index.
std::array<Vec3, 8> ChamferCornerGrad(std::span<const Vec3> a,
                                      std::span<const Vec3> b);

struct CornerLosses {
  double center = 0.0;    // predicted center, gt size and rotation
  double size = 0.0;      // predicted size, gt center and rotation
  double rotation = 0.0;  // predicted rotation, gt center and size
  double pred = 0.0;      // full predicted box
  double loc = 0.0;       // weighted sum
};

CornerLosses DisentangledCornerLoss(const OrientedBox3D& pred,
                                    const OrientedBox3D& gt,
                                    const CornerLossWeights& w = {});

// Gradient of CornerLosses::loc with respect to the predicted parameters in
// the order (cx, cy, cz, dx, dy, dz, alpha, beta, gamma).
std::array<double, 9> DisentangledCornerLossGrad(
    const OrientedBox3D& pred, const OrientedBox3D& gt,
    const CornerLossWeights& w = {});

// 1 - IoU of the yaw-only reductions of both boxes: rotated-rectangle
// overlap in XY times the z-interval overlap. Throws DegenerateInput for
// boxes below kMinBoxVolume.
double Iou7DofLoss(const OrientedBox3D& pred, const OrientedBox3D& gt);

// Gradient of Iou7DofLoss with respect to (cx, cy, cz, dx, dy, dz, alpha)
// of the prediction. Zero where the boxes do not overlap.
std::array<double, 7> Iou7DofLossGrad(const OrientedBox3D& pred,
                                      const OrientedBox3D& gt);

inline constexpr double kDefaultTemperature = 0.1;

// Object and text features share the feature dimension. object_positive[i]
// is the positive text row of object i; text_positive[j] the positive object
// row of text j.
struct ContrastiveBatch {
  Eigen::MatrixXd objects;
  Eigen::MatrixXd texts;
  std::vector<int> object_positive;
  std::vector<int> text_positive;
  double tau = kDefaultTemperature;

  void Validate() const;
};

struct ContrastiveLosses {
  double object_to_text = 0.0;
  double text_to_object = 0.0;
  double total = 0.0;
};

ContrastiveLosses ContrastiveLoss(const ContrastiveBatch& batch);

struct ContrastiveGrad {
  Eigen::MatrixXd objects;
  Eigen::MatrixXd texts;
};

// Gradient of ContrastiveLosses::total.
ContrastiveGrad ContrastiveLossGrad(const ContrastiveBatch& batch);

}  // namespace egoscene

#endif  // EGOSCENE_LOSSES_H_
