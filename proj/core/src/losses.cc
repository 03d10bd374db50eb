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

#include <cmath>
#include <limits>
#include <string>

#include "egoscene/errors.h"

namespace egoscene {
namespace {

void CheckCount(std::span<const Vec3> pts, const char* name) {
  if (pts.size() != 8) {
    throw InvalidArgument(std::string("ChamferCorner: ") + name +
                          " must hold 8 points, got " +
                          std::to_string(pts.size()));
  }
}

// Index of the nearest point of `set` to p; ties go to the lowest index.
int Nearest(const Vec3& p, std::span<const Vec3> set) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < set.size(); ++j) {
    const double d = (p - set[j]).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = int(j);
    }
  }
  return best;
}

Vec3 UnitOrZero(const Vec3& v) {
  const double n = v.norm();
  return n > 0.0 ? Vec3(v / n) : Vec3::Zero();
}

OrientedBox3D Mixed(const Vec3& c, const Vec3& s, const EulerZXY& r) {
  OrientedBox3D b;
  b.center = c;
  b.size = s;
  b.rot = r;
  return b;
}

double CornerTerm(const OrientedBox3D& box, const Corners& gt) {
  const Corners c = BoxCorners(box);
  return ChamferCorner(c, gt);
}

// Accumulates weight * dL/d(params) of one term whose corners are built from
// `box`; `mask` selects center, size and rotation groups.
void AccumulateTerm(const OrientedBox3D& box, const Corners& gt, double weight,
                    bool center, bool size, bool rotation,
                    std::array<double, 9>& grad) {
  if (weight == 0.0) return;
  const Corners corners = BoxCorners(box);
  const std::array<Vec3, 8> g = ChamferCornerGrad(corners, gt);
  const Mat3 r = box.Rotation();
  const EulerJacobian jac = EulerToMatrixJacobian(box.rot);
  for (int i = 0; i < 8; ++i) {
    const Vec3 sign = CornerSign(i);
    const Vec3 local = 0.5 * box.size.cwiseProduct(sign);
    if (center) {
      for (int k = 0; k < 3; ++k) grad[k] += weight * g[i][k];
    }
    if (size) {
      for (int k = 0; k < 3; ++k) {
        grad[3 + k] += weight * g[i].dot(r.col(k)) * 0.5 * sign[k];
      }
    }
    if (rotation) {
      grad[6] += weight * g[i].dot(jac.d_alpha * local);
      grad[7] += weight * g[i].dot(jac.d_beta * local);
      grad[8] += weight * g[i].dot(jac.d_gamma * local);
    }
  }
}

// Row-wise log-sum-exp in the stable max-shifted form.
Eigen::VectorXd RowLogSumExp(const Eigen::MatrixXd& s) {
  Eigen::VectorXd out(s.rows());
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    const double m = s.row(i).maxCoeff();
    out[i] = m + std::log((s.row(i).array() - m).exp().sum());
  }
  return out;
}

}  // namespace

void CornerLossWeights::Validate() const {
  for (double v : {center, size, rotation, pred}) {
    if (!(std::isfinite(v) && v >= 0.0)) {
      throw InvalidArgument("corner loss weights must be finite and >= 0");
    }
  }
}

double ChamferCorner(std::span<const Vec3> a, std::span<const Vec3> b) {
  CheckCount(a, "a");
  CheckCount(b, "b");
  double sum_a = 0.0;
  for (const Vec3& p : a) sum_a += (p - b[Nearest(p, b)]).norm();
  double sum_b = 0.0;
  for (const Vec3& q : b) sum_b += (q - a[Nearest(q, a)]).norm();
  return 0.5 * (sum_a / 8.0 + sum_b / 8.0);
}

std::array<Vec3, 8> ChamferCornerGrad(std::span<const Vec3> a,
                                      std::span<const Vec3> b) {
  CheckCount(a, "a");
  CheckCount(b, "b");
  std::array<Vec3, 8> g;
  g.fill(Vec3::Zero());
  for (int i = 0; i < 8; ++i) {
    g[i] += UnitOrZero(a[i] - b[Nearest(a[i], b)]) / 16.0;
  }
  for (int j = 0; j < 8; ++j) {
    const int i = Nearest(b[j], a);
    g[i] += UnitOrZero(a[i] - b[j]) / 16.0;
  }
  return g;
}

CornerLosses DisentangledCornerLoss(const OrientedBox3D& pred,
                                    const OrientedBox3D& gt,
                                    const CornerLossWeights& w) {
  pred.Validate();
  gt.Validate();
  w.Validate();
  const Corners g = BoxCorners(gt);
  CornerLosses out;
  out.center = CornerTerm(Mixed(pred.center, gt.size, gt.rot), g);
  out.size = CornerTerm(Mixed(gt.center, pred.size, gt.rot), g);
  out.rotation = CornerTerm(Mixed(gt.center, gt.size, pred.rot), g);
  out.pred = CornerTerm(pred, g);
  out.loc = w.center * out.center + w.size * out.size +
            w.rotation * out.rotation + w.pred * out.pred;
  return out;
}

std::array<double, 9> DisentangledCornerLossGrad(const OrientedBox3D& pred,
                                                 const OrientedBox3D& gt,
                                                 const CornerLossWeights& w) {
  pred.Validate();
  gt.Validate();
  w.Validate();
  const Corners g = BoxCorners(gt);
  std::array<double, 9> grad{};
  AccumulateTerm(Mixed(pred.center, gt.size, gt.rot), g, w.center, true,
                 false, false, grad);
  AccumulateTerm(Mixed(gt.center, pred.size, gt.rot), g, w.size, false, true,
                 false, grad);
  AccumulateTerm(Mixed(gt.center, gt.size, pred.rot), g, w.rotation, false,
                 false, true, grad);
  AccumulateTerm(pred, g, w.pred, true, true, true, grad);
  return grad;
}

void ContrastiveBatch::Validate() const {
  if (!(std::isfinite(tau) && tau > 0.0)) {
    throw InvalidArgument("contrastive temperature must be > 0");
  }
  if (objects.rows() < 1 || texts.rows() < 1) {
    throw InvalidArgument("contrastive batch needs at least one object and "
                          "one text feature");
  }
  if (objects.cols() != texts.cols()) {
    throw InvalidArgument("object and text feature dimensions differ");
  }
  if (!objects.allFinite() || !texts.allFinite()) {
    throw InvalidArgument("contrastive features must be finite");
  }
  if (object_positive.size() != std::size_t(objects.rows()) ||
      text_positive.size() != std::size_t(texts.rows())) {
    throw InvalidArgument("positive map sizes do not match the batch");
  }
  for (int p : object_positive) {
    if (p < 0 || p >= texts.rows()) {
      throw InvalidArgument("object positive index out of range");
    }
  }
  for (int p : text_positive) {
    if (p < 0 || p >= objects.rows()) {
      throw InvalidArgument("text positive index out of range");
    }
  }
}

ContrastiveLosses ContrastiveLoss(const ContrastiveBatch& batch) {
  batch.Validate();
  const Eigen::MatrixXd s =
      batch.objects * batch.texts.transpose() / batch.tau;
  const Eigen::VectorXd row_lse = RowLogSumExp(s);
  const Eigen::VectorXd col_lse = RowLogSumExp(s.transpose());
  ContrastiveLosses out;
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    out.object_to_text += row_lse[i] - s(i, batch.object_positive[i]);
  }
  for (Eigen::Index j = 0; j < s.cols(); ++j) {
    out.text_to_object += col_lse[j] - s(batch.text_positive[j], j);
  }
  out.total = out.object_to_text + out.text_to_object;
  return out;
}

ContrastiveGrad ContrastiveLossGrad(const ContrastiveBatch& batch) {
  batch.Validate();
  const Eigen::MatrixXd s =
      batch.objects * batch.texts.transpose() / batch.tau;
  const Eigen::VectorXd row_lse = RowLogSumExp(s);
  const Eigen::VectorXd col_lse = RowLogSumExp(s.transpose());
  Eigen::MatrixXd g(s.rows(), s.cols());
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    for (Eigen::Index j = 0; j < s.cols(); ++j) {
      g(i, j) = std::exp(s(i, j) - row_lse[i]) + std::exp(s(i, j) - col_lse[j]);
    }
  }
  for (Eigen::Index i = 0; i < s.rows(); ++i) g(i, batch.object_positive[i]) -= 1.0;
  for (Eigen::Index j = 0; j < s.cols(); ++j) g(batch.text_positive[j], j) -= 1.0;
  ContrastiveGrad out;
  out.objects = g * batch.texts / batch.tau;
  out.texts = g.transpose() * batch.objects / batch.tau;
  return out;
}

}  // namespace egoscene
