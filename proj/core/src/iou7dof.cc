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

#include <algorithm>
#include <cmath>
#include <vector>

#include "egoscene/bev.h"
#include "egoscene/box_iou.h"
#include "egoscene/errors.h"
#include "egoscene/losses.h"

namespace egoscene {
namespace {

// d(vertex) / d(cx, cy, sx, sy, yaw) of the moving rectangle.
using VertexJacobian = Eigen::Matrix<double, 2, 5>;

struct Vertex {
  Vec2 p;
  VertexJacobian j;
};

Vec2 Rotate(double yaw, const Vec2& v) {
  const double c = std::cos(yaw), s = std::sin(yaw);
  return {c * v.x() - s * v.y(), s * v.x() + c * v.y()};
}

constexpr double kSigns[4][2] = {{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};

std::vector<Vertex> RectVertices(const Rect2D& r) {
  const double c = std::cos(r.yaw), s = std::sin(r.yaw);
  std::vector<Vertex> out(4);
  for (int k = 0; k < 4; ++k) {
    const Vec2 local(0.5 * r.size.x() * kSigns[k][0],
                     0.5 * r.size.y() * kSigns[k][1]);
    Vertex& v = out[k];
    v.p = r.center + Rotate(r.yaw, local);
    v.j.setZero();
    v.j(0, 0) = 1.0;
    v.j(1, 1) = 1.0;
    v.j.col(2) = 0.5 * kSigns[k][0] * Vec2(c, s);
    v.j.col(3) = 0.5 * kSigns[k][1] * Vec2(-s, c);
    v.j.col(4) = Vec2(-s * local.x() - c * local.y(),
                      c * local.x() - s * local.y());
  }
  return out;
}

// Sutherland-Hodgman against the fixed convex CCW polygon `clip`, carrying
// vertex Jacobians through every intersection.
std::vector<Vertex> Clip(std::vector<Vertex> subject,
                         const std::vector<Vec2>& clip) {
  const std::size_t m = clip.size();
  double scale = 1.0;
  for (const Vec2& c : clip) scale = std::max(scale, c.cwiseAbs().maxCoeff());
  for (std::size_t e = 0; e < m && !subject.empty(); ++e) {
    const Vec2& a = clip[e];
    const Vec2& b = clip[(e + 1) % m];
    const Vec2 n(b.y() - a.y(), a.x() - b.x());  // outward
    const double d = n.dot(a);
    // Vertices on a shared edge count as inside; rounding would otherwise
    // drop coincident edges at random.
    const double tol = 1e-12 * n.norm() * scale;
    std::vector<Vertex> out;
    const std::size_t k = subject.size();
    for (std::size_t i = 0; i < k; ++i) {
      const Vertex& p = subject[(i + k - 1) % k];
      const Vertex& q = subject[i];
      const double fp = n.dot(p.p) - d;
      const double fq = n.dot(q.p) - d;
      const bool p_in = fp <= tol;
      const bool q_in = fq <= tol;
      if (p_in != q_in) {
        const Vec2 pq = q.p - p.p;
        const double denom = n.dot(pq);
        const double t = std::clamp(-fp / denom, 0.0, 1.0);
        Vertex x;
        x.p = p.p + t * pq;
        const VertexJacobian dpq = q.j - p.j;
        const Eigen::Matrix<double, 1, 5> dt =
            (-(n.transpose() * p.j) - t * (n.transpose() * dpq)) / denom;
        x.j = p.j + pq * dt + t * dpq;
        out.push_back(x);
      }
      if (q_in) out.push_back(q);
    }
    subject = std::move(out);
  }
  return subject;
}

double Area(const std::vector<Vertex>& poly) {
  double s = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = poly[i].p;
    const Vec2& b = poly[(i + 1) % n].p;
    s += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * s;
}

Eigen::Matrix<double, 1, 5> AreaGrad(const std::vector<Vertex>& poly) {
  Eigen::Matrix<double, 1, 5> g = Eigen::Matrix<double, 1, 5>::Zero();
  const std::size_t n = poly.size();
  if (n < 3) return g;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& next = poly[(i + 1) % n].p;
    const Vec2& prev = poly[(i + n - 1) % n].p;
    const Vec2 da(0.5 * (next.y() - prev.y()), 0.5 * (prev.x() - next.x()));
    g += da.transpose() * poly[i].j;
  }
  return g;
}

std::vector<Vec2> ToPoints(const std::array<Vec2, 4>& c) {
  return {c.begin(), c.end()};
}

struct YawBoxPair {
  OrientedBox3D p, g;
};

YawBoxPair Prepare(const OrientedBox3D& pred, const OrientedBox3D& gt) {
  pred.Validate();
  gt.Validate();
  if (pred.Volume() < kMinBoxVolume || gt.Volume() < kMinBoxVolume) {
    throw DegenerateInput("Iou7DofLoss: box volume below 1e-12 m^3");
  }
  return {YawOnly(pred), YawOnly(gt)};
}

}  // namespace

std::array<Vec2, 4> Rect2D::Corners() const {
  std::array<Vec2, 4> out;
  for (int k = 0; k < 4; ++k) {
    out[k] = center + Rotate(yaw, Vec2(0.5 * size.x() * kSigns[k][0],
                                       0.5 * size.y() * kSigns[k][1]));
  }
  return out;
}

OrientedBox3D YawOnly(const OrientedBox3D& box) {
  OrientedBox3D out = box;
  out.rot.beta = 0.0;
  out.rot.gamma = 0.0;
  return out;
}

Rect2D Footprint(const OrientedBox3D& box) {
  Rect2D r;
  r.center = box.center.head<2>();
  r.size = box.size.head<2>();
  r.yaw = box.rot.alpha;
  return r;
}

std::vector<Vec2> ClipConvexPolygon(const std::vector<Vec2>& subject,
                                    const std::vector<Vec2>& clip) {
  std::vector<Vertex> s(subject.size());
  for (std::size_t i = 0; i < subject.size(); ++i) {
    s[i].p = subject[i];
    s[i].j.setZero();
  }
  std::vector<Vec2> out;
  for (const Vertex& v : Clip(std::move(s), clip)) out.push_back(v.p);
  return out;
}

double PolygonArea(const std::vector<Vec2>& polygon) {
  double s = 0.0;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = polygon[i];
    const Vec2& b = polygon[(i + 1) % n];
    s += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * s;
}

double RectIntersectionArea(const Rect2D& a, const Rect2D& b) {
  const auto ca = a.Corners();
  const auto cb = b.Corners();
  return std::max(
      0.0, PolygonArea(ClipConvexPolygon(ToPoints(ca), ToPoints(cb))));
}

double RectIoU(const Rect2D& a, const Rect2D& b) {
  const double inter = RectIntersectionArea(a, b);
  const double uni = a.Area() + b.Area() - inter;
  return uni > 0.0 ? std::clamp(inter / uni, 0.0, 1.0) : 0.0;
}

double Iou7DofLoss(const OrientedBox3D& pred, const OrientedBox3D& gt) {
  const YawBoxPair y = Prepare(pred, gt);
  const double zlo = std::max(y.p.center.z() - 0.5 * y.p.size.z(),
                              y.g.center.z() - 0.5 * y.g.size.z());
  const double zhi = std::min(y.p.center.z() + 0.5 * y.p.size.z(),
                              y.g.center.z() + 0.5 * y.g.size.z());
  const double h = std::max(0.0, zhi - zlo);
  const double inter =
      h > 0.0 ? RectIntersectionArea(Footprint(y.p), Footprint(y.g)) * h : 0.0;
  const double uni = y.p.Volume() + y.g.Volume() - inter;
  return 1.0 - std::clamp(inter / uni, 0.0, 1.0);
}

std::array<double, 7> Iou7DofLossGrad(const OrientedBox3D& pred,
                                      const OrientedBox3D& gt) {
  const YawBoxPair y = Prepare(pred, gt);
  std::array<double, 7> grad{};

  const double p_lo = y.p.center.z() - 0.5 * y.p.size.z();
  const double p_hi = y.p.center.z() + 0.5 * y.p.size.z();
  const double g_lo = y.g.center.z() - 0.5 * y.g.size.z();
  const double g_hi = y.g.center.z() + 0.5 * y.g.size.z();
  const double h = std::min(p_hi, g_hi) - std::max(p_lo, g_lo);
  if (h <= 0.0) return grad;

  const Rect2D fp = Footprint(y.p);
  const std::vector<Vertex> poly =
      Clip(RectVertices(fp), ToPoints(Footprint(y.g).Corners()));
  const double area = poly.size() >= 3 ? Area(poly) : 0.0;
  if (area <= 0.0) return grad;
  const Eigen::Matrix<double, 1, 5> d_area = AreaGrad(poly);

  // d h / d(cz, dz).
  double dh_cz = 0.0, dh_dz = 0.0;
  if (p_hi < g_hi) {
    dh_cz += 1.0;
    dh_dz += 0.5;
  }
  if (p_lo > g_lo) {
    dh_cz -= 1.0;
    dh_dz += 0.5;
  }

  // d I / d(cx, cy, cz, dx, dy, dz, yaw).
  std::array<double, 7> d_inter{};
  d_inter[0] = d_area[0] * h;
  d_inter[1] = d_area[1] * h;
  d_inter[2] = area * dh_cz;
  d_inter[3] = d_area[2] * h;
  d_inter[4] = d_area[3] * h;
  d_inter[5] = area * dh_dz;
  d_inter[6] = d_area[4] * h;

  const Vec3& s = y.p.size;
  std::array<double, 7> d_vol{};
  d_vol[3] = s.y() * s.z();
  d_vol[4] = s.x() * s.z();
  d_vol[5] = s.x() * s.y();

  const double inter = area * h;
  const double uni = y.p.Volume() + y.g.Volume() - inter;
  for (int k = 0; k < 7; ++k) {
    // IoU = I / (Vp + Vg - I); the loss is 1 - IoU.
    const double d_iou =
        (d_inter[k] * (uni + inter) - inter * d_vol[k]) / (uni * uni);
    grad[k] = -d_iou;
  }
  return grad;
}

}  // namespace egoscene
