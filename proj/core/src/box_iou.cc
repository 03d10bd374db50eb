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

#include "egoscene/box_iou.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "egoscene/errors.h"

namespace egoscene {
namespace {

// Tolerance of the plane-side tests during clipping.
constexpr double kPlaneEps = 1e-12;

using Polygon = std::vector<Vec3>;

Vec3 NewellNormal(const Polygon& poly) {
  Vec3 n = Vec3::Zero();
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec3& p = poly[i];
    const Vec3& q = poly[(i + 1) % poly.size()];
    n.x() += (p.y() - q.y()) * (p.z() + q.z());
    n.y() += (p.z() - q.z()) * (p.x() + q.x());
    n.z() += (p.x() - q.x()) * (p.y() + q.y());
  }
  return n;
}

// Orders coplanar points counter-clockwise around the plane normal `n`.
Polygon OrderAround(Polygon pts, const Vec3& n) {
  Vec3 c = Vec3::Zero();
  for (const Vec3& p : pts) c += p;
  c /= double(pts.size());
  const Vec3 u = n.unitOrthogonal();
  const Vec3 v = n.cross(u);
  std::vector<std::pair<double, Vec3>> keyed;
  keyed.reserve(pts.size());
  for (const Vec3& p : pts) {
    const Vec3 d = p - c;
    keyed.emplace_back(std::atan2(d.dot(v), d.dot(u)), p);
  }
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  Polygon out;
  out.reserve(keyed.size());
  for (const auto& [angle, p] : keyed) out.push_back(p);
  return out;
}

// Keeps the part of a closed convex polytope (outward-oriented faces) with
// n.x <= d and closes the cut with a cap face.
void ClipPolytope(std::vector<Polygon>& faces, const Vec3& n, double d) {
  std::vector<Polygon> kept;
  Polygon cap;
  bool covered = false;
  for (const Polygon& face : faces) {
    const std::size_t m = face.size();
    std::vector<double> dist(m);
    bool all_on_plane = true;
    for (std::size_t i = 0; i < m; ++i) {
      dist[i] = n.dot(face[i]) - d;
      if (std::abs(dist[i]) > kPlaneEps) all_on_plane = false;
    }
    if (all_on_plane) {
      // A face lying in the cutting plane is either already the cap or
      // faces into the discarded side.
      if (NewellNormal(face).dot(n) > 0.0) {
        kept.push_back(face);
        covered = true;
      }
      continue;
    }
    Polygon clipped;
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t j = (i + 1) % m;
      const bool in_i = dist[i] <= kPlaneEps;
      const bool in_j = dist[j] <= kPlaneEps;
      if (in_i) {
        clipped.push_back(face[i]);
        if (dist[i] >= -kPlaneEps) cap.push_back(face[i]);
      }
      if (in_i != in_j) {
        const double t = dist[i] / (dist[i] - dist[j]);
        const Vec3 x = face[i] + t * (face[j] - face[i]);
        clipped.push_back(x);
        cap.push_back(x);
      }
    }
    if (clipped.size() >= 3) kept.push_back(std::move(clipped));
  }
  if (!covered && cap.size() >= 3) kept.push_back(OrderAround(cap, n));
  faces = std::move(kept);
}

double PolytopeVolume(const std::vector<Polygon>& faces) {
  double six_v = 0.0;
  for (const Polygon& f : faces) {
    for (std::size_t i = 1; i + 1 < f.size(); ++i) {
      six_v += f[0].dot(f[i].cross(f[i + 1]));
    }
  }
  return std::max(0.0, six_v / 6.0);
}

void CheckVolume(const OrientedBox3D& b, const char* which) {
  b.Validate();
  if (b.Volume() < kMinBoxVolume) {
    throw DegenerateInput(std::string("box ") + which +
                          " has near-zero volume");
  }
}

}  // namespace

bool BoxesDisjoint(const OrientedBox3D& a, const OrientedBox3D& b) {
  const Mat3 ra = a.Rotation();
  const Mat3 rb = b.Rotation();
  const Vec3 ha = 0.5 * a.size;
  const Vec3 hb = 0.5 * b.size;
  // b expressed in a's frame.
  const Mat3 r = ra.transpose() * rb;
  const Vec3 t = ra.transpose() * (b.center - a.center);
  Mat3 abs_r = r.cwiseAbs();
  abs_r.array() += 1e-12;

  for (int i = 0; i < 3; ++i) {
    if (std::abs(t[i]) > ha[i] + abs_r.row(i).dot(hb)) return true;
  }
  for (int j = 0; j < 3; ++j) {
    if (std::abs(t.dot(r.col(j))) > abs_r.col(j).dot(ha) + hb[j]) return true;
  }
  for (int i = 0; i < 3; ++i) {
    const int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
    for (int j = 0; j < 3; ++j) {
      const int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
      const double ra_ = ha[i1] * abs_r(i2, j) + ha[i2] * abs_r(i1, j);
      const double rb_ = hb[j1] * abs_r(i, j2) + hb[j2] * abs_r(i, j1);
      const double dist = std::abs(t[i2] * r(i1, j) - t[i1] * r(i2, j));
      if (dist > ra_ + rb_) return true;
    }
  }
  return false;
}

double IntersectionVolume(const OrientedBox3D& a, const OrientedBox3D& b) {
  const Mat3 ra_t = a.Rotation().transpose();
  const Corners world = BoxCorners(b);
  Corners local;
  for (int i = 0; i < 8; ++i) local[i] = ra_t * (world[i] - a.center);

  std::vector<Polygon> faces;
  faces.reserve(6);
  for (const auto& f : BoxFaces()) {
    faces.push_back({local[f[0]], local[f[1]], local[f[2]], local[f[3]]});
  }
  const Vec3 h = 0.5 * a.size;
  for (int axis = 0; axis < 3 && !faces.empty(); ++axis) {
    for (double side : {1.0, -1.0}) {
      Vec3 n = Vec3::Zero();
      n[axis] = side;
      ClipPolytope(faces, n, h[axis]);
      if (faces.empty()) break;
    }
  }
  return PolytopeVolume(faces);
}

double BoxIoU(const OrientedBox3D& a, const OrientedBox3D& b) {
  CheckVolume(a, "a");
  CheckVolume(b, "b");
  if (BoxesDisjoint(a, b)) return 0.0;
  const double va = a.Volume();
  const double vb = b.Volume();
  const double inter = std::min({IntersectionVolume(a, b), va, vb});
  return std::clamp(inter / (va + vb - inter), 0.0, 1.0);
}

double BoxIoUMonteCarlo(const OrientedBox3D& a, const OrientedBox3D& b,
                        std::int64_t n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw InvalidArgument("BoxIoUMonteCarlo: n_samples < 1");
  a.Validate();
  b.Validate();
  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
  Vec3 hi = -lo;
  for (const OrientedBox3D* box : {&a, &b}) {
    for (const Vec3& c : BoxCorners(*box)) {
      lo = lo.cwiseMin(c);
      hi = hi.cwiseMax(c);
    }
  }
  const Mat3 ra_t = a.Rotation().transpose();
  const Mat3 rb_t = b.Rotation().transpose();
  const Vec3 ha = 0.5 * a.size;
  const Vec3 hb = 0.5 * b.size;
  auto inside = [](const Mat3& r_t, const Vec3& c, const Vec3& h,
                   const Vec3& p) {
    const Vec3 q = r_t * (p - c);
    return std::abs(q.x()) <= h.x() && std::abs(q.y()) <= h.y() &&
           std::abs(q.z()) <= h.z();
  };

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(lo.x(), hi.x());
  std::uniform_real_distribution<double> uy(lo.y(), hi.y());
  std::uniform_real_distribution<double> uz(lo.z(), hi.z());
  std::int64_t both = 0, either = 0;
  for (std::int64_t i = 0; i < n_samples; ++i) {
    const Vec3 p(ux(rng), uy(rng), uz(rng));
    const bool in_a = inside(ra_t, a.center, ha, p);
    const bool in_b = inside(rb_t, b.center, hb, p);
    both += (in_a && in_b);
    either += (in_a || in_b);
  }
  return either == 0 ? 0.0 : double(both) / double(either);
}

}  // namespace egoscene
