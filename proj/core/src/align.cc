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

#include "egoscene/align.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <unordered_map>
#include <vector>

#include <Eigen/Eigenvalues>

#include "egoscene/errors.h"
#include "egoscene/rotation.h"

namespace egoscene {
namespace {

constexpr double kDeg = std::numbers::pi / 180.0;
constexpr int kBins = 90;  // 1 degree bins over [0, 90)
constexpr int kMinNeighbors = 6;

struct CellKey {
  std::int64_t x, y, z;
  bool operator==(const CellKey&) const = default;
};

struct CellKeyHash {
  std::size_t operator()(const CellKey& k) const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::int64_t v : {k.x, k.y, k.z}) {
      h ^= std::uint64_t(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return std::size_t(h);
  }
};

// Wraps degrees into [0, 90).
double Mod90(double deg) {
  double m = std::fmod(deg, 90.0);
  if (m < 0.0) m += 90.0;
  if (m >= 90.0) m -= 90.0;
  return m;
}

// Signed difference a - b folded into [-45, 45).
double Diff90(double a, double b) { return Mod90(a - b + 45.0) - 45.0; }

// Dominant wall orientation in degrees, modulo 90. Negative when the cloud
// shows no vertical planar structure.
double DominantOrientation(const PointCloud& cloud,
                           const AlignOptions& options) {
  const double r = options.neighbor_radius;
  auto key_of = [r](const Vec3& p) {
    return CellKey{std::int64_t(std::floor(p.x() / r)),
                   std::int64_t(std::floor(p.y() / r)),
                   std::int64_t(std::floor(p.z() / r))};
  };
  std::unordered_map<CellKey, std::vector<std::size_t>, CellKeyHash> grid;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    grid[key_of(cloud[i])].push_back(i);
  }

  const std::size_t step = std::max<std::size_t>(
      1, (cloud.size() + options.max_queries - 1) / options.max_queries);
  std::vector<double> angles;
  std::vector<double> weights;
  std::array<double, kBins> hist{};
  for (std::size_t q = 0; q < cloud.size(); q += step) {
    const Vec3& p = cloud[q];
    const CellKey k = key_of(p);
    Vec3 mean = Vec3::Zero();
    Mat3 second = Mat3::Zero();
    int count = 0;
    for (int dx = -1; dx <= 1; ++dx) {
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dz = -1; dz <= 1; ++dz) {
          auto it = grid.find({k.x + dx, k.y + dy, k.z + dz});
          if (it == grid.end()) continue;
          for (std::size_t j : it->second) {
            const Vec3 d = cloud[j] - p;
            if (d.squaredNorm() > r * r) continue;
            mean += d;
            second += d * d.transpose();
            ++count;
          }
        }
      }
    }
    if (count < kMinNeighbors) continue;
    mean /= count;
    const Mat3 cov = second / count - mean * mean.transpose();
    Eigen::SelfAdjointEigenSolver<Mat3> eig(cov);
    const Vec3 lambda = eig.eigenvalues();
    // Planar neighborhoods only.
    if (!(lambda(0) < 0.1 * lambda(1))) continue;
    const Vec3 n = eig.eigenvectors().col(0);
    const double horizontal = std::hypot(n.x(), n.y());
    if (horizontal < 0.95) continue;  // not a vertical surface
    const double deg = Mod90(std::atan2(n.y(), n.x()) / kDeg);
    const int bin = std::min(kBins - 1, int(deg));
    hist[bin] += horizontal;
    angles.push_back(deg);
    weights.push_back(horizontal);
  }
  if (angles.empty()) return -1.0;

  // Peak of the circularly smoothed histogram, refined by the weighted mean
  // offset of the samples within 1.5 degrees of the peak bin center.
  int best = 0;
  double best_mass = -1.0;
  for (int b = 0; b < kBins; ++b) {
    const double mass =
        hist[(b + kBins - 1) % kBins] + hist[b] + hist[(b + 1) % kBins];
    if (mass > best_mass) {
      best_mass = mass;
      best = b;
    }
  }
  const double center = best + 0.5;
  double sum = 0.0, wsum = 0.0;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const double d = Diff90(angles[i], center);
    if (std::abs(d) <= 1.5) {
      sum += weights[i] * d;
      wsum += weights[i];
    }
  }
  return Mod90(center + (wsum > 0.0 ? sum / wsum : 0.0));
}

}  // namespace

Vec3 ZRigidTransform::Apply(const Vec3& p) const {
  return RotZ(yaw) * p + translation;
}

ZRigidTransform AlignScene(const PointCloud& cloud,
                           const AlignOptions& options) {
  if (cloud.size() < 100) {
    throw InsufficientData("AlignScene: at least 100 points are required");
  }
  if (!(options.neighbor_radius > 0.0) || options.max_queries == 0 ||
      !(options.floor_quantile >= 0.0 && options.floor_quantile <= 1.0)) {
    throw InvalidArgument("AlignScene: invalid options");
  }

  ZRigidTransform t;
  const double dominant = DominantOrientation(cloud, options);
  if (dominant >= 0.0) {
    // Rotating by -dominant brings the walls onto the axes; pick the
    // representative in [-45, 45).
    t.yaw = (Mod90(-dominant + 45.0) - 45.0) * kDeg;
  }

  const Mat3 rz = RotZ(t.yaw);
  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
  Vec3 hi = -lo;
  std::vector<double> zs;
  zs.reserve(cloud.size());
  for (const Vec3& p : cloud) {
    const Vec3 q = rz * p;
    lo = lo.cwiseMin(q);
    hi = hi.cwiseMax(q);
    zs.push_back(q.z());
  }
  const std::size_t k = std::size_t(
      std::floor(options.floor_quantile * double(zs.size() - 1)));
  std::nth_element(zs.begin(), zs.begin() + k, zs.end());
  t.translation = Vec3(-0.5 * (lo.x() + hi.x()), -0.5 * (lo.y() + hi.y()),
                       -zs[k]);
  return t;
}

}  // namespace egoscene
