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

#include "gradcheck_trials.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "egoscene/bev.h"
#include "egoscene/errors.h"
#include "egoscene/gradcheck.h"
#include "egoscene/losses.h"

namespace egoscene::tools {
namespace {

// Draws closer than this to a kink of the iou7 loss are skipped.
constexpr double kKinkMargin = 1e-3;

double U(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

OrientedBox3D BoxFromParams(std::span<const double> x) {
  OrientedBox3D b;
  b.center = {x[0], x[1], x[2]};
  b.size = {x[3], x[4], x[5]};
  b.rot.alpha = x[6];
  if (x.size() > 7) {
    b.rot.beta = x[7];
    b.rot.gamma = x[8];
  }
  return b;
}

std::vector<double> ParamsOf(const OrientedBox3D& b, bool full) {
  std::vector<double> x = {b.center.x(), b.center.y(), b.center.z(),
                           b.size.x(),   b.size.y(),   b.size.z(),
                           b.rot.alpha};
  if (full) {
    x.push_back(b.rot.beta);
    x.push_back(b.rot.gamma);
  }
  return x;
}

double CornerTrial(std::mt19937_64& rng) {
  OrientedBox3D gt;
  gt.center = {U(rng, -2, 2), U(rng, -2, 2), U(rng, 0, 1.5)};
  gt.size = {U(rng, 0.3, 2), U(rng, 0.3, 2), U(rng, 0.3, 2)};
  gt.rot = {U(rng, -std::numbers::pi, std::numbers::pi), U(rng, -1, 1),
            U(rng, -std::numbers::pi, std::numbers::pi)};
  OrientedBox3D pred = gt;
  for (int k = 0; k < 3; ++k) {
    pred.center[k] += U(rng, -0.3, 0.3);
    pred.size[k] *= U(rng, 0.7, 1.3);
  }
  pred.rot.alpha += U(rng, -0.3, 0.3);
  pred.rot.beta += U(rng, -0.3, 0.3);
  pred.rot.gamma += U(rng, -0.3, 0.3);
  const std::array<double, 9> g = DisentangledCornerLossGrad(pred, gt);
  return GradCheck(
      [&](std::span<const double> x) {
        return DisentangledCornerLoss(BoxFromParams(x), gt).loc;
      },
      g, ParamsOf(pred, true));
}

double SegmentDistance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double t = std::clamp((p - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
  return (a + t * ab - p).norm();
}

// True when no corner of either footprint lies near an edge of the other,
// edges are not near parallel, and the z faces are apart.
bool AwayFromKinks(const OrientedBox3D& p, const OrientedBox3D& g) {
  const auto cp = Footprint(p).Corners();
  const auto cg = Footprint(g).Corners();
  for (const auto& [from, to] : {std::pair{&cp, &cg}, std::pair{&cg, &cp}}) {
    for (const Vec2& v : *from) {
      for (int e = 0; e < 4; ++e) {
        if (SegmentDistance(v, (*to)[e], (*to)[(e + 1) % 4]) < kKinkMargin) {
          return false;
        }
      }
    }
  }
  const double dyaw = std::remainder(p.rot.alpha - g.rot.alpha,
                                     std::numbers::pi / 2);
  if (std::abs(dyaw) < kKinkMargin) return false;
  const double p_lo = p.center.z() - 0.5 * p.size.z();
  const double p_hi = p.center.z() + 0.5 * p.size.z();
  const double g_lo = g.center.z() - 0.5 * g.size.z();
  const double g_hi = g.center.z() + 0.5 * g.size.z();
  return std::abs(p_lo - g_lo) >= kKinkMargin &&
         std::abs(p_hi - g_hi) >= kKinkMargin;
}

// nullopt when the draw is rejected.
std::optional<double> Iou7Trial(std::mt19937_64& rng) {
  OrientedBox3D gt;
  gt.center = {U(rng, -1, 1), U(rng, -1, 1), U(rng, 0, 1)};
  gt.size = {U(rng, 0.5, 2), U(rng, 0.5, 2), U(rng, 0.5, 2)};
  gt.rot.alpha = U(rng, -std::numbers::pi, std::numbers::pi);
  OrientedBox3D pred = gt;
  for (int k = 0; k < 3; ++k) {
    pred.center[k] += U(rng, -0.4, 0.4);
    pred.size[k] *= U(rng, 0.7, 1.3);
  }
  pred.rot.alpha += U(rng, -0.5, 0.5);
  const double loss = Iou7DofLoss(pred, gt);
  if (loss > 0.95 || !AwayFromKinks(pred, gt)) return std::nullopt;
  const std::array<double, 7> g = Iou7DofLossGrad(pred, gt);
  return GradCheck(
      [&](std::span<const double> x) {
        return Iou7DofLoss(BoxFromParams(x), gt);
      },
      g, ParamsOf(pred, false));
}

double ContrastiveTrial(std::mt19937_64& rng) {
  const int k = std::uniform_int_distribution<int>(1, 5)(rng);
  const int l = std::uniform_int_distribution<int>(1, 5)(rng);
  const int d = std::uniform_int_distribution<int>(2, 8)(rng);
  ContrastiveBatch batch;
  batch.tau = U(rng, 0.05, 1.0);
  batch.objects.resize(k, d);
  batch.texts.resize(l, d);
  for (int i = 0; i < k * d; ++i) batch.objects.data()[i] = U(rng, -0.5, 0.5);
  for (int i = 0; i < l * d; ++i) batch.texts.data()[i] = U(rng, -0.5, 0.5);
  for (int i = 0; i < k; ++i) {
    batch.object_positive.push_back(
        std::uniform_int_distribution<int>(0, l - 1)(rng));
  }
  for (int j = 0; j < l; ++j) {
    batch.text_positive.push_back(
        std::uniform_int_distribution<int>(0, k - 1)(rng));
  }
  const ContrastiveGrad g = ContrastiveLossGrad(batch);
  // Row-major flattening: objects first, then texts.
  std::vector<double> x, analytic;
  for (int i = 0; i < k; ++i) {
    for (int c = 0; c < d; ++c) {
      x.push_back(batch.objects(i, c));
      analytic.push_back(g.objects(i, c));
    }
  }
  for (int j = 0; j < l; ++j) {
    for (int c = 0; c < d; ++c) {
      x.push_back(batch.texts(j, c));
      analytic.push_back(g.texts(j, c));
    }
  }
  return GradCheck(
      [&](std::span<const double> v) {
        ContrastiveBatch b = batch;
        for (int i = 0; i < k; ++i) {
          for (int c = 0; c < d; ++c) b.objects(i, c) = v[i * d + c];
        }
        for (int j = 0; j < l; ++j) {
          for (int c = 0; c < d; ++c) b.texts(j, c) = v[(k + j) * d + c];
        }
        return ContrastiveLoss(b).total;
      },
      analytic, x);
}

}  // namespace

std::optional<LossKind> ParseLossKind(std::string_view name) {
  if (name == "corner") return LossKind::kCorner;
  if (name == "iou7") return LossKind::kIou7;
  if (name == "contrastive") return LossKind::kContrastive;
  return std::nullopt;
}

TrialSummary RunGradCheckTrials(LossKind kind, int trials, std::uint64_t seed,
                                double tolerance) {
  if (trials < 1) throw InvalidArgument("gradcheck: trials must be >= 1");
  std::mt19937_64 rng(seed);
  TrialSummary s;
  const int max_draws = 100 * trials;
  for (int draws = 0; s.trials < trials; ++draws) {
    if (draws >= max_draws) {
      throw EvaluationError("gradcheck: too many rejected draws");
    }
    std::optional<double> err;
    switch (kind) {
      case LossKind::kCorner: err = CornerTrial(rng); break;
      case LossKind::kIou7: err = Iou7Trial(rng); break;
      case LossKind::kContrastive: err = ContrastiveTrial(rng); break;
    }
    if (!err) {
      ++s.skipped;
      continue;
    }
    ++s.trials;
    s.max_error = std::max(s.max_error, *err);
  }
  s.pass = s.max_error <= tolerance;
  return s;
}

}  // namespace egoscene::tools
