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

#include "egoscene/gradcheck.h"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "egoscene/errors.h"

namespace egoscene {
namespace {

double SquaredNorm(std::span<const double> x) {
  double s = 0;
  for (double v : x) s += v * v;
  return s;
}

TEST(GradCheck, QuadraticIsExact) {
  std::mt19937_64 rng(121);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> x(1 + t % 7), g;
    for (double& v : x) v = u(rng);
    for (double v : x) g.push_back(2 * v);
    EXPECT_LE(GradCheck(SquaredNorm, g, x), 1e-9);
  }
}

TEST(GradCheck, ConstantFunction) {
  const std::vector<double> x = {1, 2, 3}, g = {0, 0, 0};
  EXPECT_EQ(GradCheck([](std::span<const double>) { return 4.2; }, g, x), 0.0);
}

TEST(GradCheck, ReportsWrongGradient) {
  const std::vector<double> x = {1, 2}, g = {2, 5};
  EXPECT_NEAR(GradCheck(SquaredNorm, g, x), 1.0 / 5.0, 1e-6);
}

TEST(GradCheck, SmallGradientsUseAbsoluteError) {
  const std::vector<double> x = {1e-3}, g = {0.0};
  EXPECT_NEAR(GradCheck(SquaredNorm, g, x), 2e-3, 1e-9);
}

TEST(GradCheck, Errors) {
  const std::vector<double> x = {1, 2}, g = {2};
  EXPECT_THROW(GradCheck(SquaredNorm, g, x), InvalidArgument);
  const std::vector<double> g2 = {2, 4};
  EXPECT_THROW(GradCheck(SquaredNorm, g2, x, 0.0), InvalidArgument);
  EXPECT_THROW(GradCheck([](std::span<const double> v) { return std::log(v[0] - 1); },
                         g2, x),
               EvaluationError);
}

}  // namespace
}  // namespace egoscene
