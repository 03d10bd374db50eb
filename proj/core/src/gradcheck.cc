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

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "egoscene/errors.h"

namespace egoscene {
namespace {

double Evaluate(const ScalarFunction& f, const std::vector<double>& x) {
  const double v = f(x);
  if (!std::isfinite(v)) {
    throw EvaluationError("GradCheck: function returned a non-finite value");
  }
  return v;
}

}  // namespace

double GradCheck(const ScalarFunction& f, std::span<const double> analytic,
                 std::span<const double> x, double h) {
  if (analytic.size() != x.size()) {
    throw InvalidArgument("GradCheck: gradient has " +
                          std::to_string(analytic.size()) +
                          " entries for a point of dimension " +
                          std::to_string(x.size()));
  }
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw InvalidArgument("GradCheck: step must be positive");
  }
  std::vector<double> probe(x.begin(), x.end());
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double up = Evaluate(f, probe);
    probe[i] = x[i] - h;
    const double down = Evaluate(f, probe);
    probe[i] = x[i];
    const double numeric = (up - down) / (2.0 * h);
    const double err =
        std::abs(analytic[i] - numeric) / std::max(1.0, std::abs(analytic[i]));
    worst = std::max(worst, err);
  }
  return worst;
}

}  // namespace egoscene
