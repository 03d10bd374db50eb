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

#ifndef EGOSCENE_GRADCHECK_H_
#define EGOSCENE_GRADCHECK_H_

#include <functional>
#include <span>

namespace egoscene {

using ScalarFunction = std::function<double(std::span<const double>)>;

// Largest relative deviation between `analytic` and the central difference
// (f(x + h e_i) - f(x - h e_i)) / 2h over all coordinates, each scaled by
// max(1, |analytic_i|). Throws EvaluationError if f returns a non-finite
// value and InvalidArgument on size mismatch.
double GradCheck(const ScalarFunction& f, std::span<const double> analytic,
                 std::span<const double> x, double h = 1e-5);

}  // namespace egoscene

#endif  // EGOSCENE_GRADCHECK_H_
