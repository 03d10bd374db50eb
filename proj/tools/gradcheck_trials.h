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

#ifndef EGOSCENE_TOOLS_GRADCHECK_TRIALS_H_
#define EGOSCENE_TOOLS_GRADCHECK_TRIALS_H_

#include <cstdint>
#include <optional>
#include <string_view>

namespace egoscene::tools {

enum class LossKind { kCorner, kIou7, kContrastive };

std::optional<LossKind> ParseLossKind(std::string_view name);

struct TrialSummary {
  int trials = 0;
  // Random draws rejected because they fell near a non-differentiable
  // configuration (iou7 only).
  int skipped = 0;
  double max_error = 0.0;
  bool pass = false;
};

// Runs `trials` seeded gradient checks of one loss. A trial passes when the
// largest relative error is at most `tolerance`.
TrialSummary RunGradCheckTrials(LossKind kind, int trials, std::uint64_t seed,
                                double tolerance = 1e-4);

}  // namespace egoscene::tools

#endif  // EGOSCENE_TOOLS_GRADCHECK_TRIALS_H_
