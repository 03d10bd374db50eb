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

#include <vector>

#include "egoscene/errors.h"
#include "egoscene/evaluation.h"

namespace egoscene {

OccupancyReport OccupancyMIoU(const OccupancyGrid& pred,
                              const OccupancyGrid& gt,
                              const VoxelMask* visibility) {
  if (!(pred.spec == gt.spec)) {
    throw InvalidArgument("OccupancyMIoU: grid specs differ");
  }
  const std::size_t n = gt.spec.NumCells();
  if (pred.labels.size() != n || gt.labels.size() != n) {
    throw InvalidArgument("OccupancyMIoU: label count does not match dims");
  }
  if (visibility != nullptr &&
      (visibility->dims != gt.spec.dims || visibility->visible.size() != n)) {
    throw InvalidArgument("OccupancyMIoU: mask dims differ from grid dims");
  }

  struct Counts {
    long long inter = 0, pred = 0, gt = 0;
  };
  std::map<int, Counts> counts;
  for (std::size_t i = 0; i < n; ++i) {
    if (visibility != nullptr && !visibility->visible[i]) continue;
    const int p = pred.labels[i];
    const int g = gt.labels[i];
    ++counts[p].pred;
    ++counts[g].gt;
    if (p == g) ++counts[p].inter;
  }

  OccupancyReport report;
  double sum = 0.0;
  for (const auto& [label, c] : counts) {
    const long long uni = c.pred + c.gt - c.inter;
    report.class_iou[label] = uni > 0 ? double(c.inter) / double(uni) : 0.0;
    if (c.gt > 0) {
      report.counted.insert(label);
      sum += report.class_iou[label];
    }
  }
  if (!report.counted.empty()) report.miou = sum / double(report.counted.size());
  return report;
}

}  // namespace egoscene
