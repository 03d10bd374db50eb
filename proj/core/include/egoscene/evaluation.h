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

#ifndef EGOSCENE_EVALUATION_H_
#define EGOSCENE_EVALUATION_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "egoscene/box.h"
#include "egoscene/voxel.h"

namespace egoscene {

inline const std::vector<double> kDefaultIouThresholds = {0.25, 0.5};

struct Detection {
  OrientedBox3D box;
  int class_id = 0;
  double score = 0.0;
};

struct GroundTruthBox {
  OrientedBox3D box;
  int class_id = 0;
};

struct DetectionEvalConfig {
  std::vector<double> thresholds = kDefaultIouThresholds;
  // Every class id that may appear in predictions or ground truth.
  std::vector<int> class_ids;
  // Optional class id -> split name ("head", "common", "tail", ...).
  std::map<int, std::string> split_of;
  // Scenes are processed in parallel with this many workers.
  int num_threads = 1;
};

struct ClassResult {
  int num_gt = 0;
  int num_pred = 0;
  std::vector<double> ap;  // one entry per threshold
  std::vector<double> ar;
};

struct EvalReport {
  std::vector<double> thresholds;
  std::map<int, ClassResult> per_class;
  // Means over classes with at least one ground-truth box.
  std::vector<double> mean_ap;
  std::vector<double> mean_ar;
  std::map<std::string, std::vector<double>> split_mean_ap;
  std::map<std::string, std::vector<double>> split_mean_ar;
};

// All-point interpolated AP from a ranked TP/FP sequence: the precision at
// each recall step is replaced by the best precision at any recall at or
// beyond it, and the steps are averaged over num_gt.
double AveragePrecision(const std::vector<bool>& true_positive, int num_gt);

// preds[s] and gts[s] belong to scene s. Predictions are ranked by
// descending score (ties keep scene order, then input order) and greedily
// matched to the unmatched ground-truth box of the same class and scene
// with the highest IoU at or above the threshold. Throws InvalidArgument for
// class ids outside config.class_ids or mismatched scene counts.
EvalReport DetectionAP(const std::vector<std::vector<Detection>>& preds,
                       const std::vector<std::vector<GroundTruthBox>>& gts,
                       const DetectionEvalConfig& config);

struct OccupancyReport {
  std::map<int, double> class_iou;  // every label seen in pred or gt
  std::set<int> counted;            // labels present in (visible) gt
  double miou = 0.0;
};

// Per-label IoU over the visible cells, including kEmptyLabel. The mean runs
// over labels present in the ground truth. Throws InvalidArgument when the
// specs (or the mask dims) differ.
OccupancyReport OccupancyMIoU(const OccupancyGrid& pred,
                              const OccupancyGrid& gt,
                              const VoxelMask* visibility = nullptr);

struct ScoredBox {
  OrientedBox3D box;
  double score = 0.0;
};

struct GroundingReport {
  std::vector<double> thresholds;
  std::vector<double> ap;
  std::map<std::string, std::vector<double>> ap_by_tag;
  int num_prompts = 0;
};

// Each prompt is a single-GT retrieval problem; AP is computed over the
// pooled prompt set and again over the prompts carrying each tag. Prompts
// without predictions count as misses.
GroundingReport GroundingEval(
    const std::vector<std::vector<ScoredBox>>& preds,
    const std::vector<OrientedBox3D>& gts,
    const std::vector<std::vector<std::string>>& tags,
    const std::vector<double>& thresholds = kDefaultIouThresholds);

}  // namespace egoscene

#endif  // EGOSCENE_EVALUATION_H_
