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

// Reference implementations used only by tests. They follow the written
// definitions as literally as possible and share no code with the library
// routines they check.
#ifndef EGOSCENE_TESTS_SUPPORT_ORACLES_H_
#define EGOSCENE_TESTS_SUPPORT_ORACLES_H_

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "egoscene/box.h"
#include "egoscene/evaluation.h"
#include "egoscene/voxel.h"

namespace egoscene::testing {

// Majority label per cell from a per-cell class histogram.
std::vector<int> HistogramOccupancy(const LabeledPointCloud& cloud,
                                    const VoxelGridSpec& spec);

// Cell of p along one axis by scanning candidate cells for the half-open
// interval that contains it; -1 when outside [0, n).
int ScanCell(double p, double origin, double size, int n);

struct ConfusionResult {
  std::map<int, double> iou;
  double miou = 0.0;
};

// Per-label IoU from a full confusion matrix over the visible cells.
ConfusionResult ConfusionMIoU(const std::vector<int>& pred,
                              const std::vector<int>& gt,
                              const std::vector<std::uint8_t>* visible);

// AP straight from the definition: for each recall step j = 1..num_gt, the
// best precision among ranks whose cumulative TP count reaches j.
double DefinitionAP(const std::vector<bool>& tp, int num_gt);

// Per-class AP of one class and threshold: ranks (score desc, scene, index),
// matches by scanning every GT of the class in the scene, then DefinitionAP.
double OracleClassAP(const std::vector<std::vector<Detection>>& preds,
                     const std::vector<std::vector<GroundTruthBox>>& gts,
                     int class_id, double threshold, double* recall = nullptr);

// Symmetric corner Chamfer from the full 8x8 distance table.
double TableChamfer(const std::array<Vec3, 8>& a, const std::array<Vec3, 8>& b);

// Overlap volume of two axis-aligned boxes (rotation ignored).
double AxisAlignedOverlap(const OrientedBox3D& a, const OrientedBox3D& b);

// Central-difference gradient.
template <typename F>
std::vector<double> NumericGradient(F f, std::vector<double> x,
                                    double h = 1e-6) {
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    x[i] = xi + h;
    const double up = f(x);
    x[i] = xi - h;
    const double down = f(x);
    x[i] = xi;
    g[i] = (up - down) / (2 * h);
  }
  return g;
}

// Seeded random helpers.
double Uniform(std::mt19937_64& rng, double lo, double hi);
OrientedBox3D RandomBox(std::mt19937_64& rng, double center_range,
                        double size_lo, double size_hi, bool tilt = true);
Mat3 RandomRotation(std::mt19937_64& rng);

}  // namespace egoscene::testing

#endif  // EGOSCENE_TESTS_SUPPORT_ORACLES_H_
