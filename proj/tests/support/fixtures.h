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

#ifndef EGOSCENE_TESTS_SUPPORT_FIXTURES_H_
#define EGOSCENE_TESTS_SUPPORT_FIXTURES_H_

#include <filesystem>
#include <random>
#include <string>

#include "egoscene/evaluation.h"
#include "egoscene/scene.h"

namespace egoscene::testing {

Instance MakeInstance(int id, const std::string& cls, const Vec3& center,
                      const Vec3& size, double alpha = 0.0);

// A small room in which every relation kind has at least one uniquely
// resolvable prompt:
//   horizontal  chairs 5 (2 m) and 6 (2.5 m) from the table
//   support     book 2 on the table
//   vertical    pillow 9 on the bed
//   allocentric chair 5 in front of the table, chair 6 to its left
//   between     chair 5 between the shelf and the table
SceneGraph FiveRelationScene();

struct DetectionFixture {
  std::vector<std::vector<Detection>> preds;
  std::vector<std::vector<GroundTruthBox>> gts;
};

// Up to 10 predictions and 5 GT boxes spread over 1-3 scenes; predictions
// are jittered copies of GT or free boxes, with scores drawn from a small
// set so ties occur.
DetectionFixture RandomDetectionFixture(std::mt19937_64& rng, int num_classes);

// Fresh, empty directory under the system temp dir.
std::filesystem::path FreshTempDir(const std::string& name);

}  // namespace egoscene::testing

#endif  // EGOSCENE_TESTS_SUPPORT_FIXTURES_H_
