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

#include "support/fixtures.h"

#include <unistd.h>

#include "support/oracles.h"

namespace egoscene::testing {

Instance MakeInstance(int id, const std::string& cls, const Vec3& center,
                      const Vec3& size, double alpha) {
  Instance inst;
  inst.id = id;
  inst.class_name = cls;
  inst.box.center = center;
  inst.box.size = size;
  inst.box.rot.alpha = alpha;
  return inst;
}

SceneGraph FiveRelationScene() {
  SceneGraph s;
  s.instances = {
      MakeInstance(1, "table", {0, 0, 0.375}, {1.0, 0.8, 0.75}),
      MakeInstance(2, "book", {0.1, 0, 0.85}, {0.45, 0.4, 0.2}),
      MakeInstance(3, "book", {-2.5, -2.5, 0.1}, {0.45, 0.4, 0.2}),
      MakeInstance(4, "shelf", {4, 0, 0.9}, {0.8, 0.4, 1.8}),
      MakeInstance(5, "chair", {2, 0, 0.45}, {0.5, 0.5, 0.9}),
      MakeInstance(6, "chair", {0, 2.5, 0.45}, {0.5, 0.5, 0.9}),
      MakeInstance(8, "bed", {-2.5, 2, 0.25}, {2.0, 1.6, 0.5}),
      MakeInstance(9, "pillow", {-2.5, 2.2, 0.575}, {1.2, 0.8, 0.15}),
      MakeInstance(10, "pillow", {2.5, -2.5, 0.075}, {0.6, 0.4, 0.15}),
  };
  return s;
}

std::filesystem::path FreshTempDir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("egoscene_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

DetectionFixture RandomDetectionFixture(std::mt19937_64& rng, int num_classes) {
  DetectionFixture f;
  const int scenes = 1 + int(rng() % 3);
  f.preds.resize(scenes);
  f.gts.resize(scenes);
  const int n_gt = int(rng() % 6);
  const int n_pred = int(rng() % 11);
  for (int i = 0; i < n_gt; ++i) {
    GroundTruthBox g;
    g.box = RandomBox(rng, 1.5, 0.4, 1.2);
    g.class_id = int(rng() % num_classes);
    f.gts[rng() % scenes].push_back(g);
  }
  for (int i = 0; i < n_pred; ++i) {
    Detection d;
    const int s = int(rng() % scenes);
    if (!f.gts[s].empty() && rng() % 4 != 0) {
      const GroundTruthBox& g = f.gts[s][rng() % f.gts[s].size()];
      d.box = g.box;
      d.class_id = rng() % 5 == 0 ? int(rng() % num_classes) : g.class_id;
      for (int k = 0; k < 3; ++k) {
        d.box.center[k] += Uniform(rng, -0.3, 0.3);
        d.box.size[k] *= Uniform(rng, 0.7, 1.3);
      }
      d.box.rot.alpha += Uniform(rng, -0.4, 0.4);
    } else {
      d.box = RandomBox(rng, 1.5, 0.4, 1.2);
      d.class_id = int(rng() % num_classes);
    }
    d.score = double(rng() % 6) / 5.0;
    f.preds[s].push_back(d);
  }
  return f;
}

}  // namespace egoscene::testing
