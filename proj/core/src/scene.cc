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

#include "egoscene/scene.h"

#include <set>
#include <string>

#include "egoscene/errors.h"

namespace egoscene {

const Instance* SceneGraph::Find(int id) const {
  for (const Instance& inst : instances) {
    if (inst.id == id) return &inst;
  }
  return nullptr;
}

void SceneGraph::Validate() const {
  std::set<int> seen;
  for (const Instance& inst : instances) {
    if (!seen.insert(inst.id).second) {
      throw InvalidArgument("scene: duplicate instance id " +
                            std::to_string(inst.id));
    }
    try {
      inst.box.Validate();
    } catch (const InvalidArgument& e) {
      throw InvalidArgument("scene: instance " + std::to_string(inst.id) +
                            ": " + e.what());
    }
  }
}

std::map<std::string, int> SceneGraph::ClassCounts() const {
  std::map<std::string, int> counts;
  for (const Instance& inst : instances) ++counts[inst.class_name];
  return counts;
}

}  // namespace egoscene
