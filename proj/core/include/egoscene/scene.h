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

#ifndef EGOSCENE_SCENE_H_
#define EGOSCENE_SCENE_H_

#include <map>
#include <string>
#include <vector>

#include "egoscene/box.h"

namespace egoscene {

struct Instance {
  int id = 0;
  std::string class_name;
  OrientedBox3D box;
};

struct SceneGraph {
  std::vector<Instance> instances;

  // nullptr when absent.
  const Instance* Find(int id) const;

  // Throws InvalidArgument on duplicate ids or invalid boxes.
  void Validate() const;

  // Instance count per class name.
  std::map<std::string, int> ClassCounts() const;
};

}  // namespace egoscene

#endif  // EGOSCENE_SCENE_H_
