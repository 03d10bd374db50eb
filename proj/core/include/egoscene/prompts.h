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

#ifndef EGOSCENE_PROMPTS_H_
#define EGOSCENE_PROMPTS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "egoscene/scene.h"

namespace egoscene {

enum class Relation {
  kHorizontal,
  kVertical,
  kSupport,
  kAllocentric,
  kBetween,
  kCompound,
};

std::string_view RelationName(Relation r);
std::optional<Relation> ParseRelation(std::string_view name);

// Qualifier strings emitted by the generators.
namespace qualifier {
inline constexpr std::string_view kClosest = "closest to";
inline constexpr std::string_view kFarthest = "farthest from";
inline constexpr std::string_view kAbove = "above";
inline constexpr std::string_view kBelow = "below";
inline constexpr std::string_view kSupportedBy = "supported by";
inline constexpr std::string_view kSupporting = "supporting";
inline constexpr std::string_view kFront = "in front of";
inline constexpr std::string_view kBehind = "behind";
inline constexpr std::string_view kLeft = "to the left of";
inline constexpr std::string_view kRight = "to the right of";
inline constexpr std::string_view kBetween = "between";
}  // namespace qualifier

struct RelationConfig {
  int target_min = 2;
  int target_max = 6;
  double support_xy_iou_threshold = 0.2;
  // (supporter class, supportee class)
  std::vector<std::pair<std::string, std::string>> support_pairs =
      DefaultSupportPairs();
  // Minimum distance of every same-class distractor from the corridor.
  double between_clearance = 0.5;
  // Box-local axis treated as an object's front, projected to XY.
  Vec3 front_axis = Vec3::UnitX();

  static std::vector<std::pair<std::string, std::string>> DefaultSupportPairs();
  void Validate() const;
};

struct Prompt {
  int target_id = 0;
  std::string target_class;
  Relation relation = Relation::kHorizontal;
  std::vector<int> anchor_ids;
  std::string qualifier;
  std::string text;
  // Clauses of a compound prompt, in rendering order.
  std::vector<Prompt> parts;
};

// Classes with target_min..target_max instances, sorted by name.
std::vector<std::string> ValidTargets(const SceneGraph& scene,
                                      const RelationConfig& cfg = {});
// Classes with exactly one instance, sorted by name.
std::vector<std::string> ValidAnchors(const SceneGraph& scene);

std::vector<Prompt> GenerateHorizontal(const SceneGraph& scene,
                                       const RelationConfig& cfg = {});
// Support prompts for listed supporter/supportee pairs in a consistent
// vertical order, vertical proximity prompts otherwise.
std::vector<Prompt> GenerateVerticalSupport(const SceneGraph& scene,
                                            const RelationConfig& cfg = {});
std::vector<Prompt> GenerateAllocentric(const SceneGraph& scene,
                                        const RelationConfig& cfg = {});
std::vector<Prompt> GenerateBetween(const SceneGraph& scene,
                                    const RelationConfig& cfg = {});
// All five generators in the order above.
std::vector<Prompt> GenerateAll(const SceneGraph& scene,
                                const RelationConfig& cfg = {});

// "the <target> that is <qualifier> the <anchor>", or
// "the <target> that is between the <anchor1> and the <anchor2>".
// Throws InvalidArgument for ids missing from the scene.
std::string RenderPrompt(const Prompt& p, const SceneGraph& scene);

// Joins up to max_parts clauses of prompts sharing one target:
// "<first prompt>, and it is <clause> and <clause>". The selection is a
// seeded shuffle; selected clauses keep their input order.
Prompt CompoundPrompt(const std::vector<Prompt>& prompts, int max_parts,
                      std::uint64_t seed);

struct Resolution {
  std::optional<int> target_id;  // set iff exactly one candidate
  std::vector<int> candidates;   // ascending
};

// Re-evaluates the relation over the scene from scratch.
Resolution ResolvePrompt(const SceneGraph& scene, const Prompt& p,
                         const RelationConfig& cfg = {});

}  // namespace egoscene

#endif  // EGOSCENE_PROMPTS_H_
