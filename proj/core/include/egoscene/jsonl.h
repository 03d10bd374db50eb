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

#ifndef EGOSCENE_JSONL_H_
#define EGOSCENE_JSONL_H_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "egoscene/box.h"
#include "egoscene/evaluation.h"
#include "egoscene/prompts.h"

// JSON-lines records and key-sorted JSON reports.
namespace egoscene::io {

// {"anchor_ids":[..],"qualifier":..,"relation":..,"target_class":..,
//  "target_id":..,"text":..} plus "parts" for compound prompts.
std::string PromptToJson(const Prompt& p);
Prompt PromptFromJson(const std::string& line, const std::string& source,
                      std::size_t line_no);
std::string SerializePrompts(const std::vector<Prompt>& prompts);
std::vector<Prompt> ReadPrompts(const std::filesystem::path& path);

// {"center":[..],"class":..,"euler_zxy":[..],"scene_id":..,"score":..,
//  "size":[..]}
struct DetectionRecord {
  std::string scene_id;
  std::string class_name;
  OrientedBox3D box;
  double score = 0.0;
};

std::string SerializeDetections(const std::vector<DetectionRecord>& records);
std::vector<DetectionRecord> ParseDetections(const std::string& text,
                                             const std::string& source);
std::vector<DetectionRecord> ReadDetections(const std::filesystem::path& path);

// Grounding predictions: {"center","euler_zxy","prompt_id","score","size"}.
// Grounding truth: {"center","euler_zxy","prompt_id","size","tags":[..]}.
struct GroundingPrediction {
  std::string prompt_id;
  OrientedBox3D box;
  double score = 0.0;
};

struct GroundingTruth {
  std::string prompt_id;
  OrientedBox3D box;
  std::vector<std::string> tags;
};

std::string SerializeGroundingPredictions(
    const std::vector<GroundingPrediction>& records);
std::vector<GroundingPrediction> ReadGroundingPredictions(
    const std::filesystem::path& path);
std::string SerializeGroundingTruth(const std::vector<GroundingTruth>& records);
std::vector<GroundingTruth> ReadGroundingTruth(
    const std::filesystem::path& path);

// Reports as pretty-printed JSON with sorted keys. Class ids are replaced by
// names when `class_names` has them.
std::string DetectionReportToText(const EvalReport& report,
                                  const std::map<int, std::string>& class_names);
std::string OccupancyReportToText(const OccupancyReport& report,
                                  const std::map<int, std::string>& class_names);
std::string GroundingReportToText(const GroundingReport& report);

// Overrides on top of the defaults; unknown keys are rejected.
RelationConfig ParseRelationConfig(const std::string& text,
                                   const std::string& source);

// {"<class>": "<split>", ...}
std::map<std::string, std::string> ParseSplitMap(const std::string& text,
                                                 const std::string& source);

}  // namespace egoscene::io

#endif  // EGOSCENE_JSONL_H_
