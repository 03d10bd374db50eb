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

#include "egoscene/jsonl.h"

#include <algorithm>
#include <charconv>
#include <limits>
#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "egoscene/errors.h"
#include "egoscene/io.h"

namespace egoscene::io {
namespace {

using nlohmann::json;

// Type-checked access to the fields of one JSON object; every failure names
// the source, line and key.
class Record {
 public:
  Record(const json& j, std::string source, std::size_t line)
      : j_(j), source_(std::move(source)), line_(line) {
    if (!j_.is_object()) Fail("", "expected a JSON object");
  }

  [[noreturn]] void Fail(const std::string& key, const std::string& msg) const {
    throw ParseError(source_, line_, key, msg);
  }

  void AllowOnly(std::initializer_list<std::string_view> keys) const {
    for (const auto& [k, v] : j_.items()) {
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
        Fail(k, "unknown key");
      }
    }
  }

  bool Has(const std::string& key) const { return j_.contains(key); }

  const json& Get(const std::string& key) const {
    auto it = j_.find(key);
    if (it == j_.end()) Fail(key, "missing required key");
    return *it;
  }

  std::string String(const std::string& key) const {
    const json& v = Get(key);
    if (!v.is_string()) Fail(key, "expected a string");
    return v.get<std::string>();
  }

  double Real(const std::string& key) const { return RealOf(Get(key), key); }

  int Int(const std::string& key) const { return IntOf(Get(key), key); }

  Vec3 Triple(const std::string& key) const {
    const json& v = Get(key);
    if (!v.is_array() || v.size() != 3) Fail(key, "expected 3 numbers");
    return {RealOf(v[0], key), RealOf(v[1], key), RealOf(v[2], key)};
  }

  std::vector<int> IntList(const std::string& key) const {
    const json& v = Get(key);
    if (!v.is_array()) Fail(key, "expected an array of integers");
    std::vector<int> out;
    for (const json& e : v) out.push_back(IntOf(e, key));
    return out;
  }

  std::vector<std::string> StringList(const std::string& key) const {
    const json& v = Get(key);
    if (!v.is_array()) Fail(key, "expected an array of strings");
    std::vector<std::string> out;
    for (const json& e : v) {
      if (!e.is_string()) Fail(key, "expected an array of strings");
      out.push_back(e.get<std::string>());
    }
    return out;
  }

  OrientedBox3D Box() const {
    OrientedBox3D b;
    b.center = Triple("center");
    b.size = Triple("size");
    const Vec3 e = Triple("euler_zxy");
    b.rot = {e.x(), e.y(), e.z()};
    if (!(b.size.minCoeff() > 0.0)) Fail("size", "box extents must be positive");
    return b;
  }

  double RealOf(const json& v, const std::string& key) const {
    if (!v.is_number()) Fail(key, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) Fail(key, "expected a finite number");
    return d;
  }

  int IntOf(const json& v, const std::string& key) const {
    if (!v.is_number_integer()) Fail(key, "expected an integer");
    const auto i = v.get<long long>();
    if (i < std::numeric_limits<int>::min() ||
        i > std::numeric_limits<int>::max()) {
      Fail(key, "integer out of range");
    }
    return int(i);
  }

 private:
  const json& j_;
  std::string source_;
  std::size_t line_;
};

std::size_t LineOfByte(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + std::size_t(std::count(text.begin(), text.begin() + byte, '\n'));
}

json ParseJson(const std::string& text, const std::string& source,
               std::size_t line_no) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t line =
        line_no > 0 ? line_no : LineOfByte(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError(source, line, "", std::string("invalid JSON: ") + e.what());
  }
}

// Calls fn(json, line_no) for every non-blank line.
template <typename Fn>
void ForEachLine(const std::string& text, const std::string& source, Fn fn) {
  std::size_t start = 0, line_no = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    ++line_no;
    const std::string line = text.substr(start, end - start);
    if (line.find_first_not_of(" \t\r") != std::string::npos) {
      fn(ParseJson(line, source, line_no), line_no);
    }
    start = end + 1;
  }
}

json BoxFields(const OrientedBox3D& b, json j) {
  j["center"] = {b.center.x(), b.center.y(), b.center.z()};
  j["size"] = {b.size.x(), b.size.y(), b.size.z()};
  j["euler_zxy"] = {b.rot.alpha, b.rot.beta, b.rot.gamma};
  return j;
}

std::string Lines(const std::vector<json>& records) {
  std::string out;
  for (const json& j : records) out += j.dump() + "\n";
  return out;
}

std::string ThresholdKey(double t) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), t);
  return std::string(buf, ptr);
}

json ByThreshold(const std::vector<double>& thresholds,
                 const std::vector<double>& values) {
  json j = json::object();
  for (std::size_t i = 0; i < thresholds.size() && i < values.size(); ++i) {
    j[ThresholdKey(thresholds[i])] = values[i];
  }
  return j;
}

std::string LabelName(int id, const std::map<int, std::string>& names) {
  if (id == kEmptyLabel) return "empty";
  auto it = names.find(id);
  return it != names.end() ? it->second : std::to_string(id);
}

Prompt PromptFromRecord(const Record& r) {
  r.AllowOnly({"anchor_ids", "parts", "qualifier", "relation", "target_class",
               "target_id", "text"});
  Prompt p;
  p.target_id = r.Int("target_id");
  const std::string rel = r.String("relation");
  const auto parsed = ParseRelation(rel);
  if (!parsed) r.Fail("relation", "unknown relation '" + rel + "'");
  p.relation = *parsed;
  p.anchor_ids = r.IntList("anchor_ids");
  p.qualifier = r.String("qualifier");
  p.text = r.String("text");
  if (r.Has("target_class")) p.target_class = r.String("target_class");
  if (r.Has("parts")) {
    const json& parts = r.Get("parts");
    if (!parts.is_array()) r.Fail("parts", "expected an array of prompts");
    for (const json& part : parts) {
      p.parts.push_back(PromptFromRecord(Record(part, "parts", 0)));
    }
  }
  if (p.relation == Relation::kCompound && p.parts.size() < 2) {
    r.Fail("parts", "compound prompts need at least two parts");
  }
  return p;
}

json PromptJson(const Prompt& p) {
  json j;
  j["target_id"] = p.target_id;
  j["target_class"] = p.target_class;
  j["relation"] = std::string(RelationName(p.relation));
  j["anchor_ids"] = p.anchor_ids;
  j["qualifier"] = p.qualifier;
  j["text"] = p.text;
  if (!p.parts.empty()) {
    json parts = json::array();
    for (const Prompt& part : p.parts) parts.push_back(PromptJson(part));
    j["parts"] = parts;
  }
  return j;
}

}  // namespace

std::string PromptToJson(const Prompt& p) { return PromptJson(p).dump(); }

Prompt PromptFromJson(const std::string& line, const std::string& source,
                      std::size_t line_no) {
  const json j = ParseJson(line, source, line_no);
  return PromptFromRecord(Record(j, source, line_no));
}

std::string SerializePrompts(const std::vector<Prompt>& prompts) {
  std::string out;
  for (const Prompt& p : prompts) out += PromptToJson(p) + "\n";
  return out;
}

std::vector<Prompt> ReadPrompts(const std::filesystem::path& path) {
  std::vector<Prompt> out;
  const std::string source = path.string();
  ForEachLine(ReadFileBytes(path), source, [&](const json& j, std::size_t n) {
    out.push_back(PromptFromRecord(Record(j, source, n)));
  });
  return out;
}

std::string SerializeDetections(const std::vector<DetectionRecord>& records) {
  std::vector<json> lines;
  for (const DetectionRecord& d : records) {
    json j;
    j["scene_id"] = d.scene_id;
    j["class"] = d.class_name;
    j["score"] = d.score;
    lines.push_back(BoxFields(d.box, j));
  }
  return Lines(lines);
}

std::vector<DetectionRecord> ParseDetections(const std::string& text,
                                             const std::string& source) {
  std::vector<DetectionRecord> out;
  ForEachLine(text, source, [&](const json& j, std::size_t n) {
    const Record r(j, source, n);
    r.AllowOnly({"center", "class", "euler_zxy", "scene_id", "score", "size"});
    DetectionRecord d;
    d.scene_id = r.String("scene_id");
    d.class_name = r.String("class");
    d.box = r.Box();
    d.score = r.Real("score");
    out.push_back(std::move(d));
  });
  return out;
}

std::vector<DetectionRecord> ReadDetections(const std::filesystem::path& path) {
  return ParseDetections(ReadFileBytes(path), path.string());
}

std::string SerializeGroundingPredictions(
    const std::vector<GroundingPrediction>& records) {
  std::vector<json> lines;
  for (const GroundingPrediction& g : records) {
    json j;
    j["prompt_id"] = g.prompt_id;
    j["score"] = g.score;
    lines.push_back(BoxFields(g.box, j));
  }
  return Lines(lines);
}

std::vector<GroundingPrediction> ReadGroundingPredictions(
    const std::filesystem::path& path) {
  std::vector<GroundingPrediction> out;
  const std::string source = path.string();
  ForEachLine(ReadFileBytes(path), source, [&](const json& j, std::size_t n) {
    const Record r(j, source, n);
    r.AllowOnly({"center", "euler_zxy", "prompt_id", "score", "size"});
    out.push_back({r.String("prompt_id"), r.Box(), r.Real("score")});
  });
  return out;
}

std::string SerializeGroundingTruth(const std::vector<GroundingTruth>& records) {
  std::vector<json> lines;
  for (const GroundingTruth& g : records) {
    json j;
    j["prompt_id"] = g.prompt_id;
    j["tags"] = g.tags;
    lines.push_back(BoxFields(g.box, j));
  }
  return Lines(lines);
}

std::vector<GroundingTruth> ReadGroundingTruth(
    const std::filesystem::path& path) {
  std::vector<GroundingTruth> out;
  std::set<std::string> seen;
  const std::string source = path.string();
  ForEachLine(ReadFileBytes(path), source, [&](const json& j, std::size_t n) {
    const Record r(j, source, n);
    r.AllowOnly({"center", "euler_zxy", "prompt_id", "size", "tags"});
    GroundingTruth g;
    g.prompt_id = r.String("prompt_id");
    if (!seen.insert(g.prompt_id).second) {
      r.Fail("prompt_id", "duplicate prompt id '" + g.prompt_id + "'");
    }
    g.box = r.Box();
    if (r.Has("tags")) g.tags = r.StringList("tags");
    out.push_back(std::move(g));
  });
  return out;
}

std::string DetectionReportToText(
    const EvalReport& report, const std::map<int, std::string>& class_names) {
  json j;
  j["thresholds"] = report.thresholds;
  j["mean_ap"] = ByThreshold(report.thresholds, report.mean_ap);
  j["mean_ar"] = ByThreshold(report.thresholds, report.mean_ar);
  json per_class = json::object();
  for (const auto& [id, res] : report.per_class) {
    json c;
    c["ap"] = ByThreshold(report.thresholds, res.ap);
    c["ar"] = ByThreshold(report.thresholds, res.ar);
    c["num_gt"] = res.num_gt;
    c["num_pred"] = res.num_pred;
    per_class[LabelName(id, class_names)] = c;
  }
  j["per_class"] = per_class;
  json splits = json::object();
  for (const auto& [name, ap] : report.split_mean_ap) {
    splits[name]["mean_ap"] = ByThreshold(report.thresholds, ap);
    const auto it = report.split_mean_ar.find(name);
    if (it != report.split_mean_ar.end()) {
      splits[name]["mean_ar"] = ByThreshold(report.thresholds, it->second);
    }
  }
  j["splits"] = splits;
  return j.dump(2) + "\n";
}

std::string OccupancyReportToText(
    const OccupancyReport& report,
    const std::map<int, std::string>& class_names) {
  json j;
  j["miou"] = report.miou;
  json iou = json::object();
  for (const auto& [id, v] : report.class_iou) {
    iou[LabelName(id, class_names)] = v;
  }
  j["class_iou"] = iou;
  json counted = json::array();
  for (int id : report.counted) counted.push_back(LabelName(id, class_names));
  j["counted"] = counted;
  return j.dump(2) + "\n";
}

std::string GroundingReportToText(const GroundingReport& report) {
  json j;
  j["thresholds"] = report.thresholds;
  j["num_prompts"] = report.num_prompts;
  j["ap"] = ByThreshold(report.thresholds, report.ap);
  json tags = json::object();
  for (const auto& [tag, ap] : report.ap_by_tag) {
    tags[tag] = ByThreshold(report.thresholds, ap);
  }
  j["ap_by_tag"] = tags;
  return j.dump(2) + "\n";
}

RelationConfig ParseRelationConfig(const std::string& text,
                                   const std::string& source) {
  const json j = ParseJson(text, source, 0);
  const Record r(j, source, 0);
  r.AllowOnly({"between_clearance", "front_axis", "support_pairs",
               "support_xy_iou_threshold", "target_max", "target_min"});
  RelationConfig cfg;
  if (r.Has("target_min")) cfg.target_min = r.Int("target_min");
  if (r.Has("target_max")) cfg.target_max = r.Int("target_max");
  if (r.Has("support_xy_iou_threshold")) {
    cfg.support_xy_iou_threshold = r.Real("support_xy_iou_threshold");
  }
  if (r.Has("between_clearance")) {
    cfg.between_clearance = r.Real("between_clearance");
  }
  if (r.Has("front_axis")) cfg.front_axis = r.Triple("front_axis");
  if (r.Has("support_pairs")) {
    const json& pairs = r.Get("support_pairs");
    if (!pairs.is_array()) r.Fail("support_pairs", "expected an array");
    cfg.support_pairs.clear();
    for (const json& p : pairs) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_string() ||
          !p[1].is_string()) {
        r.Fail("support_pairs",
               "expected [\"<supporter>\", \"<supportee>\"] pairs");
      }
      cfg.support_pairs.emplace_back(p[0].get<std::string>(),
                                     p[1].get<std::string>());
    }
  }
  try {
    cfg.Validate();
  } catch (const InvalidArgument& e) {
    r.Fail("", e.what());
  }
  return cfg;
}

std::map<std::string, std::string> ParseSplitMap(const std::string& text,
                                                 const std::string& source) {
  const json j = ParseJson(text, source, 0);
  const Record r(j, source, 0);
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : j.items()) out[k] = r.String(k);
  return out;
}

}  // namespace egoscene::io
