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

#include "egoscene/prompts.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "egoscene/bev.h"
#include "egoscene/errors.h"

namespace egoscene {
namespace {

constexpr double kTieTolerance = 1e-9;

std::vector<const Instance*> SortedById(const SceneGraph& scene) {
  std::vector<const Instance*> out;
  for (const Instance& inst : scene.instances) out.push_back(&inst);
  std::sort(out.begin(), out.end(),
            [](const Instance* a, const Instance* b) { return a->id < b->id; });
  return out;
}

std::vector<const Instance*> OfClass(const std::vector<const Instance*>& all,
                                     const std::string& cls) {
  std::vector<const Instance*> out;
  for (const Instance* inst : all) {
    if (inst->class_name == cls) out.push_back(inst);
  }
  return out;
}

std::vector<const Instance*> AnchorInstances(
    const SceneGraph& scene, const std::vector<const Instance*>& all) {
  const std::vector<std::string> classes = ValidAnchors(scene);
  std::vector<const Instance*> out;
  for (const Instance* inst : all) {
    if (std::binary_search(classes.begin(), classes.end(), inst->class_name)) {
      out.push_back(inst);
    }
  }
  return out;
}

double PlanarDistance(const Instance& a, const Instance& b) {
  return (a.box.center.head<2>() - b.box.center.head<2>()).norm();
}

std::pair<double, double> ZRange(const OrientedBox3D& box) {
  double lo = box.center.z(), hi = box.center.z();
  for (const Vec3& c : BoxCorners(box)) {
    lo = std::min(lo, c.z());
    hi = std::max(hi, c.z());
  }
  return {lo, hi};
}

bool ZOverlap(const OrientedBox3D& a, const OrientedBox3D& b) {
  const auto [alo, ahi] = ZRange(a);
  const auto [blo, bhi] = ZRange(b);
  return std::min(ahi, bhi) > std::max(alo, blo);
}

bool IsSupportPair(const RelationConfig& cfg, const std::string& supporter,
                   const std::string& supportee) {
  for (const auto& [s, t] : cfg.support_pairs) {
    if (s == supporter && (t == supportee || t == "*")) {
      return true;
    }
  }
  return false;
}

// Vertical or support qualifier of `target` relative to `anchor`.
std::optional<std::string_view> VerticalQualifier(const Instance& target,
                                                  const Instance& anchor,
                                                  const RelationConfig& cfg) {
  if (RectIoU(Footprint(target.box), Footprint(anchor.box)) <
      cfg.support_xy_iou_threshold) {
    return std::nullopt;
  }
  const double dz = target.box.center.z() - anchor.box.center.z();
  if (std::abs(dz) <= kTieTolerance) return std::nullopt;
  const bool above = dz > 0.0;
  if (above && IsSupportPair(cfg, anchor.class_name, target.class_name)) {
    return qualifier::kSupportedBy;
  }
  if (!above && IsSupportPair(cfg, target.class_name, anchor.class_name)) {
    return qualifier::kSupporting;
  }
  return above ? qualifier::kAbove : qualifier::kBelow;
}

// Anchor front direction projected to XY, or nullopt when near vertical.
std::optional<Vec2> FrontDirection(const Instance& anchor,
                                   const RelationConfig& cfg) {
  const Vec3 f = anchor.box.Rotation() * cfg.front_axis;
  const Vec2 h = f.head<2>();
  if (h.norm() < 1e-6) return std::nullopt;
  return Vec2(h.normalized());
}

std::optional<std::string_view> AllocentricQualifier(
    const Instance& target, const Instance& anchor, const RelationConfig& cfg) {
  const std::optional<Vec2> front = FrontDirection(anchor, cfg);
  if (!front) return std::nullopt;
  const Vec2 left(-front->y(), front->x());
  const Vec2 v = target.box.center.head<2>() - anchor.box.center.head<2>();
  const double a = v.dot(*front);
  const double b = v.dot(left);
  if (std::abs(std::abs(a) - std::abs(b)) <= kTieTolerance) {
    return std::nullopt;
  }
  if (std::abs(a) > std::abs(b)) {
    return a > 0.0 ? qualifier::kFront : qualifier::kBehind;
  }
  return b > 0.0 ? qualifier::kLeft : qualifier::kRight;
}

// Corridor between two anchor footprints: a rectangle along the segment
// joining their centers, spanning the gap between the footprints and as
// wide as the narrower footprint.
struct Corridor {
  Vec2 origin;
  Vec2 axis;
  Vec2 normal;
  double s_min = 0.0, s_max = 0.0;
  double half_width = 0.0;

  // Distance from p to the corridor rectangle (0 inside).
  double Distance(const Vec2& p) const {
    const Vec2 d = p - origin;
    const double s = d.dot(axis);
    const double w = std::abs(d.dot(normal));
    const double ds = std::max({s_min - s, s - s_max, 0.0});
    const double dw = std::max(w - half_width, 0.0);
    return std::hypot(ds, dw);
  }
  bool Contains(const Vec2& p) const {
    const Vec2 d = p - origin;
    const double s = d.dot(axis);
    return s >= s_min && s <= s_max && std::abs(d.dot(normal)) <= half_width;
  }
};

double HalfExtentAlong(const Rect2D& r, const Vec2& dir) {
  const Vec2 ex(std::cos(r.yaw), std::sin(r.yaw));
  const Vec2 ey(-ex.y(), ex.x());
  return 0.5 * r.size.x() * std::abs(ex.dot(dir)) +
         0.5 * r.size.y() * std::abs(ey.dot(dir));
}

std::optional<Corridor> MakeCorridor(const Instance& a1, const Instance& a2) {
  const Rect2D r1 = Footprint(a1.box);
  const Rect2D r2 = Footprint(a2.box);
  const Vec2 d = r2.center - r1.center;
  const double len = d.norm();
  if (len < kTieTolerance) return std::nullopt;
  Corridor c;
  c.origin = r1.center;
  c.axis = d / len;
  c.normal = Vec2(-c.axis.y(), c.axis.x());
  c.s_min = HalfExtentAlong(r1, c.axis);
  c.s_max = len - HalfExtentAlong(r2, c.axis);
  if (c.s_min >= c.s_max) return std::nullopt;
  c.half_width =
      std::min(HalfExtentAlong(r1, c.normal), HalfExtentAlong(r2, c.normal));
  return c;
}

bool BetweenHolds(const Instance& t, const Instance& a1, const Instance& a2,
                  const Corridor& c) {
  return c.Contains(t.box.center.head<2>()) && ZOverlap(t.box, a1.box) &&
         ZOverlap(t.box, a2.box);
}

Prompt MakePrompt(const Instance& target, Relation rel,
                  std::vector<int> anchors, std::string_view qual,
                  const SceneGraph& scene) {
  Prompt p;
  p.target_id = target.id;
  p.target_class = target.class_name;
  p.relation = rel;
  p.anchor_ids = std::move(anchors);
  p.qualifier = std::string(qual);
  p.text = RenderPrompt(p, scene);
  return p;
}

// Target classes usable against the given anchor classes.
std::vector<std::string> TargetClassesExcluding(
    const SceneGraph& scene, const RelationConfig& cfg,
    std::initializer_list<std::string_view> anchors) {
  std::vector<std::string> out;
  for (const std::string& cls : ValidTargets(scene, cfg)) {
    if (std::find(anchors.begin(), anchors.end(), cls) == anchors.end()) {
      out.push_back(cls);
    }
  }
  return out;
}

// Emits one prompt for every qualifier shared by exactly one instance.
template <typename QualifierFn>
void EmitUnique(const std::vector<const Instance*>& targets, Relation rel,
                const std::vector<int>& anchors, QualifierFn qualify,
                const std::vector<std::string_view>& order,
                const SceneGraph& scene, std::vector<Prompt>& out) {
  std::map<std::string_view, std::vector<const Instance*>> groups;
  for (const Instance* t : targets) {
    if (auto q = qualify(*t)) groups[*q].push_back(t);
  }
  for (std::string_view q : order) {
    auto it = groups.find(q);
    if (it != groups.end() && it->second.size() == 1) {
      out.push_back(MakePrompt(*it->second.front(), rel, anchors, q, scene));
    }
  }
}

std::string Clause(const Prompt& p, const SceneGraph& scene) {
  const std::string full = RenderPrompt(p, scene);
  const std::string marker = " that is ";
  const std::size_t pos = full.find(marker);
  return pos == std::string::npos ? full : full.substr(pos + marker.size());
}

// Instances of the target class (anchors excluded) satisfying the relation.
std::vector<int> Candidates(const SceneGraph& scene, const Prompt& p,
                            const RelationConfig& cfg) {
  std::vector<const Instance*> anchors;
  for (int id : p.anchor_ids) {
    const Instance* a = scene.Find(id);
    if (a == nullptr) return {};
    anchors.push_back(a);
  }
  const std::vector<const Instance*> all = SortedById(scene);
  std::vector<const Instance*> pool;
  for (const Instance* inst : OfClass(all, p.target_class)) {
    if (std::find(p.anchor_ids.begin(), p.anchor_ids.end(), inst->id) ==
        p.anchor_ids.end()) {
      pool.push_back(inst);
    }
  }
  std::vector<int> out;
  switch (p.relation) {
    case Relation::kHorizontal: {
      if (anchors.size() != 1 || pool.empty()) return {};
      std::vector<double> d;
      for (const Instance* t : pool) d.push_back(PlanarDistance(*t, *anchors[0]));
      const bool nearest = p.qualifier == qualifier::kClosest;
      if (!nearest && p.qualifier != qualifier::kFarthest) return {};
      const double best = nearest ? *std::min_element(d.begin(), d.end())
                                  : *std::max_element(d.begin(), d.end());
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if (std::abs(d[i] - best) <= kTieTolerance) out.push_back(pool[i]->id);
      }
      break;
    }
    case Relation::kVertical:
    case Relation::kSupport:
      if (anchors.size() != 1) return {};
      for (const Instance* t : pool) {
        auto q = VerticalQualifier(*t, *anchors[0], cfg);
        if (q && *q == p.qualifier) out.push_back(t->id);
      }
      break;
    case Relation::kAllocentric:
      if (anchors.size() != 1) return {};
      for (const Instance* t : pool) {
        auto q = AllocentricQualifier(*t, *anchors[0], cfg);
        if (q && *q == p.qualifier) out.push_back(t->id);
      }
      break;
    case Relation::kBetween: {
      if (anchors.size() != 2) return {};
      const std::optional<Corridor> c = MakeCorridor(*anchors[0], *anchors[1]);
      if (!c) return {};
      for (const Instance* t : pool) {
        if (BetweenHolds(*t, *anchors[0], *anchors[1], *c)) {
          out.push_back(t->id);
        }
      }
      break;
    }
    case Relation::kCompound: {
      if (p.parts.empty()) return {};
      std::set<int> common;
      bool first = true;
      for (const Prompt& part : p.parts) {
        const std::vector<int> ids = Candidates(scene, part, cfg);
        if (first) {
          common.insert(ids.begin(), ids.end());
          first = false;
        } else {
          std::set<int> keep;
          for (int id : ids) {
            if (common.count(id)) keep.insert(id);
          }
          common = std::move(keep);
        }
      }
      out.assign(common.begin(), common.end());
      break;
    }
  }
  return out;
}

}  // namespace

std::string_view RelationName(Relation r) {
  switch (r) {
    case Relation::kHorizontal: return "horizontal";
    case Relation::kVertical: return "vertical";
    case Relation::kSupport: return "support";
    case Relation::kAllocentric: return "allocentric";
    case Relation::kBetween: return "between";
    case Relation::kCompound: return "compound";
  }
  return "unknown";
}

std::optional<Relation> ParseRelation(std::string_view name) {
  for (Relation r : {Relation::kHorizontal, Relation::kVertical,
                     Relation::kSupport, Relation::kAllocentric,
                     Relation::kBetween, Relation::kCompound}) {
    if (RelationName(r) == name) return r;
  }
  return std::nullopt;
}

std::vector<std::pair<std::string, std::string>>
RelationConfig::DefaultSupportPairs() {
  std::vector<std::pair<std::string, std::string>> out;
  for (const char* s : {"table", "desk", "cabinet", "stand", "shelf"}) {
    for (const char* t :
         {"book", "lamp", "plant", "bottle", "box", "plate", "monitor"}) {
      out.emplace_back(s, t);
    }
  }
  out.emplace_back("floor", "*");
  return out;
}

void RelationConfig::Validate() const {
  if (target_min < 1 || target_min > target_max) {
    throw InvalidArgument("relation config: target range must satisfy "
                          "1 <= min <= max");
  }
  if (!(support_xy_iou_threshold >= 0.0) || !(between_clearance >= 0.0)) {
    throw InvalidArgument("relation config: thresholds must be >= 0");
  }
  if (!front_axis.allFinite() || front_axis.norm() == 0.0) {
    throw InvalidArgument("relation config: front axis must be non-zero");
  }
}

std::vector<std::string> ValidTargets(const SceneGraph& scene,
                                      const RelationConfig& cfg) {
  std::vector<std::string> out;
  for (const auto& [cls, n] : scene.ClassCounts()) {
    if (n >= cfg.target_min && n <= cfg.target_max) out.push_back(cls);
  }
  return out;
}

std::vector<std::string> ValidAnchors(const SceneGraph& scene) {
  std::vector<std::string> out;
  for (const auto& [cls, n] : scene.ClassCounts()) {
    if (n == 1) out.push_back(cls);
  }
  return out;
}

std::vector<Prompt> GenerateHorizontal(const SceneGraph& scene,
                                       const RelationConfig& cfg) {
  scene.Validate();
  cfg.Validate();
  const auto all = SortedById(scene);
  std::vector<Prompt> out;
  for (const Instance* anchor : AnchorInstances(scene, all)) {
    for (const std::string& cls :
         TargetClassesExcluding(scene, cfg, {anchor->class_name})) {
      const auto targets = OfClass(all, cls);
      std::vector<double> d;
      for (const Instance* t : targets) d.push_back(PlanarDistance(*t, *anchor));
      const double lo = *std::min_element(d.begin(), d.end());
      const double hi = *std::max_element(d.begin(), d.end());
      if (hi - lo <= kTieTolerance) continue;
      for (auto [extreme, qual] :
           {std::pair{lo, qualifier::kClosest},
            std::pair{hi, qualifier::kFarthest}}) {
        const Instance* pick = nullptr;
        int hits = 0;
        for (std::size_t i = 0; i < targets.size(); ++i) {
          if (std::abs(d[i] - extreme) <= kTieTolerance) {
            ++hits;
            pick = targets[i];
          }
        }
        if (hits == 1) {
          out.push_back(MakePrompt(*pick, Relation::kHorizontal, {anchor->id},
                                   qual, scene));
        }
      }
    }
  }
  return out;
}

std::vector<Prompt> GenerateVerticalSupport(const SceneGraph& scene,
                                            const RelationConfig& cfg) {
  scene.Validate();
  cfg.Validate();
  const auto all = SortedById(scene);
  std::vector<Prompt> out;
  const std::vector<std::string_view> order = {
      qualifier::kSupportedBy, qualifier::kSupporting, qualifier::kAbove,
      qualifier::kBelow};
  for (const Instance* anchor : AnchorInstances(scene, all)) {
    for (const std::string& cls :
         TargetClassesExcluding(scene, cfg, {anchor->class_name})) {
      std::vector<Prompt> group;
      EmitUnique(
          OfClass(all, cls), Relation::kVertical, {anchor->id},
          [&](const Instance& t) { return VerticalQualifier(t, *anchor, cfg); },
          order, scene, group);
      for (Prompt& p : group) {
        if (p.qualifier == qualifier::kSupportedBy ||
            p.qualifier == qualifier::kSupporting) {
          p.relation = Relation::kSupport;
        }
        out.push_back(std::move(p));
      }
    }
  }
  return out;
}

std::vector<Prompt> GenerateAllocentric(const SceneGraph& scene,
                                        const RelationConfig& cfg) {
  scene.Validate();
  cfg.Validate();
  const auto all = SortedById(scene);
  std::vector<Prompt> out;
  const std::vector<std::string_view> order = {
      qualifier::kFront, qualifier::kBehind, qualifier::kLeft,
      qualifier::kRight};
  for (const Instance* anchor : AnchorInstances(scene, all)) {
    if (!FrontDirection(*anchor, cfg)) continue;
    for (const std::string& cls :
         TargetClassesExcluding(scene, cfg, {anchor->class_name})) {
      EmitUnique(
          OfClass(all, cls), Relation::kAllocentric, {anchor->id},
          [&](const Instance& t) {
            return AllocentricQualifier(t, *anchor, cfg);
          },
          order, scene, out);
    }
  }
  return out;
}

std::vector<Prompt> GenerateBetween(const SceneGraph& scene,
                                    const RelationConfig& cfg) {
  scene.Validate();
  cfg.Validate();
  const auto all = SortedById(scene);
  std::vector<const Instance*> anchors = AnchorInstances(scene, all);
  std::sort(anchors.begin(), anchors.end(),
            [](const Instance* a, const Instance* b) {
              return a->class_name < b->class_name;
            });
  std::vector<Prompt> out;
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    for (std::size_t j = i + 1; j < anchors.size(); ++j) {
      const Instance& a1 = *anchors[i];
      const Instance& a2 = *anchors[j];
      const std::optional<Corridor> c = MakeCorridor(a1, a2);
      if (!c) continue;
      for (const std::string& cls : TargetClassesExcluding(
               scene, cfg, {a1.class_name, a2.class_name})) {
        const Instance* pick = nullptr;
        int hits = 0;
        bool clear = true;
        for (const Instance* t : OfClass(all, cls)) {
          if (BetweenHolds(*t, a1, a2, *c)) {
            ++hits;
            pick = t;
          } else if (c->Distance(t->box.center.head<2>()) <
                     cfg.between_clearance) {
            clear = false;
          }
        }
        if (hits == 1 && clear) {
          out.push_back(MakePrompt(*pick, Relation::kBetween, {a1.id, a2.id},
                                   qualifier::kBetween, scene));
        }
      }
    }
  }
  return out;
}

std::vector<Prompt> GenerateAll(const SceneGraph& scene,
                                const RelationConfig& cfg) {
  std::vector<Prompt> out;
  for (auto* gen : {&GenerateHorizontal, &GenerateVerticalSupport,
                    &GenerateAllocentric, &GenerateBetween}) {
    std::vector<Prompt> part = gen(scene, cfg);
    std::move(part.begin(), part.end(), std::back_inserter(out));
  }
  return out;
}

std::string RenderPrompt(const Prompt& p, const SceneGraph& scene) {
  if (p.relation == Relation::kCompound) {
    if (p.parts.size() < 2) {
      throw InvalidArgument("compound prompt needs at least two parts");
    }
    std::string text = RenderPrompt(p.parts.front(), scene) + ", and it is ";
    for (std::size_t i = 1; i < p.parts.size(); ++i) {
      if (i > 1) text += " and ";
      text += Clause(p.parts[i], scene);
    }
    return text;
  }
  const Instance* target = scene.Find(p.target_id);
  if (target == nullptr) {
    throw InvalidArgument("prompt target id " + std::to_string(p.target_id) +
                          " not in scene");
  }
  const std::size_t want = p.relation == Relation::kBetween ? 2 : 1;
  if (p.anchor_ids.size() != want) {
    throw InvalidArgument("prompt has " + std::to_string(p.anchor_ids.size()) +
                          " anchors, expected " + std::to_string(want));
  }
  std::vector<const Instance*> anchors;
  for (int id : p.anchor_ids) {
    const Instance* a = scene.Find(id);
    if (a == nullptr) {
      throw InvalidArgument("prompt anchor id " + std::to_string(id) +
                            " not in scene");
    }
    anchors.push_back(a);
  }
  std::string text =
      "the " + target->class_name + " that is " + p.qualifier + " the " +
      anchors[0]->class_name;
  if (anchors.size() == 2) text += " and the " + anchors[1]->class_name;
  return text;
}

Prompt CompoundPrompt(const std::vector<Prompt>& prompts, int max_parts,
                      std::uint64_t seed) {
  if (prompts.size() < 2) {
    throw InvalidArgument("compound prompt needs at least two prompts");
  }
  if (max_parts < 2) {
    throw InvalidArgument("compound prompt needs max_parts >= 2");
  }
  for (const Prompt& p : prompts) {
    if (p.relation == Relation::kCompound) {
      throw InvalidArgument("compound prompts cannot be nested");
    }
    if (p.target_id != prompts.front().target_id) {
      throw InvalidArgument("compound prompt parts have different targets");
    }
  }
  std::vector<Prompt> chosen;
  std::mt19937_64 rng(seed);
  std::sample(prompts.begin(), prompts.end(), std::back_inserter(chosen),
              std::min<std::size_t>(max_parts, prompts.size()), rng);

  Prompt out;
  out.target_id = prompts.front().target_id;
  out.target_class = prompts.front().target_class;
  out.relation = Relation::kCompound;
  for (const Prompt& p : chosen) {
    for (int id : p.anchor_ids) {
      if (std::find(out.anchor_ids.begin(), out.anchor_ids.end(), id) ==
          out.anchor_ids.end()) {
        out.anchor_ids.push_back(id);
      }
    }
  }
  out.qualifier = std::string(RelationName(Relation::kCompound));
  out.text = chosen.front().text + ", and it is ";
  for (std::size_t i = 1; i < chosen.size(); ++i) {
    if (i > 1) out.text += " and ";
    const std::string& t = chosen[i].text;
    const std::size_t pos = t.find(" that is ");
    out.text += pos == std::string::npos ? t : t.substr(pos + 9);
  }
  out.parts = std::move(chosen);
  return out;
}

Resolution ResolvePrompt(const SceneGraph& scene, const Prompt& p,
                         const RelationConfig& cfg) {
  Resolution r;
  r.candidates = Candidates(scene, p, cfg);
  std::sort(r.candidates.begin(), r.candidates.end());
  if (r.candidates.size() == 1) r.target_id = r.candidates.front();
  return r;
}

}  // namespace egoscene
