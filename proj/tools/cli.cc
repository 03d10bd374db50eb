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

#include "cli.h"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "egoscene/errors.h"
#include "egoscene/evaluation.h"
#include "egoscene/io.h"
#include "egoscene/jsonl.h"
#include "egoscene/prompts.h"
#include "egoscene/synth.h"
#include "egoscene/voxel.h"
#include "gradcheck_trials.h"

namespace egoscene::tools {
namespace {

namespace fs = std::filesystem;

// Bad flag values that CLI11 validators cannot express.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal invariant failed; never expected on valid input.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr double kDepthMillimetersPerUnit = 1.0;

struct GridFlags {
  std::vector<double> range = {-3.2, 3.2, -3.2, 3.2, -0.78, 1.78};
  std::vector<int> dims = {40, 40, 16};

  void Register(CLI::App* cmd) {
    cmd->add_option("--range", range,
                    "Perception range: xmin xmax ymin ymax zmin zmax (m)")
        ->expected(6)
        ->capture_default_str();
    cmd->add_option("--dims", dims, "Cell counts: nx ny nz")
        ->expected(3)
        ->capture_default_str();
  }

  VoxelGridSpec Spec() const {
    const Vec3 lo(range[0], range[2], range[4]);
    const Vec3 hi(range[1], range[3], range[5]);
    if (!(lo.array() < hi.array()).all()) {
      throw UsageError("--range: every min must be below its max");
    }
    if (std::any_of(dims.begin(), dims.end(), [](int d) { return d <= 0; })) {
      throw UsageError("--dims: cell counts must be positive");
    }
    return VoxelGridSpec::FromRange(lo, hi, {dims[0], dims[1], dims[2]});
  }
};

std::vector<double> ParseThresholds(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || !(v > 0.0 && v <= 1.0)) {
      throw UsageError("--iou: '" + item + "' is not a threshold in (0, 1]");
    }
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("--iou: no thresholds given");
  return out;
}

void Emit(const std::string& text, const std::string& out_path,
          std::ostream& out) {
  out << text;
  if (!out_path.empty()) io::WriteFileBytes(out_path, text);
}

std::string SceneId(const std::string& path) {
  return fs::path(path).stem().string();
}

bool LooksLikeScene(const std::string& bytes) {
  return bytes.rfind("EMSCENE", 0) == 0;
}

// ---------------------------------------------------------------------------

struct GenSceneFlags {
  std::uint64_t seed = 0;
  std::string out_dir;
  int instances = 0;  // 0: library default range
  int views = 10;
};

int GenScene(const GenSceneFlags& f, std::ostream& out) {
  SynthParams params;
  params.seed = f.seed;
  if (f.instances > 0) {
    params.instance_min = params.instance_max = f.instances;
  }
  params.camera_count = f.views;
  const SynthScene s = GenerateScene(params);

  const fs::path dir(f.out_dir);
  fs::create_directories(dir / "depth");
  io::WriteScene(dir / "scene.emscene", {s.scene, 0.0});

  io::TrajectoryFile traj;
  traj.note = "synthetic; depth in millimeters";
  for (const View& v : s.views) {
    char name[32];
    std::snprintf(name, sizeof(name), "frame_%06d.emdepth", v.frame_id);
    const std::string rel = std::string("depth/") + name;
    io::WriteDepth(dir / rel,
                   io::DepthRaster::Quantize(*v.depth, kDepthMillimetersPerUnit));
    traj.frames.push_back({v.frame_id, v.intrinsics, v.pose, rel});
  }
  io::WriteTrajectory(dir / "trajectory.emtraj", traj);

  io::LabeledCloudFile cloud;
  cloud.cloud = s.labeled_cloud;
  for (std::size_t i = 0; i < s.class_names.size(); ++i) {
    cloud.classes[int(i)] = s.class_names[i];
  }
  io::WriteLabeledCloud(dir / "cloud.emcloud", cloud);

  out << "gen-scene: seed " << f.seed << ", " << s.scene.instances.size()
      << " instances, " << s.views.size() << " views, "
      << s.labeled_cloud.points.size() << " labeled points -> "
      << dir.string() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct OccupancyFlags {
  std::string scene;
  std::string cloud;
  std::string out;
  GridFlags grid;
};

int Occupancy(const OccupancyFlags& f, std::ostream& out) {
  VoxelGridSpec spec = f.grid.Spec();
  if (!f.scene.empty()) {
    const io::SceneFile scene = io::ReadScene(f.scene);
    if (scene.floor_z) spec.origin.z() += *scene.floor_z;
  }
  const io::LabeledCloudFile cloud = io::ReadLabeledCloud(f.cloud);
  io::OccupancyFile file;
  file.grid = OccupancyFromLabels(cloud.cloud, spec);
  file.classes = cloud.classes;
  io::WriteOccupancy(f.out, file);
  const auto occupied =
      std::count_if(file.grid.labels.begin(), file.grid.labels.end(),
                    [](int l) { return l != kEmptyLabel; });
  out << "occupancy: " << spec.dims[0] << "x" << spec.dims[1] << "x"
      << spec.dims[2] << " cells, " << occupied << " occupied -> " << f.out
      << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct PromptFlags {
  std::string scene;
  std::string config;
  int compound = 0;
  std::uint64_t seed = 0;
  std::string out;
};

void CheckResolves(const SceneGraph& scene, const Prompt& p,
                   const RelationConfig& cfg) {
  const Resolution r = ResolvePrompt(scene, p, cfg);
  if (r.target_id != p.target_id) {
    throw ConsistencyError("emitted prompt does not resolve to its target: " +
                           p.text);
  }
}

int Prompts(const PromptFlags& f, std::ostream& out) {
  const io::SceneFile file = io::ReadScene(f.scene);
  RelationConfig cfg;
  if (!f.config.empty()) {
    cfg = io::ParseRelationConfig(io::ReadFileBytes(f.config), f.config);
  }
  std::vector<Prompt> prompts = GenerateAll(file.scene, cfg);
  for (const Prompt& p : prompts) CheckResolves(file.scene, p, cfg);

  if (f.compound >= 2) {
    std::vector<int> order;
    std::map<int, std::vector<Prompt>> by_target;
    for (const Prompt& p : prompts) {
      if (!by_target.count(p.target_id)) order.push_back(p.target_id);
      by_target[p.target_id].push_back(p);
    }
    for (int target : order) {
      const auto& group = by_target[target];
      if (group.size() < 2) continue;
      Prompt c = CompoundPrompt(group, f.compound, f.seed);
      CheckResolves(file.scene, c, cfg);
      prompts.push_back(std::move(c));
    }
  }
  const std::string text = io::SerializePrompts(prompts);
  if (f.out.empty()) {
    out << text;
  } else {
    io::WriteFileBytes(f.out, text);
    out << "prompts: " << prompts.size() << " prompts -> " << f.out << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct EvalDetFlags {
  std::vector<std::string> pred;
  std::vector<std::string> gt;
  std::string iou = "0.25,0.5";
  std::string split_map;
  int threads = 1;
  std::string out;
};

int EvalDet(const EvalDetFlags& f, std::ostream& out) {
  DetectionEvalConfig config;
  config.thresholds = ParseThresholds(f.iou);
  config.num_threads = f.threads;

  std::vector<std::string> scene_ids;
  std::vector<SceneGraph> gt_scenes;
  std::map<std::string, int> scene_index;
  for (const std::string& path : f.gt) {
    const std::string id = SceneId(path);
    if (!scene_index.emplace(id, int(scene_ids.size())).second) {
      throw InvalidArgument("duplicate ground-truth scene id '" + id + "'");
    }
    scene_ids.push_back(id);
    gt_scenes.push_back(io::ReadScene(path).scene);
  }

  std::map<std::string, std::string> splits;
  if (!f.split_map.empty()) {
    splits = io::ParseSplitMap(io::ReadFileBytes(f.split_map), f.split_map);
  }
  std::set<std::string> vocab_set;
  for (const SceneGraph& s : gt_scenes) {
    for (const Instance& inst : s.instances) vocab_set.insert(inst.class_name);
  }
  for (const auto& [cls, split] : splits) vocab_set.insert(cls);
  const std::vector<std::string> vocab(vocab_set.begin(), vocab_set.end());
  auto class_id = [&](const std::string& name) {
    const auto it = std::lower_bound(vocab.begin(), vocab.end(), name);
    if (it == vocab.end() || *it != name) {
      throw InvalidArgument("vocabulary mismatch: predicted class '" + name +
                            "' does not occur in the ground truth");
    }
    return int(it - vocab.begin());
  };
  std::map<int, std::string> names;
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    config.class_ids.push_back(int(i));
    names[int(i)] = vocab[i];
  }
  for (const auto& [cls, split] : splits) config.split_of[class_id(cls)] = split;

  std::vector<std::vector<GroundTruthBox>> gts(gt_scenes.size());
  for (std::size_t s = 0; s < gt_scenes.size(); ++s) {
    for (const Instance& inst : gt_scenes[s].instances) {
      gts[s].push_back({inst.box, class_id(inst.class_name)});
    }
  }

  std::vector<std::vector<Detection>> preds(gt_scenes.size());
  const bool positional = f.pred.size() == f.gt.size();
  for (std::size_t i = 0; i < f.pred.size(); ++i) {
    const std::string& path = f.pred[i];
    const std::string bytes = io::ReadFileBytes(path);
    if (LooksLikeScene(bytes)) {
      const SceneGraph scene = io::ParseScene(bytes, path).scene;
      int s = 0;
      if (positional) {
        s = int(i);
      } else {
        const auto it = scene_index.find(SceneId(path));
        if (it == scene_index.end()) {
          throw InvalidArgument("prediction scene '" + SceneId(path) +
                                "' has no ground truth");
        }
        s = it->second;
      }
      for (const Instance& inst : scene.instances) {
        preds[s].push_back({inst.box, class_id(inst.class_name), 1.0});
      }
      continue;
    }
    for (const io::DetectionRecord& d : io::ParseDetections(bytes, path)) {
      const auto it = scene_index.find(d.scene_id);
      if (it == scene_index.end()) {
        throw InvalidArgument("prediction scene '" + d.scene_id +
                              "' has no ground truth");
      }
      preds[it->second].push_back({d.box, class_id(d.class_name), d.score});
    }
  }

  const EvalReport report = DetectionAP(preds, gts, config);
  Emit(io::DetectionReportToText(report, names), f.out, out);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct EvalOccFlags {
  std::string pred;
  std::string gt;
  std::string mask;
  std::string out;
};

int EvalOcc(const EvalOccFlags& f, std::ostream& out) {
  const io::OccupancyFile pred = io::ReadOccupancy(f.pred);
  const io::OccupancyFile gt = io::ReadOccupancy(f.gt);
  std::optional<VoxelMask> mask;
  if (!f.mask.empty()) mask = io::ReadMask(f.mask);
  std::map<int, std::string> names = pred.classes;
  for (const auto& [id, name] : gt.classes) names[id] = name;
  const OccupancyReport report =
      OccupancyMIoU(pred.grid, gt.grid, mask ? &*mask : nullptr);
  Emit(io::OccupancyReportToText(report, names), f.out, out);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct EvalGroundFlags {
  std::string pred;
  std::string gt;
  std::string iou = "0.25,0.5";
  std::string out;
};

int EvalGround(const EvalGroundFlags& f, std::ostream& out) {
  const std::vector<double> thresholds = ParseThresholds(f.iou);
  const std::vector<io::GroundingTruth> truth = io::ReadGroundingTruth(f.gt);
  std::map<std::string, std::size_t> index;
  std::vector<OrientedBox3D> boxes;
  std::vector<std::vector<std::string>> tags;
  for (const io::GroundingTruth& t : truth) {
    index[t.prompt_id] = boxes.size();
    boxes.push_back(t.box);
    tags.push_back(t.tags);
  }
  std::vector<std::vector<ScoredBox>> preds(truth.size());
  for (const io::GroundingPrediction& p : io::ReadGroundingPredictions(f.pred)) {
    const auto it = index.find(p.prompt_id);
    if (it == index.end()) {
      throw InvalidArgument("prediction for unknown prompt '" + p.prompt_id +
                            "'");
    }
    preds[it->second].push_back({p.box, p.score});
  }
  const GroundingReport report = GroundingEval(preds, boxes, tags, thresholds);
  Emit(io::GroundingReportToText(report), f.out, out);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct GradCheckFlags {
  std::string loss;
  int trials = 100;
  std::uint64_t seed = 0;
};

int GradCheckCmd(const GradCheckFlags& f, std::ostream& out) {
  const TrialSummary s =
      RunGradCheckTrials(*ParseLossKind(f.loss), f.trials, f.seed);
  char err[32];
  std::snprintf(err, sizeof(err), "%.3e", s.max_error);
  out << "gradcheck " << f.loss << ": " << s.trials << " trials, "
      << s.skipped << " skipped near kinks, max relative error " << err
      << ", " << (s.pass ? "PASS" : "FAIL") << "\n";
  return s.pass ? kExitOk : kExitInternal;
}

// ---------------------------------------------------------------------------

struct VisibilityFlags {
  std::string scene;
  std::string trajectory;
  int samples = 96;
  std::string out_mask;
  GridFlags grid;
};

int Visibility(const VisibilityFlags& f, std::ostream& out) {
  const VoxelGridSpec spec = f.grid.Spec();
  const SceneGraph scene = io::ReadScene(f.scene).scene;
  const std::vector<View> views = io::LoadViews(f.trajectory);
  if (views.empty()) throw EmptyInput("trajectory has no frames");
  std::vector<VoxelMask> masks;
  std::set<int> all;
  for (const View& v : views) {
    const std::vector<int> ids = VisibleInstances(v, scene, f.samples);
    all.insert(ids.begin(), ids.end());
    out << "frame " << v.frame_id << ":";
    for (int id : ids) out << " " << id;
    out << "\n";
    masks.push_back(VisibleOccupancyMask(v, spec));
  }
  const VoxelMask merged = MergeVisibility(masks);
  out << "visible instances: " << all.size() << " of "
      << scene.instances.size() << "; visible cells: "
      << merged.CountVisible() << " of " << spec.NumCells() << "\n";
  if (!f.out_mask.empty()) io::WriteMask(f.out_mask, merged);
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"egoscene: ego-centric 3D scene perception tooling"};
  app.name("egoscene");
  app.require_subcommand(1);

  GenSceneFlags gen;
  auto* gen_cmd = app.add_subcommand(
      "gen-scene", "Generate a synthetic scene with trajectory and depth");
  gen_cmd->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  gen_cmd->add_option("--out-dir", gen.out_dir, "Output directory")->required();
  gen_cmd->add_option("--instances", gen.instances,
                      "Exact instance count (default: random 8-20)")
      ->check(CLI::Range(1, 200));
  gen_cmd->add_option("--views", gen.views, "Number of camera views")
      ->check(CLI::Range(1, 1000))
      ->capture_default_str();

  OccupancyFlags occ;
  auto* occ_cmd = app.add_subcommand(
      "occupancy", "Voxelize a labeled point cloud into an occupancy grid");
  occ_cmd->add_option("--scene", occ.scene,
                      "Scene file; its floor_z shifts the grid vertically")
      ->check(CLI::ExistingFile);
  occ_cmd->add_option("--cloud", occ.cloud, "Labeled point cloud")
      ->required()
      ->check(CLI::ExistingFile);
  occ.grid.Register(occ_cmd);
  occ_cmd->add_option("--out", occ.out, "Output occupancy file")->required();

  PromptFlags pr;
  auto* pr_cmd =
      app.add_subcommand("prompts", "Generate spatial-relation prompts");
  pr_cmd->add_option("--scene", pr.scene, "Scene file")
      ->required()
      ->check(CLI::ExistingFile);
  pr_cmd->add_option("--config", pr.config, "Relation config JSON")
      ->check(CLI::ExistingFile);
  pr_cmd->add_option("--compound", pr.compound,
                     "Also emit compound prompts of up to N clauses (N >= 2)")
      ->check(CLI::Range(0, 16));
  pr_cmd->add_option("--seed", pr.seed, "Seed of the compound selection");
  pr_cmd->add_option("--out", pr.out, "Output JSON-lines file");

  EvalDetFlags det;
  auto* det_cmd = app.add_subcommand("eval-det", "Detection AP/AR");
  det_cmd->add_option("--pred", det.pred,
                      "Prediction JSON-lines or scene files")
      ->required()
      ->check(CLI::ExistingFile);
  det_cmd->add_option("--gt", det.gt, "Ground-truth scene files")
      ->required()
      ->check(CLI::ExistingFile);
  det_cmd->add_option("--iou", det.iou, "Comma-separated IoU thresholds")
      ->capture_default_str();
  det_cmd->add_option("--split-map", det.split_map,
                      "JSON map of class name to split name")
      ->check(CLI::ExistingFile);
  det_cmd->add_option("--threads", det.threads, "Worker threads")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();
  det_cmd->add_option("--out", det.out, "Also write the report here");

  EvalOccFlags eocc;
  auto* eocc_cmd = app.add_subcommand("eval-occ", "Occupancy mIoU");
  eocc_cmd->add_option("--pred", eocc.pred, "Predicted occupancy")
      ->required()
      ->check(CLI::ExistingFile);
  eocc_cmd->add_option("--gt", eocc.gt, "Ground-truth occupancy")
      ->required()
      ->check(CLI::ExistingFile);
  eocc_cmd->add_option("--mask", eocc.mask, "Visibility mask")
      ->check(CLI::ExistingFile);
  eocc_cmd->add_option("--out", eocc.out, "Also write the report here");

  EvalGroundFlags eg;
  auto* eg_cmd = app.add_subcommand("eval-ground", "Visual grounding AP");
  eg_cmd->add_option("--pred", eg.pred, "Grounding predictions (JSON lines)")
      ->required()
      ->check(CLI::ExistingFile);
  eg_cmd->add_option("--gt", eg.gt, "Grounding truth (JSON lines)")
      ->required()
      ->check(CLI::ExistingFile);
  eg_cmd->add_option("--iou", eg.iou, "Comma-separated IoU thresholds")
      ->capture_default_str();
  eg_cmd->add_option("--out", eg.out, "Also write the report here");

  GradCheckFlags gc;
  auto* gc_cmd = app.add_subcommand(
      "gradcheck", "Verify analytic loss gradients by central differences");
  gc_cmd->add_option("--loss", gc.loss, "corner, iou7 or contrastive")
      ->required()
      ->check(CLI::IsMember({"corner", "iou7", "contrastive"}));
  gc_cmd->add_option("--trials", gc.trials, "Number of random trials")
      ->check(CLI::Range(1, 100000))
      ->capture_default_str();
  gc_cmd->add_option("--seed", gc.seed, "Random seed")->capture_default_str();

  VisibilityFlags vis;
  auto* vis_cmd = app.add_subcommand(
      "visibility", "Per-frame visible instances and merged voxel mask");
  vis_cmd->add_option("--scene", vis.scene, "Scene file")
      ->required()
      ->check(CLI::ExistingFile);
  vis_cmd->add_option("--trajectory", vis.trajectory, "Trajectory file")
      ->required()
      ->check(CLI::ExistingFile);
  vis_cmd->add_option("--samples", vis.samples, "Surface samples per box")
      ->check(CLI::Range(1, 100000))
      ->capture_default_str();
  vis.grid.Register(vis_cmd);
  vis_cmd->add_option("--out-mask", vis.out_mask, "Merged visibility mask");

  std::vector<std::string> argv_storage = {"egoscene"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) return GenScene(gen, out);
    if (occ_cmd->parsed()) return Occupancy(occ, out);
    if (pr_cmd->parsed()) {
      if (pr.compound == 1) throw UsageError("--compound needs N >= 2");
      return Prompts(pr, out);
    }
    if (det_cmd->parsed()) return EvalDet(det, out);
    if (eocc_cmd->parsed()) return EvalOcc(eocc, out);
    if (eg_cmd->parsed()) return EvalGround(eg, out);
    if (gc_cmd->parsed()) return GradCheckCmd(gc, out);
    if (vis_cmd->parsed()) return Visibility(vis, out);
  } catch (const UsageError& e) {
    err << "egoscene: usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConsistencyError& e) {
    err << "egoscene: internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const Error& e) {
    err << "egoscene: " << e.what() << "\n";
    return kExitData;
  } catch (const fs::filesystem_error& e) {
    err << "egoscene: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "egoscene: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace egoscene::tools
