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

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "egoscene/io.h"
#include "egoscene/jsonl.h"
#include "egoscene/voxel.h"
#include "gradcheck_trials.h"
#include "support/fixtures.h"

namespace egoscene::tools {
namespace {

namespace fs = std::filesystem;
using egoscene::testing::FreshTempDir;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

// Generates a scene once per test binary; tests only read from it.
const fs::path& GeneratedScene() {
  static const fs::path dir = [] {
    fs::path d = FreshTempDir("cli_scene");
    const Result r = Invoke({"gen-scene", "--seed", "11", "--instances", "12",
                          "--views", "4", "--out-dir", d.string()});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    return d;
  }();
  return dir;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(Invoke({}).code, kExitUsage);
  EXPECT_EQ(Invoke({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(Invoke({"gen-scene", "--out-dir", "/tmp/x", "--instances", "0"}).code,
            kExitUsage);
  EXPECT_EQ(Invoke({"gradcheck", "--loss", "l2"}).code, kExitUsage);
  EXPECT_EQ(Invoke({"eval-det", "--pred", "/no/such", "--gt", "/no/such"}).code,
            kExitUsage);
  EXPECT_EQ(Invoke({"--help"}).code, kExitOk);
}

TEST(Cli, MalformedInputIsDataError) {
  const fs::path dir = FreshTempDir("cli_bad");
  io::WriteFileBytes(dir / "bad.emscene",
                     "EMSCENE 1\ninstance 1 a 0 0 0 0 1 1 0 0 0\n");
  const Result r = Invoke({"prompts", "--scene", (dir / "bad.emscene").string()});
  EXPECT_EQ(r.code, kExitData);
  EXPECT_NE(r.err.find("bad.emscene:2"), std::string::npos) << r.err;
  const Result iou = Invoke({"eval-det", "--pred", (dir / "bad.emscene").string(),
                          "--gt", (dir / "bad.emscene").string(), "--iou", "1.5"});
  EXPECT_EQ(iou.code, kExitUsage);
}

TEST(Cli, GenSceneIsByteDeterministic) {
  const fs::path a = FreshTempDir("cli_gen_a"), b = FreshTempDir("cli_gen_b");
  for (const fs::path& d : {a, b}) {
    ASSERT_EQ(Invoke({"gen-scene", "--seed", "3", "--views", "3", "--out-dir",
                   d.string()})
                  .code,
              kExitOk);
  }
  std::set<std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(a)) {
    if (!e.is_regular_file()) continue;
    const fs::path rel = fs::relative(e.path(), a);
    files.insert(rel.string());
    EXPECT_EQ(io::ReadFileBytes(e.path()), io::ReadFileBytes(b / rel)) << rel;
  }
  EXPECT_TRUE(files.count("scene.emscene"));
  EXPECT_TRUE(files.count("trajectory.emtraj"));
  EXPECT_TRUE(files.count("cloud.emcloud"));
  EXPECT_EQ(io::LoadViews(a / "trajectory.emtraj").size(), 3u);
}

TEST(Cli, OccupancyMatchesLibrary) {
  const fs::path& dir = GeneratedScene();
  const fs::path out = dir / "occ.emocc";
  const Result r = Invoke({"occupancy", "--scene", (dir / "scene.emscene").string(),
                        "--cloud", (dir / "cloud.emcloud").string(), "--out",
                        out.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const io::OccupancyFile file = io::ReadOccupancy(out);
  const io::LabeledCloudFile cloud = io::ReadLabeledCloud(dir / "cloud.emcloud");
  EXPECT_EQ(file.grid.labels,
            OccupancyFromLabels(cloud.cloud, DefaultOccupancySpec()).labels);
  EXPECT_EQ(file.classes, cloud.classes);
  EXPECT_EQ(Invoke({"occupancy", "--cloud", (dir / "cloud.emcloud").string(),
                 "--out", out.string(), "--dims", "4", "0", "4"})
                .code,
            kExitUsage);
}

TEST(Cli, PromptsCoverEveryRelationKind) {
  const fs::path dir = FreshTempDir("cli_prompts");
  io::WriteScene(dir / "s.emscene", {egoscene::testing::FiveRelationScene(), {}});
  const Result r = Invoke({"prompts", "--scene", (dir / "s.emscene").string(),
                        "--compound", "3", "--seed", "2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::set<std::string> kinds;
  std::istringstream lines(r.out);
  for (std::string line; std::getline(lines, line);) {
    kinds.insert(nlohmann::json::parse(line)["relation"].get<std::string>());
  }
  for (const char* k :
       {"horizontal", "vertical", "support", "allocentric", "between", "compound"}) {
    EXPECT_TRUE(kinds.count(k)) << k;
  }
  EXPECT_EQ(Invoke({"prompts", "--scene", (dir / "s.emscene").string(), "--compound", "1"})
                .code,
            kExitUsage);
}

TEST(Cli, EvalDet) {
  const fs::path& dir = GeneratedScene();
  const std::string gt = (dir / "scene.emscene").string();
  const Result self = Invoke({"eval-det", "--pred", gt, "--gt", gt});
  ASSERT_EQ(self.code, kExitOk) << self.err;
  const auto j = nlohmann::json::parse(self.out);
  EXPECT_EQ(j["mean_ap"]["0.25"].get<double>(), 1.0);
  EXPECT_EQ(j["mean_ap"]["0.5"].get<double>(), 1.0);

  const fs::path empty = FreshTempDir("cli_det") / "empty.jsonl";
  io::WriteFileBytes(empty, "");
  const Result none = Invoke({"eval-det", "--pred", empty.string(), "--gt", gt});
  ASSERT_EQ(none.code, kExitOk) << none.err;
  EXPECT_EQ(nlohmann::json::parse(none.out)["mean_ap"]["0.5"].get<double>(), 0.0);

  const fs::path alien = empty.parent_path() / "alien.jsonl";
  io::WriteFileBytes(alien, io::SerializeDetections(
                                {{"scene", "spaceship", OrientedBox3D{}, 0.9}}));
  const Result mismatch = Invoke({"eval-det", "--pred", alien.string(), "--gt", gt});
  EXPECT_EQ(mismatch.code, kExitData);
  EXPECT_NE(mismatch.err.find("spaceship"), std::string::npos) << mismatch.err;

  const fs::path split = empty.parent_path() / "split.json";
  io::WriteFileBytes(split, R"({"chair":"head","floor":"tail"})");
  const Result split_run =
      Invoke({"eval-det", "--pred", gt, "--gt", gt, "--split-map", split.string(),
           "--threads", "3"});
  ASSERT_EQ(split_run.code, kExitOk) << split_run.err;
  EXPECT_TRUE(nlohmann::json::parse(split_run.out)["splits"].contains("head"));
}

TEST(Cli, EvalOccWithMask) {
  const fs::path& dir = GeneratedScene();
  const fs::path work = FreshTempDir("cli_eocc");
  const fs::path occ = work / "gt.emocc", mask = work / "mask.emmask";
  ASSERT_EQ(Invoke({"occupancy", "--cloud", (dir / "cloud.emcloud").string(), "--out",
                 occ.string()})
                .code,
            kExitOk);
  const Result vis =
      Invoke({"visibility", "--scene", (dir / "scene.emscene").string(), "--trajectory",
           (dir / "trajectory.emtraj").string(), "--out-mask", mask.string()});
  ASSERT_EQ(vis.code, kExitOk) << vis.err;
  EXPECT_NE(vis.out.find("visible instances:"), std::string::npos);
  const Result r = Invoke({"eval-occ", "--pred", occ.string(), "--gt", occ.string(),
                        "--mask", mask.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["miou"].get<double>(), 1.0);

  // A grid of different shape is a data error.
  io::OccupancyFile small;
  small.grid = OccupancyGrid(VoxelGridSpec::Cubic(Vec3::Zero(), 0.1, {2, 2, 2}));
  io::WriteOccupancy(work / "small.emocc", small);
  EXPECT_EQ(Invoke({"eval-occ", "--pred", (work / "small.emocc").string(), "--gt",
                 occ.string()})
                .code,
            kExitData);
}

TEST(Cli, EvalGround) {
  const fs::path work = FreshTempDir("cli_eground");
  OrientedBox3D box;
  box.center = {1, 0, 0.5};
  OrientedBox3D far = box;
  far.center.x() += 5;
  io::WriteFileBytes(work / "gt.jsonl",
                     io::SerializeGroundingTruth({{"a", box, {"easy"}}, {"b", box, {}}}));
  io::WriteFileBytes(work / "pred.jsonl",
                     io::SerializeGroundingPredictions({{"a", box, 0.9}, {"b", far, 0.8}}));
  const Result r = Invoke({"eval-ground", "--pred", (work / "pred.jsonl").string(),
                        "--gt", (work / "gt.jsonl").string(), "--iou", "0.5"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["num_prompts"].get<int>(), 2);
  EXPECT_DOUBLE_EQ(j["ap"]["0.5"].get<double>(), 0.5);
  EXPECT_DOUBLE_EQ(j["ap_by_tag"]["easy"]["0.5"].get<double>(), 1.0);
}

TEST(Cli, GradCheck) {
  for (const char* loss : {"corner", "iou7", "contrastive"}) {
    const Result r = Invoke({"gradcheck", "--loss", loss, "--trials", "10", "--seed", "4"});
    EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
    EXPECT_NE(r.out.find("PASS"), std::string::npos) << r.out;
  }
  const TrialSummary s = RunGradCheckTrials(LossKind::kCorner, 5, 1, 1e-30);
  EXPECT_FALSE(s.pass);
  EXPECT_EQ(s.trials, 5);
}

}  // namespace
}  // namespace egoscene::tools
