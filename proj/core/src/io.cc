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

#include "egoscene/io.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <limits>
#include <set>
#include <sstream>
#include <system_error>

#include "egoscene/errors.h"

namespace egoscene::io {
namespace {

// Text split into whitespace-separated tokens per line, remembering 1-based
// line numbers. Blank lines are skipped.
class LineReader {
 public:
  LineReader(const std::string& text, std::string source)
      : source_(std::move(source)) {
    std::size_t start = 0, number = 0;
    while (start < text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string::npos) end = text.size();
      ++number;
      std::string line = text.substr(start, end - start);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      std::istringstream in(line);
      std::vector<std::string> tokens{std::istream_iterator<std::string>(in),
                                      std::istream_iterator<std::string>()};
      if (!tokens.empty()) lines_.push_back({number, line, std::move(tokens)});
      start = end + 1;
    }
  }

  bool Done() const { return pos_ >= lines_.size(); }
  const std::vector<std::string>& Peek() const { return lines_[pos_].tokens; }
  const std::string& Raw() const { return lines_[pos_].raw; }
  std::size_t LineNo() const {
    return Done() ? (lines_.empty() ? 0 : lines_.back().number + 1)
                  : lines_[pos_].number;
  }
  void Next() { ++pos_; }

  [[noreturn]] void Fail(const std::string& field,
                         const std::string& msg) const {
    throw ParseError(source_, LineNo(), field, msg);
  }

  // Current line must start with `key` and hold exactly `count` tokens.
  const std::vector<std::string>& Expect(const std::string& key,
                                         std::size_t count) {
    if (Done()) Fail(key, "unexpected end of file, expected '" + key + "'");
    const auto& t = Peek();
    if (t[0] != key) Fail(key, "expected '" + key + "', found '" + t[0] + "'");
    if (t.size() != count) {
      Fail(key, "expected " + std::to_string(count - 1) + " values, found " +
                    std::to_string(t.size() - 1));
    }
    return t;
  }

  double Real(const std::string& token, const std::string& field) const {
    double v = 0.0;
    const char* b = token.data();
    const char* e = b + token.size();
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || ptr != e || !std::isfinite(v)) {
      Fail(field, "'" + token + "' is not a finite real number");
    }
    return v;
  }

  long long Integer(const std::string& token, const std::string& field) const {
    long long v = 0;
    const char* b = token.data();
    const char* e = b + token.size();
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || ptr != e) {
      Fail(field, "'" + token + "' is not an integer");
    }
    return v;
  }

  int Int(const std::string& token, const std::string& field) const {
    const long long v = Integer(token, field);
    if (v < std::numeric_limits<int>::min() ||
        v > std::numeric_limits<int>::max()) {
      Fail(field, "'" + token + "' is out of range");
    }
    return int(v);
  }

  void Header(const std::string& magic) {
    if (Done()) Fail("header", "empty file, expected '" + magic + " 1'");
    const auto& t = Peek();
    if (t[0] != magic) Fail("header", "expected '" + magic + "'");
    if (t.size() != 2) Fail("version", "expected '" + magic + " <version>'");
    if (t[1] != "1") Fail("version", "unsupported version '" + t[1] + "'");
    Next();
  }

 private:
  struct Line {
    std::size_t number;
    std::string raw;
    std::vector<std::string> tokens;
  };
  std::string source_;
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

std::string ShortestReal(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string Join(std::initializer_list<double> values) {
  std::string out;
  for (double v : values) {
    out += ' ';
    out += FormatReal(v);
  }
  return out;
}

void CheckClassName(const std::string& name) {
  if (name.empty() ||
      std::any_of(name.begin(), name.end(),
                  [](unsigned char c) { return std::isspace(c); })) {
    throw InvalidArgument("class name '" + name +
                          "' is empty or contains whitespace");
  }
}

std::map<int, std::string> ParseClassLines(LineReader& r) {
  std::map<int, std::string> classes;
  while (!r.Done() && r.Peek()[0] == "class") {
    const auto& t = r.Expect("class", 3);
    const int id = r.Int(t[1], "class");
    if (id < 0) r.Fail("class", "class ids must be >= 0");
    if (!classes.emplace(id, t[2]).second) {
      r.Fail("class", "duplicate class id " + t[1]);
    }
    r.Next();
  }
  return classes;
}

void AppendClassLines(const std::map<int, std::string>& classes,
                      std::string& out) {
  for (const auto& [id, name] : classes) {
    CheckClassName(name);
    out += "class " + std::to_string(id) + " " + name + "\n";
  }
}

VoxelIndex ParseDims(LineReader& r) {
  const auto& t = r.Expect("dims", 4);
  VoxelIndex d;
  for (int k = 0; k < 3; ++k) {
    d[k] = r.Int(t[k + 1], "dims");
    if (d[k] <= 0) r.Fail("dims", "dimensions must be positive");
  }
  r.Next();
  return d;
}

// Reads "runs <n>" and n "<count> <value>" lines, expanding to `cells`.
std::vector<int> ParseRuns(LineReader& r, std::size_t cells, int min_value,
                           int max_value) {
  const auto& t = r.Expect("runs", 2);
  const long long n = r.Integer(t[1], "runs");
  if (n < 0) r.Fail("runs", "run count must be >= 0");
  r.Next();
  std::vector<int> values;
  values.reserve(cells);
  for (long long i = 0; i < n; ++i) {
    if (r.Done()) {
      r.Fail("runs", "expected " + std::to_string(n) + " runs, found " +
                         std::to_string(i));
    }
    const auto& run = r.Peek();
    if (run.size() != 2) r.Fail("run", "expected '<count> <value>'");
    const long long count = r.Integer(run[0], "run count");
    const int value = r.Int(run[1], "run value");
    if (count <= 0) r.Fail("run count", "run lengths must be positive");
    if (value < min_value || value > max_value) {
      r.Fail("run value", "value " + run[1] + " out of range");
    }
    if (values.size() + std::size_t(count) > cells) {
      r.Fail("runs", "runs expand beyond the " + std::to_string(cells) +
                         " cells of the grid");
    }
    values.insert(values.end(), std::size_t(count), value);
    r.Next();
  }
  if (values.size() != cells) {
    r.Fail("runs", "runs expand to " + std::to_string(values.size()) +
                       " cells, expected " + std::to_string(cells));
  }
  if (!r.Done()) r.Fail("trailing", "unexpected content after the last run");
  return values;
}

void AppendRuns(const std::vector<int>& values, std::string& out) {
  const std::vector<Run> runs = RunLengthEncode(values);
  out += "runs " + std::to_string(runs.size()) + "\n";
  for (const Run& run : runs) {
    out += std::to_string(run.count) + " " + std::to_string(run.label) + "\n";
  }
}

}  // namespace

std::string FormatReal(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string ReadFileBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, "", "cannot open file");
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

void WriteFileBytes(const std::filesystem::path& path,
                    const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(path.string() + ": cannot open for writing");
  out.write(bytes.data(), std::streamsize(bytes.size()));
  if (!out) throw Error(path.string() + ": write failed");
}

// ---------------------------------------------------------------------------
// Scenes

std::string SerializeScene(const SceneFile& file) {
  file.scene.Validate();
  std::vector<const Instance*> sorted;
  for (const Instance& inst : file.scene.instances) sorted.push_back(&inst);
  std::sort(sorted.begin(), sorted.end(),
            [](const Instance* a, const Instance* b) { return a->id < b->id; });
  std::string out = "EMSCENE 1\nunits meters\nup_axis Z\n";
  if (file.floor_z) out += "floor_z " + FormatReal(*file.floor_z) + "\n";
  for (const Instance* inst : sorted) {
    CheckClassName(inst->class_name);
    const OrientedBox3D& b = inst->box;
    out += "instance " + std::to_string(inst->id) + " " + inst->class_name +
           Join({b.center.x(), b.center.y(), b.center.z(), b.size.x(),
                 b.size.y(), b.size.z(), b.rot.alpha, b.rot.beta,
                 b.rot.gamma}) +
           "\n";
  }
  return out;
}

SceneFile ParseScene(const std::string& text, const std::string& source) {
  LineReader r(text, source);
  r.Header("EMSCENE");
  SceneFile file;
  std::set<int> ids;
  for (; !r.Done(); r.Next()) {
    const auto& t = r.Peek();
    if (t[0] == "units") {
      r.Expect("units", 2);
      if (t[1] != "meters") r.Fail("units", "only 'meters' is supported");
    } else if (t[0] == "up_axis") {
      r.Expect("up_axis", 2);
      if (t[1] != "Z") r.Fail("up_axis", "only 'Z' is supported");
    } else if (t[0] == "floor_z") {
      r.Expect("floor_z", 2);
      if (file.floor_z) r.Fail("floor_z", "duplicate floor_z line");
      file.floor_z = r.Real(t[1], "floor_z");
    } else if (t[0] == "instance") {
      r.Expect("instance", 12);
      Instance inst;
      inst.id = r.Int(t[1], "id");
      inst.class_name = t[2];
      const std::string where = "instance " + t[1];
      double v[9];
      static const char* kFields[9] = {"cx", "cy",    "cz",   "dx",   "dy",
                                       "dz", "alpha", "beta", "gamma"};
      for (int k = 0; k < 9; ++k) v[k] = r.Real(t[3 + k], kFields[k]);
      inst.box.center = {v[0], v[1], v[2]};
      inst.box.size = {v[3], v[4], v[5]};
      inst.box.rot = {v[6], v[7], v[8]};
      for (int k = 0; k < 3; ++k) {
        if (!(v[3 + k] > 0.0)) {
          r.Fail(kFields[3 + k],
                 where + ": box extent must be positive, got " + t[6 + k]);
        }
      }
      if (!ids.insert(inst.id).second) {
        r.Fail("id", "duplicate instance id " + t[1]);
      }
      file.scene.instances.push_back(std::move(inst));
    } else {
      r.Fail(t[0], "unknown record '" + t[0] + "'");
    }
  }
  return file;
}

void WriteScene(const std::filesystem::path& path, const SceneFile& file) {
  WriteFileBytes(path, SerializeScene(file));
}

SceneFile ReadScene(const std::filesystem::path& path) {
  return ParseScene(ReadFileBytes(path), path.string());
}

// ---------------------------------------------------------------------------
// Depth

DepthImage DepthRaster::ToMeters() const {
  DepthImage img(width, height);
  for (std::size_t i = 0; i < values.size(); ++i) {
    img.meters[i] = values[i] * mm_per_unit / 1000.0;
  }
  return img;
}

DepthRaster DepthRaster::Quantize(const DepthImage& depth, double mm_per_unit) {
  if (!(mm_per_unit > 0.0) || !std::isfinite(mm_per_unit)) {
    throw InvalidArgument("depth scale must be positive");
  }
  DepthRaster r;
  r.width = depth.width;
  r.height = depth.height;
  r.mm_per_unit = mm_per_unit;
  r.values.resize(depth.meters.size());
  for (std::size_t i = 0; i < depth.meters.size(); ++i) {
    const double units = std::round(depth.meters[i] * 1000.0 / mm_per_unit);
    r.values[i] = (units > 0.0 && units <= 65535.0) ? std::uint16_t(units) : 0;
  }
  return r;
}

std::string EncodeDepth(const DepthRaster& raster) {
  if (raster.width <= 0 || raster.height <= 0 ||
      raster.values.size() != std::size_t(raster.width) * raster.height) {
    throw InvalidArgument("depth raster size does not match its dimensions");
  }
  if (!(raster.mm_per_unit > 0.0) || !std::isfinite(raster.mm_per_unit)) {
    throw InvalidArgument("depth scale must be positive");
  }
  std::string out = "EMDEPTH 1 " + std::to_string(raster.width) + " " +
                    std::to_string(raster.height) + " " +
                    ShortestReal(raster.mm_per_unit) + "\n";
  out.reserve(out.size() + raster.values.size() * 2);
  for (std::uint16_t v : raster.values) {
    out.push_back(char(v & 0xff));
    out.push_back(char(v >> 8));
  }
  return out;
}

DepthRaster DecodeDepth(const std::string& bytes, const std::string& source) {
  const std::size_t eol = bytes.find('\n');
  if (eol == std::string::npos) {
    throw ParseError(source, 1, "header", "missing header line");
  }
  LineReader r(bytes.substr(0, eol), source);
  if (r.Done()) r.Fail("header", "empty header line");
  const auto& t = r.Peek();
  if (t[0] != "EMDEPTH") r.Fail("header", "expected 'EMDEPTH'");
  if (t.size() != 5) {
    r.Fail("header", "expected 'EMDEPTH 1 <width> <height> <mm-per-unit>'");
  }
  if (t[1] != "1") r.Fail("version", "unsupported version '" + t[1] + "'");
  DepthRaster raster;
  raster.width = r.Int(t[2], "width");
  raster.height = r.Int(t[3], "height");
  raster.mm_per_unit = r.Real(t[4], "mm_per_unit");
  if (raster.width <= 0 || raster.height <= 0) {
    r.Fail("width", "image dimensions must be positive");
  }
  if (!(raster.mm_per_unit > 0.0)) {
    r.Fail("mm_per_unit", "scale must be positive");
  }
  const std::size_t n = std::size_t(raster.width) * raster.height;
  const std::size_t have = bytes.size() - eol - 1;
  if (have != 2 * n) {
    throw ParseError(source, 0, "payload",
                     "expected " + std::to_string(2 * n) + " payload bytes, got " +
                         std::to_string(have));
  }
  raster.values.resize(n);
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data() + eol + 1);
  for (std::size_t i = 0; i < n; ++i) {
    raster.values[i] = std::uint16_t(p[2 * i] | (p[2 * i + 1] << 8));
  }
  return raster;
}

void WriteDepth(const std::filesystem::path& path, const DepthRaster& raster) {
  WriteFileBytes(path, EncodeDepth(raster));
}

DepthRaster ReadDepth(const std::filesystem::path& path) {
  return DecodeDepth(ReadFileBytes(path), path.string());
}

// ---------------------------------------------------------------------------
// Trajectories

std::string SerializeTrajectory(const TrajectoryFile& file) {
  if (file.note.find('\n') != std::string::npos) {
    throw InvalidArgument("trajectory note must be a single line");
  }
  std::string out = "EMTRAJ 1\n";
  if (!file.note.empty()) out += "note " + file.note + "\n";
  for (const TrajectoryFrame& f : file.frames) {
    const CameraIntrinsics& k = f.intrinsics;
    const Mat3& r = f.pose.rotation;
    const Vec3& t = f.pose.translation;
    const std::string depth = f.depth_path.empty() ? "-" : f.depth_path;
    if (std::any_of(depth.begin(), depth.end(),
                    [](unsigned char c) { return std::isspace(c); })) {
      throw InvalidArgument("depth paths may not contain whitespace");
    }
    out += "frame " + std::to_string(f.frame_id) + Join({k.fx, k.fy, k.cx, k.cy}) +
           " " + std::to_string(k.width) + " " + std::to_string(k.height) +
           Join({r(0, 0), r(0, 1), r(0, 2), r(1, 0), r(1, 1), r(1, 2), r(2, 0),
                 r(2, 1), r(2, 2), t.x(), t.y(), t.z()}) +
           " " + depth + "\n";
  }
  return out;
}

TrajectoryFile ParseTrajectory(const std::string& text,
                               const std::string& source) {
  LineReader r(text, source);
  r.Header("EMTRAJ");
  TrajectoryFile file;
  std::set<int> ids;
  for (; !r.Done(); r.Next()) {
    const auto& t = r.Peek();
    if (t[0] == "note") {
      const std::string& raw = r.Raw();
      const std::size_t pos = raw.find("note") + 4;
      std::string note = raw.substr(pos);
      note.erase(0, note.find_first_not_of(" \t"));
      file.note = note;
      continue;
    }
    r.Expect("frame", 21);
    TrajectoryFrame f;
    f.frame_id = r.Int(t[1], "frame_id");
    if (!ids.insert(f.frame_id).second) {
      r.Fail("frame_id", "duplicate frame id " + t[1]);
    }
    f.intrinsics.fx = r.Real(t[2], "fx");
    f.intrinsics.fy = r.Real(t[3], "fy");
    f.intrinsics.cx = r.Real(t[4], "cx");
    f.intrinsics.cy = r.Real(t[5], "cy");
    f.intrinsics.width = r.Int(t[6], "width");
    f.intrinsics.height = r.Int(t[7], "height");
    try {
      f.intrinsics.Validate();
    } catch (const InvalidArgument& e) {
      r.Fail("intrinsics", e.what());
    }
    for (int i = 0; i < 9; ++i) {
      f.pose.rotation(i / 3, i % 3) = r.Real(t[8 + i], "rotation");
    }
    for (int i = 0; i < 3; ++i) {
      f.pose.translation[i] = r.Real(t[17 + i], "translation");
    }
    try {
      f.pose.Validate(1e-6);
    } catch (const InvalidArgument& e) {
      r.Fail("rotation", e.what());
    }
    f.depth_path = t[20] == "-" ? "" : t[20];
    file.frames.push_back(std::move(f));
  }
  return file;
}

void WriteTrajectory(const std::filesystem::path& path,
                     const TrajectoryFile& file) {
  WriteFileBytes(path, SerializeTrajectory(file));
}

TrajectoryFile ReadTrajectory(const std::filesystem::path& path) {
  return ParseTrajectory(ReadFileBytes(path), path.string());
}

std::vector<View> LoadViews(const std::filesystem::path& trajectory_path) {
  const TrajectoryFile traj = ReadTrajectory(trajectory_path);
  const std::filesystem::path dir = trajectory_path.parent_path();
  std::vector<View> views;
  for (const TrajectoryFrame& f : traj.frames) {
    View v;
    v.frame_id = f.frame_id;
    v.intrinsics = f.intrinsics;
    v.pose = f.pose;
    if (!f.depth_path.empty()) {
      const std::filesystem::path p = dir / f.depth_path;
      const DepthRaster raster = ReadDepth(p);
      if (raster.width != f.intrinsics.width ||
          raster.height != f.intrinsics.height) {
        throw ParseError(p.string(), 1, "header",
                         "depth size " + std::to_string(raster.width) + "x" +
                             std::to_string(raster.height) +
                             " differs from frame " +
                             std::to_string(f.frame_id) + " intrinsics");
      }
      v.depth = raster.ToMeters();
    }
    views.push_back(std::move(v));
  }
  return views;
}

// ---------------------------------------------------------------------------
// Occupancy and masks

std::vector<Run> RunLengthEncode(const std::vector<int>& labels) {
  std::vector<Run> runs;
  for (int label : labels) {
    if (!runs.empty() && runs.back().label == label) {
      ++runs.back().count;
    } else {
      runs.push_back({1, label});
    }
  }
  return runs;
}

std::string SerializeOccupancy(const OccupancyFile& file) {
  const VoxelGridSpec& s = file.grid.spec;
  s.Validate();
  if (file.grid.labels.size() != s.NumCells()) {
    throw InvalidArgument("occupancy label count does not match dims");
  }
  std::string out = "EMOCC 1\norigin" +
                    Join({s.origin.x(), s.origin.y(), s.origin.z()}) +
                    "\nvoxel_size" +
                    Join({s.voxel_size.x(), s.voxel_size.y(), s.voxel_size.z()}) +
                    "\ndims " + std::to_string(s.dims[0]) + " " +
                    std::to_string(s.dims[1]) + " " + std::to_string(s.dims[2]) +
                    "\n";
  AppendClassLines(file.classes, out);
  AppendRuns(file.grid.labels, out);
  return out;
}

OccupancyFile ParseOccupancy(const std::string& text,
                             const std::string& source) {
  LineReader r(text, source);
  r.Header("EMOCC");
  VoxelGridSpec spec;
  {
    const auto& t = r.Expect("origin", 4);
    for (int k = 0; k < 3; ++k) spec.origin[k] = r.Real(t[k + 1], "origin");
    r.Next();
  }
  {
    const auto& t = r.Expect("voxel_size", 4);
    for (int k = 0; k < 3; ++k) {
      spec.voxel_size[k] = r.Real(t[k + 1], "voxel_size");
      if (!(spec.voxel_size[k] > 0.0)) {
        r.Fail("voxel_size", "voxel sizes must be positive");
      }
    }
    r.Next();
  }
  spec.dims = ParseDims(r);
  OccupancyFile file;
  file.grid.spec = spec;
  file.classes = ParseClassLines(r);
  file.grid.labels = ParseRuns(r, spec.NumCells(), kEmptyLabel,
                               std::numeric_limits<int>::max());
  return file;
}

void WriteOccupancy(const std::filesystem::path& path,
                    const OccupancyFile& file) {
  WriteFileBytes(path, SerializeOccupancy(file));
}

OccupancyFile ReadOccupancy(const std::filesystem::path& path) {
  return ParseOccupancy(ReadFileBytes(path), path.string());
}

std::string SerializeMask(const VoxelMask& mask) {
  const std::size_t n = std::size_t(mask.dims[0]) * mask.dims[1] * mask.dims[2];
  if (mask.dims[0] <= 0 || mask.dims[1] <= 0 || mask.dims[2] <= 0 ||
      mask.visible.size() != n) {
    throw InvalidArgument("mask size does not match its dims");
  }
  std::string out = "EMMASK 1\ndims " + std::to_string(mask.dims[0]) + " " +
                    std::to_string(mask.dims[1]) + " " +
                    std::to_string(mask.dims[2]) + "\n";
  std::vector<int> values(mask.visible.begin(), mask.visible.end());
  for (int& v : values) v = v ? 1 : 0;
  AppendRuns(values, out);
  return out;
}

VoxelMask ParseMask(const std::string& text, const std::string& source) {
  LineReader r(text, source);
  r.Header("EMMASK");
  VoxelMask mask;
  mask.dims = ParseDims(r);
  const std::size_t n = std::size_t(mask.dims[0]) * mask.dims[1] * mask.dims[2];
  const std::vector<int> values = ParseRuns(r, n, 0, 1);
  mask.visible.assign(values.begin(), values.end());
  return mask;
}

void WriteMask(const std::filesystem::path& path, const VoxelMask& mask) {
  WriteFileBytes(path, SerializeMask(mask));
}

VoxelMask ReadMask(const std::filesystem::path& path) {
  return ParseMask(ReadFileBytes(path), path.string());
}

// ---------------------------------------------------------------------------
// Labeled clouds

std::string SerializeLabeledCloud(const LabeledCloudFile& file) {
  file.cloud.Validate();
  std::string out = "EMCLOUD 1\n";
  AppendClassLines(file.classes, out);
  out += "points " + std::to_string(file.cloud.points.size()) + "\n";
  for (std::size_t i = 0; i < file.cloud.points.size(); ++i) {
    const Vec3& p = file.cloud.points[i];
    out += FormatReal(p.x()) + Join({p.y(), p.z()}) + " " +
           std::to_string(file.cloud.labels[i]) + "\n";
  }
  return out;
}

LabeledCloudFile ParseLabeledCloud(const std::string& text,
                                   const std::string& source) {
  LineReader r(text, source);
  r.Header("EMCLOUD");
  LabeledCloudFile file;
  file.classes = ParseClassLines(r);
  const auto& t = r.Expect("points", 2);
  const long long n = r.Integer(t[1], "points");
  if (n < 0) r.Fail("points", "point count must be >= 0");
  r.Next();
  for (long long i = 0; i < n; ++i) {
    if (r.Done()) {
      r.Fail("points", "expected " + std::to_string(n) + " points, found " +
                           std::to_string(i));
    }
    const auto& p = r.Peek();
    if (p.size() != 4) r.Fail("point", "expected '<x> <y> <z> <label>'");
    file.cloud.points.emplace_back(r.Real(p[0], "x"), r.Real(p[1], "y"),
                                   r.Real(p[2], "z"));
    const int label = r.Int(p[3], "label");
    if (label < 0) r.Fail("label", "labels must be >= 0");
    file.cloud.labels.push_back(label);
    r.Next();
  }
  if (!r.Done()) r.Fail("trailing", "unexpected content after the last point");
  return file;
}

void WriteLabeledCloud(const std::filesystem::path& path,
                       const LabeledCloudFile& file) {
  WriteFileBytes(path, SerializeLabeledCloud(file));
}

LabeledCloudFile ReadLabeledCloud(const std::filesystem::path& path) {
  return ParseLabeledCloud(ReadFileBytes(path), path.string());
}

}  // namespace egoscene::io
