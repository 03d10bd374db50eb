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

#ifndef EGOSCENE_IO_H_
#define EGOSCENE_IO_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "egoscene/camera.h"
#include "egoscene/scene.h"
#include "egoscene/voxel.h"

// On-disk formats. Every reader validates and rejects (never repairs) and
// reports the offending line and field through ParseError. Every writer is
// deterministic: equal values produce byte-identical files.
namespace egoscene::io {

// ---------------------------------------------------------------------------
// Scene files, text:
//   EMSCENE 1
//   units meters
//   up_axis Z
//   floor_z <z>                          (optional)
//   instance <id> <class> <cx> <cy> <cz> <dx> <dy> <dz> <alpha> <beta> <gamma>
// Instances are written in ascending id order, reals with 17 significant
// digits. Class names may not contain whitespace.
struct SceneFile {
  SceneGraph scene;
  std::optional<double> floor_z;
};

std::string SerializeScene(const SceneFile& file);
SceneFile ParseScene(const std::string& text, const std::string& source);
void WriteScene(const std::filesystem::path& path, const SceneFile& file);
SceneFile ReadScene(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Depth rasters: a text header line
//   EMDEPTH 1 <width> <height> <millimeters-per-unit>
// followed by width*height little-endian uint16 values, row-major. A stored
// value v means v * millimeters-per-unit millimeters; 0 is invalid.
struct DepthRaster {
  int width = 0;
  int height = 0;
  double mm_per_unit = 1.0;
  std::vector<std::uint16_t> values;

  DepthImage ToMeters() const;
  // Rounds to the nearest unit; depths beyond the 16-bit range become 0.
  static DepthRaster Quantize(const DepthImage& depth, double mm_per_unit);
};

std::string EncodeDepth(const DepthRaster& raster);
DepthRaster DecodeDepth(const std::string& bytes, const std::string& source);
void WriteDepth(const std::filesystem::path& path, const DepthRaster& raster);
DepthRaster ReadDepth(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Trajectory files, text:
//   EMTRAJ 1
//   note <free text>                     (optional, e.g. image unification)
//   frame <id> <fx> <fy> <cx> <cy> <w> <h> <r00> ... <r22> <tx> <ty> <tz> <depth>
// The rotation is the row-major camera-to-world matrix; <depth> is a path
// relative to the trajectory file, or "-" when the frame has no depth.
struct TrajectoryFrame {
  int frame_id = 0;
  CameraIntrinsics intrinsics;
  Pose pose;
  std::string depth_path;
};

struct TrajectoryFile {
  std::string note;
  std::vector<TrajectoryFrame> frames;
};

std::string SerializeTrajectory(const TrajectoryFile& file);
TrajectoryFile ParseTrajectory(const std::string& text,
                               const std::string& source);
void WriteTrajectory(const std::filesystem::path& path,
                     const TrajectoryFile& file);
TrajectoryFile ReadTrajectory(const std::filesystem::path& path);

// Reads the trajectory and the depth raster of every frame.
std::vector<View> LoadViews(const std::filesystem::path& trajectory_path);

// ---------------------------------------------------------------------------
// Occupancy files, text:
//   EMOCC 1
//   origin <x> <y> <z>
//   voxel_size <sx> <sy> <sz>
//   dims <nx> <ny> <nz>
//   class <id> <name>                    (zero or more, ascending id)
//   runs <n>
//   <count> <label>                      (n lines, x-fastest order)
struct OccupancyFile {
  OccupancyGrid grid;
  std::map<int, std::string> classes;
};

struct Run {
  std::int64_t count = 0;
  int label = 0;
  friend bool operator==(const Run&, const Run&) = default;
};

std::vector<Run> RunLengthEncode(const std::vector<int>& labels);

std::string SerializeOccupancy(const OccupancyFile& file);
OccupancyFile ParseOccupancy(const std::string& text,
                             const std::string& source);
void WriteOccupancy(const std::filesystem::path& path,
                    const OccupancyFile& file);
OccupancyFile ReadOccupancy(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Visibility masks, text:
//   EMMASK 1
//   dims <nx> <ny> <nz>
//   runs <n>
//   <count> <0|1>
std::string SerializeMask(const VoxelMask& mask);
VoxelMask ParseMask(const std::string& text, const std::string& source);
void WriteMask(const std::filesystem::path& path, const VoxelMask& mask);
VoxelMask ReadMask(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Labeled point clouds, text:
//   EMCLOUD 1
//   class <id> <name>                    (zero or more)
//   points <n>
//   <x> <y> <z> <label>                  (n lines)
struct LabeledCloudFile {
  LabeledPointCloud cloud;
  std::map<int, std::string> classes;
};

std::string SerializeLabeledCloud(const LabeledCloudFile& file);
LabeledCloudFile ParseLabeledCloud(const std::string& text,
                                   const std::string& source);
void WriteLabeledCloud(const std::filesystem::path& path,
                       const LabeledCloudFile& file);
LabeledCloudFile ReadLabeledCloud(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Shared helpers.

// %.17g formatting.
std::string FormatReal(double v);
std::string ReadFileBytes(const std::filesystem::path& path);
void WriteFileBytes(const std::filesystem::path& path,
                    const std::string& bytes);

}  // namespace egoscene::io

#endif  // EGOSCENE_IO_H_
