// Copyright 2026 The faceparse Authors.
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

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "faceparse/compositor.hpp"
#include "faceparse/dataset.hpp"
#include "faceparse/losses.hpp"
#include "faceparse/metrics.hpp"
#include "faceparse/part_schema.hpp"

namespace faceparse {

// Externally segmented hair/skin layers: <dir>/skin/<id>.png and
// <dir>/hair/<id>.png, nonzero = covered.
struct MaskSource {
  std::optional<std::filesystem::path> dir;  // nullopt: parts only
};

// Annotates one sample. Image size comes from the image header, else the
// skin or hair mask.
FaceAnnotation annotate_sample(const SampleFiles& sample, const PartSchema& schema,
                               const MaskSource& masks);
// Same, with landmarks already in memory; their frame size is used.
FaceAnnotation annotate_sample(const SampleFiles& sample, const LandmarkSet& landmarks,
                               const PartSchema& schema, const MaskSource& masks);
// Throws Io when neither the image nor a mask is present.
std::pair<int, int> sample_frame(const SampleFiles& sample, const MaskSource& masks);

struct AnnotateOptions {
  std::filesystem::path output_dir;
  MaskSource masks;
  int workers = 0;  // 0: FACEPARSE_WORKERS or hardware concurrency
  bool write_boundaries = true;
};

struct AnnotateSummary {
  int processed = 0;
  int failed = 0;
  int non_simple_contours = 0;
  std::vector<std::pair<std::string, std::string>> failures;  // id, message
  std::array<std::uint64_t, kNumCategories> pixels_per_category{};
};

// Writes <out>/labels/<id>.png and <out>/boundaries/<id>.png.
AnnotateSummary annotate_dataset(const DatasetManifest& manifest,
                                 const PartSchema& schema,
                                 const AnnotateOptions& options);

int resolve_worker_count(int requested);

struct EvalReport {
  ConfusionCounts counts;
  CategoryScores scores;
  int images = 0;
  std::vector<std::string> missing_predictions;
};

// Pairs <gt_dir>/<name>.png with <pred_dir>/<name>.png.
EvalReport evaluate_directories(const std::filesystem::path& pred_dir,
                                const std::filesystem::path& gt_dir,
                                OverallMode mode = OverallMode::kMicro);

struct LossCheckInputs {
  std::filesystem::path labels;    // label-map PNG
  std::filesystem::path semantic;  // .npy H x W x C
  std::filesystem::path boundary;  // .npy H x W
  std::filesystem::path fusion;    // .npy H x W x C
  double alpha = 200.0;
  LossWeights lambda{};
  bool balance = true;
};

struct LossCheckReport {
  double semantic = 0.0;
  double boundary = 0.0;
  bool boundary_balanced = false;
  double fusion = 0.0;
  double total = 0.0;
  std::uint64_t boundary_pixels = 0;
};

LossCheckReport loss_check(const LossCheckInputs& inputs);

}  // namespace faceparse
