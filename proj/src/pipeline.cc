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

#include "faceparse/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>

#include "faceparse/boundary.hpp"
#include "faceparse/image_io.hpp"
#include "faceparse/landmarks.hpp"
#include "faceparse/npy.hpp"
#include "log.hpp"

namespace faceparse {
namespace fs = std::filesystem;

namespace {

// Runs body(i) for i in [0, n) on up to `workers` threads.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& body) {
  const std::size_t threads = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, workers)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

ProbMap prob_map_from_npy(const NpyArray& a, int width, int height, bool single,
                          const fs::path& path) {
  const auto w = static_cast<std::size_t>(width);
  const auto h = static_cast<std::size_t>(height);
  std::size_t channels = 1;
  bool ok = false;
  if (a.shape.size() == 2) {
    ok = a.shape[0] == h && a.shape[1] == w;
  } else if (a.shape.size() == 3) {
    ok = a.shape[0] == h && a.shape[1] == w;
    channels = a.shape[2];
  }
  if (!ok || (single && channels != 1)) {
    throw Error(ErrorCode::kDimensionMismatch,
                path.string() + ": shape does not match the " + std::to_string(height) + "x" +
                    std::to_string(width) + " label map (expected H x W" +
                    (single ? ")" : " x C)"));
  }
  return ProbMap(width, height, static_cast<int>(channels), a.values);
}

}  // namespace

int resolve_worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("FACEPARSE_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::pair<int, int> sample_frame(const SampleFiles& sample, const MaskSource& masks) {
  if (sample.image) return probe_image_size(*sample.image);
  if (masks.dir) {
    for (const char* layer : {"skin", "hair"}) {
      const fs::path p = *masks.dir / layer / (sample.id + ".png");
      if (fs::is_regular_file(p)) return probe_image_size(p);
    }
  }
  throw Error(ErrorCode::kIo, "sample '" + sample.id +
                                  "' has no image or mask to take the frame size from");
}

FaceAnnotation annotate_sample(const SampleFiles& sample, const LandmarkSet& landmarks,
                               const PartSchema& schema, const MaskSource& masks) {
  const int width = landmarks.image_width();
  const int height = landmarks.image_height();
  std::optional<Mask> skin;
  std::optional<Mask> hair;
  if (masks.dir) {
    skin = read_mask(*masks.dir / "skin" / (sample.id + ".png"));
    hair = read_mask(*masks.dir / "hair" / (sample.id + ".png"));
  }
  return annotate_face(landmarks, schema, width, height, skin, hair);
}

FaceAnnotation annotate_sample(const SampleFiles& sample, const PartSchema& schema,
                               const MaskSource& masks) {
  const auto [width, height] = sample_frame(sample, masks);
  return annotate_sample(sample, read_landmark_file(sample.landmarks, width, height), schema,
                         masks);
}

AnnotateSummary annotate_dataset(const DatasetManifest& manifest, const PartSchema& schema,
                                 const AnnotateOptions& options) {
  const auto ids = manifest.ordered_ids();
  struct Outcome {
    bool ok = false;
    std::string error;
    int non_simple = 0;
    std::array<std::uint64_t, kNumCategories> pixels{};
  };
  std::vector<Outcome> outcomes(ids.size());
  parallel_for(ids.size(), resolve_worker_count(options.workers), [&](std::size_t i) {
    Outcome& out = outcomes[i];
    const std::string& id = ids[i];
    try {
      const FaceAnnotation ann = annotate_sample(manifest.sample(id), schema, options.masks);
      write_label_map(options.output_dir / "labels" / (id + ".png"), ann.labels);
      if (options.write_boundaries) {
        write_boundary_map(options.output_dir / "boundaries" / (id + ".png"),
                           extract_boundary(ann.labels));
      }
      for (std::uint8_t v : ann.labels.data()) ++out.pixels[v];
      for (const auto& part : ann.parts) out.non_simple += part.simple ? 0 : 1;
      out.ok = true;
    } catch (const std::exception& e) {
      out.error = e.what();
    }
  });

  AnnotateSummary summary;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const Outcome& out = outcomes[i];
    if (!out.ok) {
      ++summary.failed;
      summary.failures.emplace_back(ids[i], out.error);
      log_error(ids[i] + ": " + out.error);
      continue;
    }
    ++summary.processed;
    summary.non_simple_contours += out.non_simple;
    for (int c = 0; c < kNumCategories; ++c) summary.pixels_per_category[c] += out.pixels[c];
  }
  return summary;
}

EvalReport evaluate_directories(const fs::path& pred_dir, const fs::path& gt_dir,
                                OverallMode mode) {
  if (!fs::is_directory(gt_dir)) {
    throw Error(ErrorCode::kIo, "ground-truth directory " + gt_dir.string() + " not found");
  }
  if (!fs::is_directory(pred_dir)) {
    throw Error(ErrorCode::kIo, "prediction directory " + pred_dir.string() + " not found");
  }
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(gt_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".png") {
      names.push_back(entry.path().filename().string());
    }
  }
  std::sort(names.begin(), names.end());

  EvalReport report;
  std::vector<ConfusionCounts> per_image(names.size());
  std::vector<char> present(names.size(), 0);
  std::vector<std::optional<Error>> errors(names.size());
  parallel_for(names.size(), resolve_worker_count(0), [&](std::size_t i) {
    const fs::path pred = pred_dir / names[i];
    if (!fs::is_regular_file(pred)) return;
    present[i] = 1;
    try {
      per_image[i] = accumulate(read_label_map(pred), read_label_map(gt_dir / names[i]));
    } catch (const Error& e) {
      errors[i] = Error(e.code(), names[i] + ": " + e.what());
    }
  });
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (errors[i]) throw *errors[i];
    if (!present[i]) {
      report.missing_predictions.push_back(names[i]);
      continue;
    }
    report.counts += per_image[i];
    ++report.images;
  }
  report.scores = score(report.counts, mode);
  return report;
}

LossCheckReport loss_check(const LossCheckInputs& in) {
  const LabelMap labels = read_label_map(in.labels);
  const int w = labels.width();
  const int h = labels.height();
  const ProbMap semantic = prob_map_from_npy(read_npy(in.semantic), w, h, false, in.semantic);
  const ProbMap boundary_p = prob_map_from_npy(read_npy(in.boundary), w, h, true, in.boundary);
  const ProbMap fusion_p = prob_map_from_npy(read_npy(in.fusion), w, h, false, in.fusion);

  const BoundaryMap boundary = extract_boundary(labels);
  const WeightMap weights = make_weight_map(boundary, in.alpha);

  LossCheckReport report;
  report.semantic = semantic_loss(semantic, labels);
  const auto b = boundary_loss_detail(boundary_p, boundary, in.balance);
  report.boundary = b.value;
  report.boundary_balanced = b.balanced;
  report.fusion = fusion_loss(fusion_p, labels, weights);
  report.total = total_loss(report.semantic, report.boundary, report.fusion, in.lambda);
  for (std::uint8_t v : boundary.data()) report.boundary_pixels += v;
  return report;
}

}  // namespace faceparse
