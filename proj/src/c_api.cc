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

#include "faceparse/faceparse.h"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "faceparse/boundary.hpp"
#include "faceparse/compositor.hpp"
#include "faceparse/dataset.hpp"
#include "faceparse/image_io.hpp"
#include "faceparse/landmarks.hpp"
#include "faceparse/metrics.hpp"
#include "faceparse/part_schema.hpp"
#include "faceparse/pipeline.hpp"
#include "faceparse/service.hpp"
#include "json.hpp"

struct fp_landmarks {
  faceparse::LandmarkSet value;
};
struct fp_schema {
  faceparse::PartSchema value;
};
struct fp_label_map {
  faceparse::LabelMap value;
};
struct fp_confusion {
  faceparse::ConfusionCounts value;
};

namespace {

using namespace faceparse;

thread_local std::string g_last_error;
std::atomic<bool> g_stop_requested{false};

fp_status fail(fp_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <typename Fn>
fp_status guard(Fn&& fn) {
  g_last_error.clear();
  try {
    return fn();
  } catch (const Error& e) {
    return fail(static_cast<fp_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(FP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FP_ERR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_string(char** out, const std::string& s) {
  if (out != nullptr) *out = dup_string(s);
}

#define FP_REQUIRE(cond)                                        \
  do {                                                          \
    if (!(cond)) return fail(FP_ERR_NULL_ARGUMENT, #cond);      \
  } while (0)

PartSchema schema_or_default(const char* path) {
  return path != nullptr ? load_part_schema_file(path) : default_part_schema();
}

}  // namespace

extern "C" {

const char* fp_version(void) { return "0.1.0"; }

const char* fp_status_name(fp_status status) {
  switch (status) {
    case FP_OK:
      return "Ok";
    case FP_ERR_NULL_ARGUMENT:
      return "NullArgument";
    case FP_ERR_INTERNAL:
      return "Internal";
    default:
      break;
  }
  if (status >= FP_ERR_COUNT_MISMATCH && status <= FP_ERR_INVALID_ARGUMENT) {
    return error_code_name(static_cast<ErrorCode>(status)).data();
  }
  return "Unknown";
}

const char* fp_last_error_message(void) { return g_last_error.c_str(); }

void fp_string_free(char* s) { std::free(s); }

const char* fp_category_name(int id) {
  if (id < 0 || id >= kNumCategories) return nullptr;
  return kCategoryNames[static_cast<std::size_t>(id)].data();
}

fp_status fp_landmarks_create(const double* xy, const uint8_t* visible, int width, int height,
                              fp_landmarks** out) {
  FP_REQUIRE(xy != nullptr && out != nullptr);
  return guard([&] {
    LandmarkSet::Points pts{};
    LandmarkSet::Visibility vis{};
    for (int i = 0; i < kNumLandmarks; ++i) {
      pts[i] = {xy[2 * i], xy[2 * i + 1]};
      vis[i] = visible == nullptr || visible[i] != 0;
    }
    *out = new fp_landmarks{LandmarkSet(pts, vis, width, height)};
    return FP_OK;
  });
}

fp_status fp_landmarks_parse(const char* text, int width, int height, fp_landmarks** out) {
  FP_REQUIRE(text != nullptr && out != nullptr);
  return guard([&] {
    *out = new fp_landmarks{parse_landmark_file(text, width, height)};
    return FP_OK;
  });
}

fp_status fp_landmarks_read(const char* path, int width, int height, fp_landmarks** out) {
  FP_REQUIRE(path != nullptr && out != nullptr);
  return guard([&] {
    *out = new fp_landmarks{read_landmark_file(path, width, height)};
    return FP_OK;
  });
}

fp_status fp_landmarks_write(const fp_landmarks* lm, const char* path) {
  FP_REQUIRE(lm != nullptr && path != nullptr);
  return guard([&] {
    write_landmark_file(path, lm->value);
    return FP_OK;
  });
}

fp_status fp_landmarks_serialize(const fp_landmarks* lm, char** out) {
  FP_REQUIRE(lm != nullptr && out != nullptr);
  return guard([&] {
    set_string(out, serialize_landmarks(lm->value));
    return FP_OK;
  });
}

fp_status fp_landmarks_get(const fp_landmarks* lm, double* xy, uint8_t* visible) {
  FP_REQUIRE(lm != nullptr);
  for (int i = 0; i < kNumLandmarks; ++i) {
    if (xy != nullptr) {
      xy[2 * i] = lm->value.point(i).x;
      xy[2 * i + 1] = lm->value.point(i).y;
    }
    if (visible != nullptr) visible[i] = lm->value.visible(i) ? 1 : 0;
  }
  return FP_OK;
}

void fp_landmarks_free(fp_landmarks* lm) { delete lm; }

fp_status fp_schema_default(fp_schema** out) {
  FP_REQUIRE(out != nullptr);
  return guard([&] {
    *out = new fp_schema{default_part_schema()};
    return FP_OK;
  });
}

fp_status fp_schema_load(const char* path, fp_schema** out) {
  FP_REQUIRE(path != nullptr && out != nullptr);
  return guard([&] {
    *out = new fp_schema{load_part_schema_file(path)};
    return FP_OK;
  });
}

fp_status fp_schema_parse(const char* json, fp_schema** out) {
  FP_REQUIRE(json != nullptr && out != nullptr);
  return guard([&] {
    *out = new fp_schema{load_part_schema(json)};
    return FP_OK;
  });
}

void fp_schema_free(fp_schema* schema) { delete schema; }

fp_status fp_label_map_create(int width, int height, const uint8_t* data, fp_label_map** out) {
  FP_REQUIRE(out != nullptr && (data != nullptr || width == 0 || height == 0));
  return guard([&] {
    if (width < 0 || height < 0) {
      return fail(FP_ERR_INVALID_ARGUMENT, "negative label map dimensions");
    }
    const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    *out = new fp_label_map{LabelMap(width, height, std::vector<std::uint8_t>(data, data + n))};
    return FP_OK;
  });
}

fp_status fp_label_map_read(const char* path, fp_label_map** out) {
  FP_REQUIRE(path != nullptr && out != nullptr);
  return guard([&] {
    *out = new fp_label_map{read_label_map(path)};
    return FP_OK;
  });
}

fp_status fp_label_map_write(const fp_label_map* map, const char* path) {
  FP_REQUIRE(map != nullptr && path != nullptr);
  return guard([&] {
    write_label_map(path, map->value);
    return FP_OK;
  });
}

int fp_label_map_width(const fp_label_map* map) { return map ? map->value.width() : 0; }
int fp_label_map_height(const fp_label_map* map) { return map ? map->value.height() : 0; }
const uint8_t* fp_label_map_data(const fp_label_map* map) {
  return map ? map->value.data().data() : nullptr;
}
void fp_label_map_free(fp_label_map* map) { delete map; }

fp_status fp_annotate_face(const fp_landmarks* lm, const fp_schema* schema, int width,
                           int height, const uint8_t* skin, const uint8_t* hair,
                           fp_label_map** out) {
  FP_REQUIRE(lm != nullptr && schema != nullptr && out != nullptr);
  return guard([&] {
    if (width <= 0 || height <= 0) return fail(FP_ERR_INVALID_ARGUMENT, "empty frame");
    const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    const auto to_mask = [&](const uint8_t* src) -> std::optional<Mask> {
      if (src == nullptr) return std::nullopt;
      Mask m(width, height);
      for (std::size_t i = 0; i < n; ++i) m[i] = src[i] != 0 ? 1 : 0;
      return m;
    };
    *out = new fp_label_map{
        annotate_face(lm->value, schema->value, width, height, to_mask(skin), to_mask(hair))
            .labels};
    return FP_OK;
  });
}

fp_status fp_boundary(const fp_label_map* map, uint8_t* boundary) {
  FP_REQUIRE(map != nullptr && boundary != nullptr);
  return guard([&] {
    const auto b = extract_boundary(map->value);
    std::copy(b.data().begin(), b.data().end(), boundary);
    return FP_OK;
  });
}

fp_status fp_boundary_file(const char* labels_path, const char* out_path) {
  FP_REQUIRE(labels_path != nullptr && out_path != nullptr);
  return guard([&] {
    write_boundary_map(out_path, extract_boundary(read_label_map(labels_path)));
    return FP_OK;
  });
}

fp_status fp_confusion_create(fp_confusion** out) {
  FP_REQUIRE(out != nullptr);
  return guard([&] {
    *out = new fp_confusion{};
    return FP_OK;
  });
}

fp_status fp_confusion_accumulate(fp_confusion* c, const fp_label_map* pred,
                                  const fp_label_map* gt) {
  FP_REQUIRE(c != nullptr && pred != nullptr && gt != nullptr);
  return guard([&] {
    c->value = accumulate(pred->value, gt->value, c->value);
    return FP_OK;
  });
}

fp_status fp_confusion_matrix(const fp_confusion* c, uint64_t* matrix) {
  FP_REQUIRE(c != nullptr && matrix != nullptr);
  for (int g = 0; g < kNumCategories; ++g) {
    for (int p = 0; p < kNumCategories; ++p) matrix[g * kNumCategories + p] = c->value.cell(g, p);
  }
  return FP_OK;
}

fp_status fp_confusion_scores_json(const fp_confusion* c, int macro_overall, char** json) {
  FP_REQUIRE(c != nullptr && json != nullptr);
  return guard([&] {
    const auto mode = macro_overall ? OverallMode::kMacro : OverallMode::kMicro;
    set_string(json, scores_to_json(score(c->value, mode), c->value, 0));
    return FP_OK;
  });
}

fp_status fp_confusion_scores_table(const fp_confusion* c, int macro_overall, char** table) {
  FP_REQUIRE(c != nullptr && table != nullptr);
  return guard([&] {
    const auto mode = macro_overall ? OverallMode::kMacro : OverallMode::kMicro;
    set_string(table, format_score_tables(score(c->value, mode)));
    return FP_OK;
  });
}

void fp_confusion_free(fp_confusion* c) { delete c; }

fp_status fp_mean_f1(const double* values, size_t count, double* mean) {
  FP_REQUIRE(values != nullptr && mean != nullptr);
  return guard([&] {
    *mean = round_to_hundredths(mean_f1(std::span<const double>(values, count)));
    return FP_OK;
  });
}

fp_status fp_annotate_dataset(const fp_annotate_options* options, int* failed,
                              char** summary_json) {
  FP_REQUIRE(options != nullptr && options->dataset_root != nullptr);
  return guard([&] {
    const DatasetManifest manifest = scan_dataset(options->dataset_root);
    const PartSchema schema = schema_or_default(options->schema_path);
    AnnotateOptions opts;
    opts.output_dir = options->output_dir ? options->output_dir : options->dataset_root;
    if (options->masks_dir != nullptr) opts.masks.dir = options->masks_dir;
    opts.workers = options->workers;
    opts.write_boundaries = options->skip_boundaries == 0;
    const AnnotateSummary summary = annotate_dataset(manifest, schema, opts);
    if (failed != nullptr) *failed = summary.failed;
    if (summary_json != nullptr) {
      nlohmann::ordered_json j;
      for (int sp = 0; sp < 3; ++sp) {
        j["splits"][std::string(kSplitNames[sp])] = manifest.split(static_cast<Split>(sp)).size();
      }
      j["processed"] = summary.processed;
      j["failed"] = summary.failed;
      j["non_simple_contours"] = summary.non_simple_contours;
      nlohmann::ordered_json pixels;
      for (int c = 0; c < kNumCategories; ++c) {
        pixels[std::string(category_name(static_cast<CategoryId>(c)))] =
            summary.pixels_per_category[c];
      }
      j["pixels_per_category"] = std::move(pixels);
      nlohmann::ordered_json failures = nlohmann::ordered_json::array();
      for (const auto& [id, msg] : summary.failures) {
        failures.push_back({{"id", id}, {"error", msg}});
      }
      j["failures"] = std::move(failures);
      set_string(summary_json, j.dump(2));
    }
    return FP_OK;
  });
}

fp_status fp_scan_dataset(const char* root, char** manifest_json) {
  FP_REQUIRE(root != nullptr && manifest_json != nullptr);
  return guard([&] {
    set_string(manifest_json, manifest_to_json(scan_dataset(root)));
    return FP_OK;
  });
}

fp_status fp_evaluate(const char* pred_dir, const char* gt_dir, int macro_overall,
                      char** report_json, char** table) {
  FP_REQUIRE(pred_dir != nullptr && gt_dir != nullptr);
  return guard([&] {
    const EvalReport report = evaluate_directories(
        pred_dir, gt_dir, macro_overall ? OverallMode::kMacro : OverallMode::kMicro);
    if (!report.missing_predictions.empty()) {
      std::string msg = "missing predictions for:";
      for (const auto& id : report.missing_predictions) msg += " " + id;
      return fail(FP_ERR_IO, msg);
    }
    set_string(report_json, scores_to_json(report.scores, report.counts, report.images));
    set_string(table, format_score_tables(report.scores));
    return FP_OK;
  });
}

fp_status fp_loss_check(const fp_loss_check_options* options, char** report_json) {
  FP_REQUIRE(options != nullptr && report_json != nullptr);
  FP_REQUIRE(options->labels_path != nullptr && options->semantic_path != nullptr &&
             options->boundary_path != nullptr && options->fusion_path != nullptr);
  return guard([&] {
    LossCheckInputs in;
    in.labels = options->labels_path;
    in.semantic = options->semantic_path;
    in.boundary = options->boundary_path;
    in.fusion = options->fusion_path;
    in.alpha = options->alpha;
    if (options->lambda[0] != 0.0 || options->lambda[1] != 0.0 || options->lambda[2] != 0.0) {
      in.lambda = {options->lambda[0], options->lambda[1], options->lambda[2]};
    }
    in.balance = options->no_balance == 0;
    const LossCheckReport r = loss_check(in);
    nlohmann::ordered_json j;
    j["semantic"] = r.semantic;
    j["boundary"] = r.boundary;
    j["boundary_balanced"] = r.boundary_balanced;
    j["boundary_pixels"] = r.boundary_pixels;
    j["fusion"] = r.fusion;
    j["total"] = r.total;
    j["alpha"] = in.alpha;
    j["lambda"] = {in.lambda.semantic, in.lambda.boundary, in.lambda.fusion};
    set_string(report_json, j.dump(2));
    return FP_OK;
  });
}

fp_status fp_serve(const fp_serve_options* options) {
  FP_REQUIRE(options != nullptr);
  return guard([&] {
    ServiceConfig config;
    if (options->dataset_root != nullptr) config.dataset_root = options->dataset_root;
    if (options->output_dir != nullptr) config.output_root = options->output_dir;
    if (options->masks_dir != nullptr) config.masks.dir = options->masks_dir;
    if (options->schema_path != nullptr) {
      config.schemas.emplace("default", load_part_schema_file(options->schema_path));
    }
    if (options->max_undo > 0) config.max_undo = static_cast<std::size_t>(options->max_undo);
    AnnotationService service(std::move(config));
    g_stop_requested = false;
    const std::string host = options->host ? options->host : "127.0.0.1";
    const int port = options->port > 0 ? options->port : 8080;
    if (run_server(service, host, port, &g_stop_requested) != 0) {
      return fail(FP_ERR_IO, "cannot listen on " + host + ":" + std::to_string(port));
    }
    return FP_OK;
  });
}

void fp_serve_request_stop(void) { g_stop_requested.store(true); }

}  // extern "C"
