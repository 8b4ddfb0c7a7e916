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

/* C interface of libfaceparse. All functions are safe to call from any
 * thread; objects behind a handle must not be used concurrently. Strings
 * returned through char** must be released with fp_string_free. */

#ifndef FACEPARSE_FACEPARSE_H_
#define FACEPARSE_FACEPARSE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FP_API __declspec(dllexport)
#elif defined(__GNUC__)
#define FP_API __attribute__((visibility("default")))
#else
#define FP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fp_status {
  FP_OK = 0,
  FP_ERR_COUNT_MISMATCH = 1,
  FP_ERR_MALFORMED_LINE = 2,
  FP_ERR_INDEX_OUT_OF_RANGE = 3,
  FP_ERR_DUPLICATE_CATEGORY = 4,
  FP_ERR_MISSING_CATEGORY = 5,
  FP_ERR_BAD_STRATEGY = 6,
  FP_ERR_MALFORMED_SCHEMA = 7,
  FP_ERR_DEGENERATE_PART = 8,
  FP_ERR_ILL_CONDITIONED_FIT = 9,
  FP_ERR_DIMENSION_MISMATCH = 10,
  FP_ERR_NEGATIVE_ALPHA = 11,
  FP_ERR_INVALID_PROBABILITIES = 12,
  FP_ERR_WRONG_ARITY = 13,
  FP_ERR_INVALID_LABEL = 14,
  FP_ERR_MISSING_SPLIT_FILE = 15,
  FP_ERR_DANGLING_ID = 16,
  FP_ERR_IO = 17,
  FP_ERR_INVALID_ARGUMENT = 18,
  FP_ERR_NULL_ARGUMENT = 19,
  FP_ERR_INTERNAL = 20
} fp_status;

#define FP_NUM_LANDMARKS 106
#define FP_NUM_CATEGORIES 11

typedef struct fp_landmarks fp_landmarks;
typedef struct fp_schema fp_schema;
typedef struct fp_label_map fp_label_map;
typedef struct fp_confusion fp_confusion;

FP_API const char* fp_version(void);
FP_API const char* fp_status_name(fp_status status);
/* Message of the last failed call on this thread; "" if none. */
FP_API const char* fp_last_error_message(void);
FP_API void fp_string_free(char* s);
FP_API const char* fp_category_name(int id);

/* Landmarks. xy holds 2 * FP_NUM_LANDMARKS values (x0, y0, x1, ...);
 * visible may be NULL (all visible). */
FP_API fp_status fp_landmarks_create(const double* xy, const uint8_t* visible, int width,
                                     int height, fp_landmarks** out);
FP_API fp_status fp_landmarks_parse(const char* text, int width, int height,
                                    fp_landmarks** out);
FP_API fp_status fp_landmarks_read(const char* path, int width, int height,
                                   fp_landmarks** out);
FP_API fp_status fp_landmarks_write(const fp_landmarks* lm, const char* path);
FP_API fp_status fp_landmarks_serialize(const fp_landmarks* lm, char** out);
FP_API fp_status fp_landmarks_get(const fp_landmarks* lm, double* xy, uint8_t* visible);
FP_API void fp_landmarks_free(fp_landmarks* lm);

/* Part schemas. */
FP_API fp_status fp_schema_default(fp_schema** out);
FP_API fp_status fp_schema_load(const char* path, fp_schema** out);
FP_API fp_status fp_schema_parse(const char* json, fp_schema** out);
FP_API void fp_schema_free(fp_schema* schema);

/* Label maps: row-major 8-bit category ids. */
FP_API fp_status fp_label_map_create(int width, int height, const uint8_t* data,
                                     fp_label_map** out);
FP_API fp_status fp_label_map_read(const char* path, fp_label_map** out);
FP_API fp_status fp_label_map_write(const fp_label_map* map, const char* path);
FP_API int fp_label_map_width(const fp_label_map* map);
FP_API int fp_label_map_height(const fp_label_map* map);
FP_API const uint8_t* fp_label_map_data(const fp_label_map* map);
FP_API void fp_label_map_free(fp_label_map* map);

/* Fits and fuses one face. skin and hair are optional width*height masks
 * (nonzero = covered). */
FP_API fp_status fp_annotate_face(const fp_landmarks* lm, const fp_schema* schema, int width,
                                  int height, const uint8_t* skin, const uint8_t* hair,
                                  fp_label_map** out);

/* Writes width*height bytes (0/1) into boundary. */
FP_API fp_status fp_boundary(const fp_label_map* map, uint8_t* boundary);
/* Reads a label-map PNG and writes its boundary map as a 0/255 PNG. */
FP_API fp_status fp_boundary_file(const char* labels_path, const char* out_path);

/* Confusion counts. matrix receives FP_NUM_CATEGORIES^2 values, [gt][pred]. */
FP_API fp_status fp_confusion_create(fp_confusion** out);
FP_API fp_status fp_confusion_accumulate(fp_confusion* c, const fp_label_map* pred,
                                         const fp_label_map* gt);
FP_API fp_status fp_confusion_matrix(const fp_confusion* c, uint64_t* matrix);
FP_API fp_status fp_confusion_scores_json(const fp_confusion* c, int macro_overall,
                                          char** json);
FP_API fp_status fp_confusion_scores_table(const fp_confusion* c, int macro_overall,
                                           char** table);
FP_API void fp_confusion_free(fp_confusion* c);

/* Mean of ten per-category F1 values, as printed (two decimals). */
FP_API fp_status fp_mean_f1(const double* values, size_t count, double* mean);

/* Dataset pipeline. NULL strings and zero numbers select defaults. */
typedef struct fp_annotate_options {
  const char* dataset_root;
  const char* output_dir;  /* default: dataset_root */
  const char* masks_dir;   /* NULL: parts only */
  const char* schema_path; /* NULL: built-in schema */
  int workers;             /* 0: FACEPARSE_WORKERS or hardware threads */
  int skip_boundaries;
} fp_annotate_options;

/* summary_json may be NULL. Returns FP_OK even when some samples failed;
 * *failed (optional) receives the count. */
FP_API fp_status fp_annotate_dataset(const fp_annotate_options* options, int* failed,
                                     char** summary_json);

FP_API fp_status fp_scan_dataset(const char* root, char** manifest_json);

FP_API fp_status fp_evaluate(const char* pred_dir, const char* gt_dir, int macro_overall,
                             char** report_json, char** table);

typedef struct fp_loss_check_options {
  const char* labels_path;
  const char* semantic_path;
  const char* boundary_path;
  const char* fusion_path;
  double alpha;     /* negative values are rejected */
  double lambda[3]; /* all zero: 1, 1, 2 */
  int no_balance;
} fp_loss_check_options;

FP_API fp_status fp_loss_check(const fp_loss_check_options* options, char** report_json);

typedef struct fp_serve_options {
  const char* host; /* default 127.0.0.1 */
  int port;         /* default 8080 */
  const char* dataset_root;
  const char* output_dir;
  const char* masks_dir;
  const char* schema_path; /* registered as "default" when given */
  int max_undo;            /* 0: 100 */
} fp_serve_options;

/* Blocks until fp_serve_request_stop is called or the server fails. */
FP_API fp_status fp_serve(const fp_serve_options* options);
/* Async-signal-safe. */
FP_API void fp_serve_request_stop(void);

#ifdef __cplusplus
}
#endif

#endif /* FACEPARSE_FACEPARSE_H_ */
