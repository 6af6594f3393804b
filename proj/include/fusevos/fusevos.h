// Copyright 2026 The fusevos Authors
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

/*
 * C interface of libfusevos: multi-model mask fusion and J/F evaluation for
 * video object segmentation.
 *
 * Conventions:
 *  - Every fallible call returns fusevos_status. On failure a description is
 *    available from fusevos_last_error() on the calling thread until the next
 *    fusevos call on that thread.
 *  - Objects are opaque handles. Every handle returned through an out
 *    parameter is owned by the caller and released with its _free function;
 *    _free functions accept NULL.
 *  - Strings returned by accessors are owned by the handle they came from.
 *  - Handles are immutable after construction (except volumes being filled
 *    with fusevos_volume_add_plane and configs with _set_tau) and may be
 *    shared read-only across threads.
 */

#ifndef FUSEVOS_H
#define FUSEVOS_H

#include <stddef.h>
#include <stdint.h>

#if defined(FUSEVOS_BUILDING_LIBRARY)
#define FUSEVOS_API __attribute__((visibility("default")))
#else
#define FUSEVOS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fusevos_status {
  FUSEVOS_OK = 0,
  FUSEVOS_ERR_INVALID_ARGUMENT = 1,
  FUSEVOS_ERR_FORMAT = 2,
  FUSEVOS_ERR_IO = 3,
  FUSEVOS_ERR_MISSING_DATA = 4,
  FUSEVOS_ERR_MANIFEST = 5,
  FUSEVOS_ERR_INTERNAL = 6
} fusevos_status;

typedef enum fusevos_strategy {
  FUSEVOS_STRATEGY_CONFIDENCE_GUIDED = 0,
  FUSEVOS_STRATEGY_AVERAGE = 1,
  FUSEVOS_STRATEGY_MAX = 2
} fusevos_strategy;

FUSEVOS_API const char* fusevos_version(void);
FUSEVOS_API const char* fusevos_status_name(fusevos_status status);
FUSEVOS_API const char* fusevos_last_error(void);

/* "confidence", "confidence_guided", "average" or "max". */
FUSEVOS_API fusevos_status fusevos_strategy_parse(const char* name,
                                                  fusevos_strategy* out);
FUSEVOS_API const char* fusevos_strategy_name(fusevos_strategy strategy);

/* ---- string lists ------------------------------------------------------ */

typedef struct fusevos_strings fusevos_strings;

FUSEVOS_API size_t fusevos_strings_size(const fusevos_strings* list);
FUSEVOS_API const char* fusevos_strings_get(const fusevos_strings* list,
                                            size_t index);
FUSEVOS_API void fusevos_strings_free(fusevos_strings* list);

/* ---- label masks (indexed PNG) ---------------------------------------- */

typedef struct fusevos_mask fusevos_mask;

FUSEVOS_API fusevos_status fusevos_mask_create(uint32_t width, uint32_t height,
                                               const uint32_t* labels,
                                               fusevos_mask** out);
FUSEVOS_API fusevos_status fusevos_mask_read(const char* path,
                                             fusevos_mask** out);
/* Writes with the default DAVIS colour map. */
FUSEVOS_API fusevos_status fusevos_mask_write(const fusevos_mask* mask,
                                              const char* path);
FUSEVOS_API uint32_t fusevos_mask_width(const fusevos_mask* mask);
FUSEVOS_API uint32_t fusevos_mask_height(const fusevos_mask* mask);
FUSEVOS_API const uint32_t* fusevos_mask_labels(const fusevos_mask* mask);
FUSEVOS_API void fusevos_mask_free(fusevos_mask* mask);

/* ---- confidence volumes (CGFV) ---------------------------------------- */

typedef struct fusevos_volume fusevos_volume;

FUSEVOS_API fusevos_status fusevos_volume_create(const char* model_name,
                                                 uint32_t width, uint32_t height,
                                                 fusevos_volume** out);
/* Copies width*height values; values must be finite and within [0,1]. */
FUSEVOS_API fusevos_status fusevos_volume_add_plane(fusevos_volume* volume,
                                                    uint32_t object_id,
                                                    const float* values,
                                                    size_t count);
FUSEVOS_API fusevos_status fusevos_volume_read(const char* path,
                                               fusevos_volume** out);
FUSEVOS_API fusevos_status fusevos_volume_write(const fusevos_volume* volume,
                                                const char* path);
FUSEVOS_API uint32_t fusevos_volume_width(const fusevos_volume* volume);
FUSEVOS_API uint32_t fusevos_volume_height(const fusevos_volume* volume);
FUSEVOS_API size_t fusevos_volume_num_planes(const fusevos_volume* volume);
FUSEVOS_API uint32_t fusevos_volume_plane_object_id(const fusevos_volume* volume,
                                                    size_t index);
FUSEVOS_API const float* fusevos_volume_plane_values(const fusevos_volume* volume,
                                                     size_t index);
FUSEVOS_API fusevos_status fusevos_volume_flip_horizontal(
    const fusevos_volume* volume, fusevos_volume** out);
FUSEVOS_API fusevos_status fusevos_tta_merge(const fusevos_volume* original,
                                             const fusevos_volume* flipped,
                                             fusevos_volume** out);
FUSEVOS_API void fusevos_volume_free(fusevos_volume* volume);

/* ---- fusion ------------------------------------------------------------ */

typedef struct fusevos_fusion_config fusevos_fusion_config;

/* tau defaults to 0.5 * sum(weights). */
FUSEVOS_API fusevos_status fusevos_fusion_config_create(
    fusevos_strategy strategy, const double* weights, size_t num_weights,
    fusevos_fusion_config** out);
FUSEVOS_API fusevos_status fusevos_fusion_config_set_tau(
    fusevos_fusion_config* config, double tau);
FUSEVOS_API double fusevos_fusion_config_tau(const fusevos_fusion_config* config);
FUSEVOS_API void fusevos_fusion_config_free(fusevos_fusion_config* config);

FUSEVOS_API fusevos_status fusevos_fuse_frame(
    const fusevos_volume* const* volumes, size_t num_volumes,
    const fusevos_fusion_config* config, const uint32_t* object_ids,
    size_t num_objects, fusevos_mask** out);

/* ---- model-zoo manifest ----------------------------------------------- */

typedef struct fusevos_manifest fusevos_manifest;

FUSEVOS_API fusevos_status fusevos_manifest_load(const char* path,
                                                 fusevos_manifest** out);
FUSEVOS_API const char* fusevos_manifest_sequence_name(const fusevos_manifest* m);
FUSEVOS_API uint32_t fusevos_manifest_num_frames(const fusevos_manifest* m);
FUSEVOS_API size_t fusevos_manifest_num_models(const fusevos_manifest* m);
FUSEVOS_API const char* fusevos_manifest_model_name(const fusevos_manifest* m,
                                                    size_t index);
FUSEVOS_API double fusevos_manifest_model_weight(const fusevos_manifest* m,
                                                 size_t index);
FUSEVOS_API fusevos_status fusevos_manifest_warnings(const fusevos_manifest* m,
                                                     fusevos_strings** out);
/* deep != 0 also decodes and checks every referenced volume. An empty
 * violation list means the manifest is valid. */
FUSEVOS_API fusevos_status fusevos_manifest_validate(const fusevos_manifest* m,
                                                     int deep,
                                                     fusevos_strings** violations);
FUSEVOS_API void fusevos_manifest_free(fusevos_manifest* m);

FUSEVOS_API fusevos_status fusevos_memory_preset(uint32_t num_frames,
                                                 uint32_t* max_mem_frames,
                                                 uint32_t* min_mem_frames,
                                                 uint32_t* topk);

/* ---- sequence fusion --------------------------------------------------- */

typedef struct fusevos_fusion_report fusevos_fusion_report;

/* threads == 0 uses the hardware concurrency. Output files are identical
 * for every thread count. */
FUSEVOS_API fusevos_status fusevos_fuse_sequence(
    const fusevos_manifest* manifest, const fusevos_fusion_config* config,
    const char* out_dir, unsigned threads, fusevos_fusion_report** out);
FUSEVOS_API size_t fusevos_fusion_report_num_frames(const fusevos_fusion_report* r);
FUSEVOS_API size_t fusevos_fusion_report_contested_pixels(
    const fusevos_fusion_report* r, size_t frame);
FUSEVOS_API const char* fusevos_fusion_report_json(const fusevos_fusion_report* r);
FUSEVOS_API void fusevos_fusion_report_free(fusevos_fusion_report* r);

/* ---- evaluation -------------------------------------------------------- */

FUSEVOS_API fusevos_status fusevos_jf_mean(double j, double f, double* out);
/* Round-half-up decimal rendering; returns the length written (excluding
 * NUL) or 0 when buf is too small. */
FUSEVOS_API size_t fusevos_format_half_up(double value, int decimals, char* buf,
                                          size_t buf_size);
FUSEVOS_API uint32_t fusevos_default_boundary_tolerance(uint32_t width,
                                                        uint32_t height);

typedef struct fusevos_evaluation fusevos_evaluation;

/* gt_dir is either one video (frame_%05d.png files) or a dataset root with
 * one subdirectory per video. object_ids may be NULL to discover ids from
 * the ground truth. tolerance < 0 selects the default boundary tolerance. */
FUSEVOS_API fusevos_status fusevos_evaluate(const char* pred_dir,
                                            const char* gt_dir,
                                            const uint32_t* object_ids,
                                            size_t num_objects,
                                            int32_t tolerance, unsigned threads,
                                            fusevos_evaluation** out);
FUSEVOS_API double fusevos_evaluation_j(const fusevos_evaluation* e);
FUSEVOS_API double fusevos_evaluation_f(const fusevos_evaluation* e);
FUSEVOS_API double fusevos_evaluation_jf(const fusevos_evaluation* e);
FUSEVOS_API size_t fusevos_evaluation_num_videos(const fusevos_evaluation* e);
FUSEVOS_API fusevos_status fusevos_evaluation_video(const fusevos_evaluation* e,
                                                    size_t index,
                                                    const char** name, double* j,
                                                    double* f, double* jf);
FUSEVOS_API size_t fusevos_evaluation_num_objects(const fusevos_evaluation* e);
FUSEVOS_API fusevos_status fusevos_evaluation_object(const fusevos_evaluation* e,
                                                     size_t index,
                                                     const char** video,
                                                     uint32_t* object_id,
                                                     double* j, double* f,
                                                     double* jf);
FUSEVOS_API size_t fusevos_evaluation_num_records(const fusevos_evaluation* e);
FUSEVOS_API fusevos_status fusevos_evaluation_record(const fusevos_evaluation* e,
                                                     size_t index,
                                                     const char** video,
                                                     uint32_t* object_id,
                                                     uint32_t* frame, double* j,
                                                     double* f);
FUSEVOS_API const char* fusevos_evaluation_json(const fusevos_evaluation* e);
FUSEVOS_API const char* fusevos_evaluation_csv(const fusevos_evaluation* e);
FUSEVOS_API fusevos_status fusevos_evaluation_warnings(const fusevos_evaluation* e,
                                                       fusevos_strings** out);
FUSEVOS_API void fusevos_evaluation_free(fusevos_evaluation* e);

/* ---- strategy comparison ---------------------------------------------- */

typedef struct fusevos_comparison fusevos_comparison;

/* weights may be NULL to use the manifest weights; tau <= 0 selects the
 * default. Fused masks land in out_dir/<strategy>/. */
FUSEVOS_API fusevos_status fusevos_compare(const fusevos_manifest* manifest,
                                           const char* gt_dir,
                                           const double* weights,
                                           size_t num_weights, double tau,
                                           int32_t tolerance, const char* out_dir,
                                           unsigned threads,
                                           fusevos_comparison** out);
FUSEVOS_API size_t fusevos_comparison_size(const fusevos_comparison* c);
/* Rows are ranked by J&F, best first. */
FUSEVOS_API fusevos_status fusevos_comparison_row(const fusevos_comparison* c,
                                                  size_t rank,
                                                  fusevos_strategy* strategy,
                                                  double* j, double* f,
                                                  double* jf);
FUSEVOS_API const char* fusevos_comparison_json(const fusevos_comparison* c);
FUSEVOS_API void fusevos_comparison_free(fusevos_comparison* c);

/* ---- loss gradient check ----------------------------------------------- */

typedef struct fusevos_gradcheck fusevos_gradcheck;

/* perturb_kernel (NULL for none) corrupts one kernel's analytic gradient,
 * as a negative control. */
FUSEVOS_API fusevos_status fusevos_run_gradcheck(uint64_t seed, size_t cases,
                                                 const char* perturb_kernel,
                                                 fusevos_gradcheck** out);
FUSEVOS_API size_t fusevos_gradcheck_size(const fusevos_gradcheck* g);
FUSEVOS_API fusevos_status fusevos_gradcheck_row(const fusevos_gradcheck* g,
                                                 size_t index,
                                                 const char** kernel,
                                                 double* max_rel_error,
                                                 uint64_t* worst_case_seed,
                                                 int* passed);
FUSEVOS_API double fusevos_gradcheck_tolerance(void);
FUSEVOS_API void fusevos_gradcheck_free(fusevos_gradcheck* g);

/* ---- synthetic fixtures ------------------------------------------------ */

/* Writes manifest.json, models/<name>/ and gt/ under out_dir for the seeded
 * five-model synthetic benchmark. */
FUSEVOS_API fusevos_status fusevos_generate_fixture(const char* out_dir,
                                                    uint64_t seed, uint32_t width,
                                                    uint32_t height,
                                                    uint32_t frames,
                                                    uint32_t objects);

#ifdef __cplusplus
}
#endif

#endif /* FUSEVOS_H */
