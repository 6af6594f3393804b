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

#include "fusevos/fusevos.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "fusevos/benchmark.hpp"
#include "fusevos/fusion.hpp"
#include "fusevos/io.hpp"
#include "fusevos/losses.hpp"
#include "fusevos/metrics.hpp"
#include "fusevos/pipeline.hpp"

struct fusevos_strings {
  std::vector<std::string> items;
};

struct fusevos_mask {
  fusevos::LabelMask mask;
};

struct fusevos_volume {
  fusevos::ConfidenceVolume volume;
};

struct fusevos_fusion_config {
  fusevos::FusionConfig config;
};

struct fusevos_manifest {
  fusevos::ZooManifest manifest;
};

struct fusevos_fusion_report {
  fusevos::FusionReport report;
  std::string json;
};

struct fusevos_evaluation {
  fusevos::Evaluation eval;
  std::string json;
  std::string csv;
};

struct fusevos_comparison {
  fusevos::Comparison comparison;
  std::string json;
};

struct fusevos_gradcheck {
  std::vector<fusevos::GradcheckRow> rows;
};

namespace {

using fusevos::ErrorKind;

thread_local std::string g_last_error;

fusevos_status ToStatus(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput: return FUSEVOS_ERR_INVALID_ARGUMENT;
    case ErrorKind::kFormat: return FUSEVOS_ERR_FORMAT;
    case ErrorKind::kIo: return FUSEVOS_ERR_IO;
    case ErrorKind::kMissingData: return FUSEVOS_ERR_MISSING_DATA;
    case ErrorKind::kManifest: return FUSEVOS_ERR_MANIFEST;
  }
  return FUSEVOS_ERR_INTERNAL;
}

template <typename Fn>
fusevos_status Guard(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return FUSEVOS_OK;
  } catch (const fusevos::Error& e) {
    g_last_error = e.what();
    return ToStatus(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown error";
  }
  return FUSEVOS_ERR_INTERNAL;
}

void Require(bool condition, const char* what) {
  if (!condition) fusevos::Fail(ErrorKind::kInvalidInput, what);
}

fusevos::Strategy FromC(fusevos_strategy s) {
  switch (s) {
    case FUSEVOS_STRATEGY_CONFIDENCE_GUIDED: return fusevos::Strategy::kConfidenceGuided;
    case FUSEVOS_STRATEGY_AVERAGE: return fusevos::Strategy::kAverage;
    case FUSEVOS_STRATEGY_MAX: return fusevos::Strategy::kMax;
  }
  fusevos::Fail(ErrorKind::kInvalidInput, "unknown strategy");
}

fusevos_strategy ToC(fusevos::Strategy s) {
  switch (s) {
    case fusevos::Strategy::kConfidenceGuided: return FUSEVOS_STRATEGY_CONFIDENCE_GUIDED;
    case fusevos::Strategy::kAverage: return FUSEVOS_STRATEGY_AVERAGE;
    case fusevos::Strategy::kMax: return FUSEVOS_STRATEGY_MAX;
  }
  return FUSEVOS_STRATEGY_CONFIDENCE_GUIDED;
}

fusevos::ObjectSet ObjectsFrom(const std::uint32_t* ids, std::size_t n) {
  Require(ids != nullptr && n > 0, "object ids are required");
  return fusevos::ObjectSet(std::vector<fusevos::ObjectId>(ids, ids + n));
}

fusevos::EvalOptions EvalOptionsFrom(std::int32_t tolerance, unsigned threads) {
  fusevos::EvalOptions opts;
  if (tolerance >= 0) opts.tolerance = static_cast<std::uint32_t>(tolerance);
  opts.threads = threads;
  return opts;
}

}  // namespace

extern "C" {

const char* fusevos_version(void) { return "0.1.0"; }

const char* fusevos_status_name(fusevos_status status) {
  switch (status) {
    case FUSEVOS_OK: return "ok";
    case FUSEVOS_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case FUSEVOS_ERR_FORMAT: return "format-error";
    case FUSEVOS_ERR_IO: return "io-error";
    case FUSEVOS_ERR_MISSING_DATA: return "missing-data";
    case FUSEVOS_ERR_MANIFEST: return "manifest-error";
    case FUSEVOS_ERR_INTERNAL: return "internal-error";
  }
  return "unknown";
}

const char* fusevos_last_error(void) { return g_last_error.c_str(); }

fusevos_status fusevos_strategy_parse(const char* name, fusevos_strategy* out) {
  return Guard([&] {
    Require(name != nullptr && out != nullptr, "null argument");
    auto s = fusevos::ParseStrategy(name);
    if (!s) {
      fusevos::Fail(ErrorKind::kInvalidInput,
                    std::string("unknown strategy \"") + name + "\"");
    }
    *out = ToC(*s);
  });
}

const char* fusevos_strategy_name(fusevos_strategy strategy) {
  switch (strategy) {
    case FUSEVOS_STRATEGY_CONFIDENCE_GUIDED: return "confidence_guided";
    case FUSEVOS_STRATEGY_AVERAGE: return "average";
    case FUSEVOS_STRATEGY_MAX: return "max";
  }
  return "unknown";
}

// ---- strings

size_t fusevos_strings_size(const fusevos_strings* list) {
  return list ? list->items.size() : 0;
}

const char* fusevos_strings_get(const fusevos_strings* list, size_t index) {
  if (!list || index >= list->items.size()) return nullptr;
  return list->items[index].c_str();
}

void fusevos_strings_free(fusevos_strings* list) { delete list; }

// ---- masks

fusevos_status fusevos_mask_create(uint32_t width, uint32_t height,
                                   const uint32_t* labels, fusevos_mask** out) {
  return Guard([&] {
    Require(out != nullptr, "null output");
    const std::size_t n = static_cast<std::size_t>(width) * height;
    Require(labels != nullptr || n == 0, "null labels");
    auto h = std::make_unique<fusevos_mask>();
    h->mask = fusevos::LabelMask(width, height,
                                 std::vector<fusevos::ObjectId>(labels, labels + n));
    *out = h.release();
  });
}

fusevos_status fusevos_mask_read(const char* path, fusevos_mask** out) {
  return Guard([&] {
    Require(path != nullptr && out != nullptr, "null argument");
    auto h = std::make_unique<fusevos_mask>();
    h->mask = fusevos::read_label_mask(path);
    *out = h.release();
  });
}

fusevos_status fusevos_mask_write(const fusevos_mask* mask, const char* path) {
  return Guard([&] {
    Require(mask != nullptr && path != nullptr, "null argument");
    fusevos::write_label_mask(mask->mask, path);
  });
}

uint32_t fusevos_mask_width(const fusevos_mask* mask) {
  return mask ? mask->mask.width() : 0;
}

uint32_t fusevos_mask_height(const fusevos_mask* mask) {
  return mask ? mask->mask.height() : 0;
}

const uint32_t* fusevos_mask_labels(const fusevos_mask* mask) {
  return mask ? mask->mask.labels().data() : nullptr;
}

void fusevos_mask_free(fusevos_mask* mask) { delete mask; }

// ---- volumes

fusevos_status fusevos_volume_create(const char* model_name, uint32_t width,
                                     uint32_t height, fusevos_volume** out) {
  return Guard([&] {
    Require(out != nullptr, "null output");
    auto h = std::make_unique<fusevos_volume>();
    h->volume.model_name = model_name ? model_name : "";
    h->volume.width = width;
    h->volume.height = height;
    *out = h.release();
  });
}

fusevos_status fusevos_volume_add_plane(fusevos_volume* volume,
                                        uint32_t object_id, const float* values,
                                        size_t count) {
  return Guard([&] {
    Require(volume != nullptr, "null volume");
    Require(count == volume->volume.pixel_count(),
            "value count does not match volume dimensions");
    Require(values != nullptr || count == 0, "null values");
    Require(object_id != fusevos::kBackground, "object id 0 is reserved");
    Require(volume->volume.find(object_id) == nullptr, "duplicate object id");
    for (std::size_t i = 0; i < count; ++i) {
      Require(values[i] >= 0.0f && values[i] <= 1.0f,
              "confidence values must be finite and within [0,1]");
    }
    volume->volume.planes.push_back(
        {object_id, std::vector<float>(values, values + count)});
  });
}

fusevos_status fusevos_volume_read(const char* path, fusevos_volume** out) {
  return Guard([&] {
    Require(path != nullptr && out != nullptr, "null argument");
    auto h = std::make_unique<fusevos_volume>();
    h->volume = fusevos::read_confidence_volume(path);
    *out = h.release();
  });
}

fusevos_status fusevos_volume_write(const fusevos_volume* volume,
                                    const char* path) {
  return Guard([&] {
    Require(volume != nullptr && path != nullptr, "null argument");
    fusevos::write_confidence_volume(volume->volume, path);
  });
}

uint32_t fusevos_volume_width(const fusevos_volume* volume) {
  return volume ? volume->volume.width : 0;
}

uint32_t fusevos_volume_height(const fusevos_volume* volume) {
  return volume ? volume->volume.height : 0;
}

size_t fusevos_volume_num_planes(const fusevos_volume* volume) {
  return volume ? volume->volume.planes.size() : 0;
}

uint32_t fusevos_volume_plane_object_id(const fusevos_volume* volume,
                                        size_t index) {
  if (!volume || index >= volume->volume.planes.size()) return 0;
  return volume->volume.planes[index].object_id;
}

const float* fusevos_volume_plane_values(const fusevos_volume* volume,
                                         size_t index) {
  if (!volume || index >= volume->volume.planes.size()) return nullptr;
  return volume->volume.planes[index].values.data();
}

fusevos_status fusevos_volume_flip_horizontal(const fusevos_volume* volume,
                                              fusevos_volume** out) {
  return Guard([&] {
    Require(volume != nullptr && out != nullptr, "null argument");
    auto h = std::make_unique<fusevos_volume>();
    h->volume = fusevos::flip_horizontal(volume->volume);
    *out = h.release();
  });
}

fusevos_status fusevos_tta_merge(const fusevos_volume* original,
                                 const fusevos_volume* flipped,
                                 fusevos_volume** out) {
  return Guard([&] {
    Require(original != nullptr && flipped != nullptr && out != nullptr,
            "null argument");
    auto h = std::make_unique<fusevos_volume>();
    h->volume = fusevos::tta_merge(original->volume, flipped->volume);
    *out = h.release();
  });
}

void fusevos_volume_free(fusevos_volume* volume) { delete volume; }

// ---- fusion

fusevos_status fusevos_fusion_config_create(fusevos_strategy strategy,
                                            const double* weights,
                                            size_t num_weights,
                                            fusevos_fusion_config** out) {
  return Guard([&] {
    Require(out != nullptr, "null output");
    Require(weights != nullptr && num_weights > 0, "weights are required");
    auto h = std::make_unique<fusevos_fusion_config>();
    h->config = fusevos::FusionConfig::WithDefaultTau(
        FromC(strategy), std::vector<double>(weights, weights + num_weights));
    h->config.validate();
    *out = h.release();
  });
}

fusevos_status fusevos_fusion_config_set_tau(fusevos_fusion_config* config,
                                             double tau) {
  return Guard([&] {
    Require(config != nullptr, "null config");
    fusevos::FusionConfig candidate = config->config;
    candidate.tau = tau;
    candidate.validate();
    config->config = std::move(candidate);
  });
}

double fusevos_fusion_config_tau(const fusevos_fusion_config* config) {
  return config ? config->config.tau : 0.0;
}

void fusevos_fusion_config_free(fusevos_fusion_config* config) { delete config; }

fusevos_status fusevos_fuse_frame(const fusevos_volume* const* volumes,
                                  size_t num_volumes,
                                  const fusevos_fusion_config* config,
                                  const uint32_t* object_ids, size_t num_objects,
                                  fusevos_mask** out) {
  return Guard([&] {
    Require(volumes != nullptr && config != nullptr && out != nullptr,
            "null argument");
    std::vector<fusevos::ConfidenceVolume> vs;
    vs.reserve(num_volumes);
    for (std::size_t i = 0; i < num_volumes; ++i) {
      Require(volumes[i] != nullptr, "null volume");
      vs.push_back(volumes[i]->volume);
    }
    auto h = std::make_unique<fusevos_mask>();
    h->mask = fusevos::fuse(vs, config->config, ObjectsFrom(object_ids, num_objects));
    *out = h.release();
  });
}

// ---- manifest

fusevos_status fusevos_manifest_load(const char* path, fusevos_manifest** out) {
  return Guard([&] {
    Require(path != nullptr && out != nullptr, "null argument");
    auto h = std::make_unique<fusevos_manifest>();
    h->manifest = fusevos::load_manifest(path);
    *out = h.release();
  });
}

const char* fusevos_manifest_sequence_name(const fusevos_manifest* m) {
  return m ? m->manifest.sequence_name.c_str() : nullptr;
}

uint32_t fusevos_manifest_num_frames(const fusevos_manifest* m) {
  return m ? m->manifest.num_frames : 0;
}

size_t fusevos_manifest_num_models(const fusevos_manifest* m) {
  return m ? m->manifest.models.size() : 0;
}

const char* fusevos_manifest_model_name(const fusevos_manifest* m, size_t index) {
  if (!m || index >= m->manifest.models.size()) return nullptr;
  return m->manifest.models[index].name.c_str();
}

double fusevos_manifest_model_weight(const fusevos_manifest* m, size_t index) {
  if (!m || index >= m->manifest.models.size()) return 0.0;
  return m->manifest.models[index].weight;
}

fusevos_status fusevos_manifest_warnings(const fusevos_manifest* m,
                                         fusevos_strings** out) {
  return Guard([&] {
    Require(m != nullptr && out != nullptr, "null argument");
    *out = new fusevos_strings{m->manifest.warnings};
  });
}

fusevos_status fusevos_manifest_validate(const fusevos_manifest* m, int deep,
                                         fusevos_strings** violations) {
  return Guard([&] {
    Require(m != nullptr && violations != nullptr, "null argument");
    const auto result = fusevos::validate_manifest(
        m->manifest, deep ? fusevos::ValidationDepth::kContents
                          : fusevos::ValidationDepth::kLayout);
    auto list = std::make_unique<fusevos_strings>();
    for (const auto& v : result.violations) list->items.push_back(v.message);
    *violations = list.release();
  });
}

void fusevos_manifest_free(fusevos_manifest* m) { delete m; }

fusevos_status fusevos_memory_preset(uint32_t num_frames, uint32_t* max_mem_frames,
                                     uint32_t* min_mem_frames, uint32_t* topk) {
  return Guard([&] {
    Require(max_mem_frames && min_mem_frames && topk, "null output");
    const auto preset = fusevos::memory_preset(num_frames);
    *max_mem_frames = preset.max_mem_frames;
    *min_mem_frames = preset.min_mem_frames;
    *topk = preset.topk;
  });
}

// ---- sequence fusion

fusevos_status fusevos_fuse_sequence(const fusevos_manifest* manifest,
                                     const fusevos_fusion_config* config,
                                     const char* out_dir, unsigned threads,
                                     fusevos_fusion_report** out) {
  return Guard([&] {
    Require(manifest && config && out_dir && out, "null argument");
    auto h = std::make_unique<fusevos_fusion_report>();
    h->report = fusevos::fuse_sequence(manifest->manifest, config->config,
                                       out_dir, threads);
    h->json = h->report.to_json();
    *out = h.release();
  });
}

size_t fusevos_fusion_report_num_frames(const fusevos_fusion_report* r) {
  return r ? r->report.frames.size() : 0;
}

size_t fusevos_fusion_report_contested_pixels(const fusevos_fusion_report* r,
                                              size_t frame) {
  if (!r || frame >= r->report.frames.size()) return 0;
  return r->report.frames[frame].contested_pixels;
}

const char* fusevos_fusion_report_json(const fusevos_fusion_report* r) {
  return r ? r->json.c_str() : nullptr;
}

void fusevos_fusion_report_free(fusevos_fusion_report* r) { delete r; }

// ---- evaluation

fusevos_status fusevos_jf_mean(double j, double f, double* out) {
  return Guard([&] {
    Require(out != nullptr, "null output");
    *out = fusevos::jf_mean(j, f);
  });
}

size_t fusevos_format_half_up(double value, int decimals, char* buf,
                              size_t buf_size) {
  try {
    const std::string s = fusevos::format_half_up(value, decimals);
    if (buf == nullptr || s.size() + 1 > buf_size) return 0;
    std::memcpy(buf, s.c_str(), s.size() + 1);
    return s.size();
  } catch (...) {
    return 0;
  }
}

uint32_t fusevos_default_boundary_tolerance(uint32_t width, uint32_t height) {
  return fusevos::default_boundary_tolerance(width, height);
}

fusevos_status fusevos_evaluate(const char* pred_dir, const char* gt_dir,
                                const uint32_t* object_ids, size_t num_objects,
                                int32_t tolerance, unsigned threads,
                                fusevos_evaluation** out) {
  return Guard([&] {
    Require(pred_dir && gt_dir && out, "null argument");
    std::optional<fusevos::ObjectSet> objects;
    if (object_ids != nullptr && num_objects > 0) {
      objects = ObjectsFrom(object_ids, num_objects);
    }
    auto h = std::make_unique<fusevos_evaluation>();
    h->eval = fusevos::evaluate_dataset(pred_dir, gt_dir, objects,
                                        EvalOptionsFrom(tolerance, threads));
    h->json = h->eval.summary_json();
    h->csv = h->eval.records_csv();
    *out = h.release();
  });
}

double fusevos_evaluation_j(const fusevos_evaluation* e) {
  return e ? e->eval.summary.j : 0.0;
}

double fusevos_evaluation_f(const fusevos_evaluation* e) {
  return e ? e->eval.summary.f : 0.0;
}

double fusevos_evaluation_jf(const fusevos_evaluation* e) {
  return e ? e->eval.summary.jf : 0.0;
}

size_t fusevos_evaluation_num_videos(const fusevos_evaluation* e) {
  return e ? e->eval.summary.videos.size() : 0;
}

fusevos_status fusevos_evaluation_video(const fusevos_evaluation* e, size_t index,
                                        const char** name, double* j, double* f,
                                        double* jf) {
  return Guard([&] {
    Require(e != nullptr && index < e->eval.summary.videos.size(),
            "video index out of range");
    const auto& v = e->eval.summary.videos[index];
    if (name) *name = v.video.c_str();
    if (j) *j = v.j;
    if (f) *f = v.f;
    if (jf) *jf = v.jf;
  });
}

size_t fusevos_evaluation_num_objects(const fusevos_evaluation* e) {
  return e ? e->eval.summary.objects.size() : 0;
}

fusevos_status fusevos_evaluation_object(const fusevos_evaluation* e, size_t index,
                                         const char** video, uint32_t* object_id,
                                         double* j, double* f, double* jf) {
  return Guard([&] {
    Require(e != nullptr && index < e->eval.summary.objects.size(),
            "object index out of range");
    const auto& o = e->eval.summary.objects[index];
    if (video) *video = o.video.c_str();
    if (object_id) *object_id = o.object_id;
    if (j) *j = o.j;
    if (f) *f = o.f;
    if (jf) *jf = o.jf;
  });
}

size_t fusevos_evaluation_num_records(const fusevos_evaluation* e) {
  return e ? e->eval.records.size() : 0;
}

fusevos_status fusevos_evaluation_record(const fusevos_evaluation* e, size_t index,
                                         const char** video, uint32_t* object_id,
                                         uint32_t* frame, double* j, double* f) {
  return Guard([&] {
    Require(e != nullptr && index < e->eval.records.size(),
            "record index out of range");
    const auto& r = e->eval.records[index];
    if (video) *video = r.video.c_str();
    if (object_id) *object_id = r.object_id;
    if (frame) *frame = r.frame_index;
    if (j) *j = r.j;
    if (f) *f = r.f;
  });
}

const char* fusevos_evaluation_json(const fusevos_evaluation* e) {
  return e ? e->json.c_str() : nullptr;
}

const char* fusevos_evaluation_csv(const fusevos_evaluation* e) {
  return e ? e->csv.c_str() : nullptr;
}

fusevos_status fusevos_evaluation_warnings(const fusevos_evaluation* e,
                                           fusevos_strings** out) {
  return Guard([&] {
    Require(e != nullptr && out != nullptr, "null argument");
    *out = new fusevos_strings{e->eval.summary.warnings};
  });
}

void fusevos_evaluation_free(fusevos_evaluation* e) { delete e; }

// ---- comparison

fusevos_status fusevos_compare(const fusevos_manifest* manifest,
                               const char* gt_dir, const double* weights,
                               size_t num_weights, double tau, int32_t tolerance,
                               const char* out_dir, unsigned threads,
                               fusevos_comparison** out) {
  return Guard([&] {
    Require(manifest && gt_dir && out_dir && out, "null argument");
    std::vector<double> w = weights ? std::vector<double>(weights, weights + num_weights)
                                    : manifest->manifest.weights();
    auto h = std::make_unique<fusevos_comparison>();
    h->comparison = fusevos::compare_strategies(
        manifest->manifest, gt_dir, w, tau, EvalOptionsFrom(tolerance, threads),
        out_dir, threads);
    h->json = h->comparison.to_json();
    *out = h.release();
  });
}

size_t fusevos_comparison_size(const fusevos_comparison* c) {
  return c ? c->comparison.ranking.size() : 0;
}

fusevos_status fusevos_comparison_row(const fusevos_comparison* c, size_t rank,
                                      fusevos_strategy* strategy, double* j,
                                      double* f, double* jf) {
  return Guard([&] {
    Require(c != nullptr && rank < c->comparison.ranking.size(),
            "rank out of range");
    const auto& row = c->comparison.ranking[rank];
    if (strategy) *strategy = ToC(row.strategy);
    if (j) *j = row.j;
    if (f) *f = row.f;
    if (jf) *jf = row.jf;
  });
}

const char* fusevos_comparison_json(const fusevos_comparison* c) {
  return c ? c->json.c_str() : nullptr;
}

void fusevos_comparison_free(fusevos_comparison* c) { delete c; }

// ---- gradcheck

fusevos_status fusevos_run_gradcheck(uint64_t seed, size_t cases,
                                     const char* perturb_kernel,
                                     fusevos_gradcheck** out) {
  return Guard([&] {
    Require(out != nullptr, "null output");
    fusevos::GradcheckOptions opts;
    opts.seed = seed;
    opts.cases = cases;
    if (perturb_kernel) opts.perturb_kernel = perturb_kernel;
    auto h = std::make_unique<fusevos_gradcheck>();
    h->rows = fusevos::run_gradcheck(opts);
    *out = h.release();
  });
}

size_t fusevos_gradcheck_size(const fusevos_gradcheck* g) {
  return g ? g->rows.size() : 0;
}

fusevos_status fusevos_gradcheck_row(const fusevos_gradcheck* g, size_t index,
                                     const char** kernel, double* max_rel_error,
                                     uint64_t* worst_case_seed, int* passed) {
  return Guard([&] {
    Require(g != nullptr && index < g->rows.size(), "row index out of range");
    const auto& row = g->rows[index];
    if (kernel) *kernel = row.kernel.c_str();
    if (max_rel_error) *max_rel_error = row.max_rel_error;
    if (worst_case_seed) *worst_case_seed = row.worst_case_seed;
    if (passed) *passed = row.passed ? 1 : 0;
  });
}

double fusevos_gradcheck_tolerance(void) {
  return fusevos::GradcheckOptions{}.tolerance;
}

void fusevos_gradcheck_free(fusevos_gradcheck* g) { delete g; }

// ---- fixtures

fusevos_status fusevos_generate_fixture(const char* out_dir, uint64_t seed,
                                        uint32_t width, uint32_t height,
                                        uint32_t frames, uint32_t objects) {
  return Guard([&] {
    Require(out_dir != nullptr, "null output directory");
    fusevos::BenchmarkOptions opts;
    opts.seed = seed;
    opts.width = width;
    opts.height = height;
    opts.frames = frames;
    opts.objects = objects;
    fusevos::write_fixture(fusevos::generate_benchmark(opts), out_dir);
  });
}

}  // extern "C"
