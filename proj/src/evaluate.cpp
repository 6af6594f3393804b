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

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

#include "fusevos/metrics.hpp"
#include "json.hpp"
#include "parallel.hpp"

namespace fusevos {
namespace {

struct FrameScores {
  std::vector<double> j;  // per object, ObjectSet order
  std::vector<double> f;
  std::set<ObjectId> unknown;
};

double Mean(std::span<const double> values) {
  double s = 0.0;
  for (double v : values) s += v;
  return values.empty() ? 0.0 : s / static_cast<double>(values.size());
}

void Summarize(Evaluation& eval) {
  EvalSummary& s = eval.summary;
  std::vector<double> js;
  std::vector<double> fs;
  for (const auto& o : s.objects) {
    js.push_back(o.j);
    fs.push_back(o.f);
  }
  s.j = Mean(js);
  s.f = Mean(fs);
  s.jf = jf_mean(s.j, s.f);
}

std::string VideoNameOf(const fs::path& dir) {
  fs::path p = dir;
  if (!p.has_filename()) p = p.parent_path();
  return p.filename().string();
}

}  // namespace

std::uint32_t count_mask_frames(const fs::path& dir) {
  std::uint32_t n = 0;
  std::error_code ec;
  while (fs::is_regular_file(dir / MaskFileName(n), ec)) ++n;
  return n;
}

ObjectSet discover_objects(const fs::path& gt_dir) {
  const std::uint32_t frames = count_mask_frames(gt_dir);
  if (frames == 0) {
    Fail(ErrorKind::kMissingData, "no frame_00000.png in " + gt_dir.string());
  }
  std::set<ObjectId> ids;
  for (std::uint32_t i = 0; i < frames; ++i) {
    const LabelMask mask = read_label_mask(gt_dir / MaskFileName(i));
    for (ObjectId id : mask.labels()) {
      if (id != kBackground) ids.insert(id);
    }
  }
  if (ids.empty()) {
    Fail(ErrorKind::kInvalidInput,
         "ground truth in " + gt_dir.string() + " contains no objects");
  }
  return ObjectSet(std::vector<ObjectId>(ids.begin(), ids.end()));
}

Evaluation evaluate_sequence(const fs::path& pred_dir, const fs::path& gt_dir,
                             const ObjectSet& objects,
                             const EvalOptions& options,
                             const std::string& video) {
  if (objects.empty()) Fail(ErrorKind::kInvalidInput, "object set is empty");
  const std::string name = video.empty() ? VideoNameOf(gt_dir) : video;
  const std::uint32_t frames = count_mask_frames(gt_dir);
  if (frames == 0) {
    Fail(ErrorKind::kMissingData,
         "missing frame " + MaskFileName(0) + " in " + gt_dir.string());
  }
  std::error_code ec;
  if (!fs::is_regular_file(pred_dir / MaskFileName(0), ec)) {
    Fail(ErrorKind::kMissingData,
         "missing frame " + MaskFileName(0) + " in " + pred_dir.string());
  }

  const std::size_t evaluated = frames - 1;
  std::vector<FrameScores> scores(evaluated);
  internal::ParallelFor(evaluated, options.threads, [&](std::size_t i) {
    const auto frame = static_cast<std::uint32_t>(i + 1);
    const fs::path pred_path = pred_dir / MaskFileName(frame);
    if (!fs::is_regular_file(pred_path)) {
      Fail(ErrorKind::kMissingData, "missing frame " + MaskFileName(frame) +
                                        " in " + pred_dir.string());
    }
    const LabelMask gt = read_label_mask(gt_dir / MaskFileName(frame));
    const LabelMask pred = read_label_mask(pred_path);
    if (gt.width() != pred.width() || gt.height() != pred.height()) {
      Fail(ErrorKind::kInvalidInput,
           "frame " + std::to_string(frame) + ": prediction is " +
               std::to_string(pred.width()) + "x" + std::to_string(pred.height()) +
               ", ground truth is " + std::to_string(gt.width()) + "x" +
               std::to_string(gt.height()));
    }
    const std::uint32_t tol = options.tolerance.value_or(
        default_boundary_tolerance(gt.width(), gt.height()));
    FrameScores& out = scores[i];
    for (ObjectId id : pred.labels()) {
      if (id != kBackground && !objects.contains(id)) out.unknown.insert(id);
    }
    for (ObjectId id : objects.ids()) {
      const BinaryMask p = binarize(pred, id);
      const BinaryMask g = binarize(gt, id);
      out.j.push_back(jaccard(p, g));
      out.f.push_back(boundary_f(p, g, tol));
    }
  });

  Evaluation eval;
  std::set<ObjectId> unknown;
  for (const auto& s : scores) unknown.insert(s.unknown.begin(), s.unknown.end());
  for (ObjectId id : unknown) {
    eval.summary.warnings.push_back(
        name + ": prediction contains unknown object id " + std::to_string(id) +
        " (scored as background)");
  }

  for (std::size_t o = 0; o < objects.size(); ++o) {
    std::vector<double> js;
    std::vector<double> fs;
    for (std::size_t i = 0; i < evaluated; ++i) {
      const auto frame = static_cast<std::uint32_t>(i + 1);
      eval.records.push_back({name, objects.ids()[o], frame, scores[i].j[o],
                              scores[i].f[o]});
      js.push_back(scores[i].j[o]);
      fs.push_back(scores[i].f[o]);
    }
    ObjectScore score;
    score.video = name;
    score.object_id = objects.ids()[o];
    score.frames = evaluated;
    // A sequence with only the annotated frame has nothing to score; treat
    // it as a perfect (vacuous) match rather than dividing by zero.
    score.j = evaluated == 0 ? 1.0 : Mean(js);
    score.f = evaluated == 0 ? 1.0 : Mean(fs);
    score.jf = jf_mean(score.j, score.f);
    eval.summary.objects.push_back(score);
  }
  Summarize(eval);
  eval.summary.videos.push_back({name, eval.summary.j, eval.summary.f,
                                 eval.summary.jf});
  return eval;
}

Evaluation combine_evaluations(std::span<const Evaluation> videos) {
  Evaluation out;
  for (const auto& v : videos) {
    out.records.insert(out.records.end(), v.records.begin(), v.records.end());
    out.summary.objects.insert(out.summary.objects.end(),
                               v.summary.objects.begin(), v.summary.objects.end());
    out.summary.videos.insert(out.summary.videos.end(), v.summary.videos.begin(),
                              v.summary.videos.end());
    out.summary.warnings.insert(out.summary.warnings.end(),
                                v.summary.warnings.begin(),
                                v.summary.warnings.end());
  }
  if (out.summary.objects.empty()) {
    Fail(ErrorKind::kInvalidInput, "nothing to combine");
  }
  Summarize(out);
  return out;
}

Evaluation evaluate_dataset(const fs::path& pred_root, const fs::path& gt_root,
                            const std::optional<ObjectSet>& objects,
                            const EvalOptions& options) {
  std::error_code ec;
  if (!fs::is_directory(gt_root, ec)) {
    Fail(ErrorKind::kMissingData, "ground-truth directory not found: " +
                                      gt_root.string());
  }
  if (!fs::is_directory(pred_root, ec)) {
    Fail(ErrorKind::kMissingData, "prediction directory not found: " +
                                      pred_root.string());
  }
  if (count_mask_frames(gt_root) > 0) {
    const ObjectSet objs = objects ? *objects : discover_objects(gt_root);
    return evaluate_sequence(pred_root, gt_root, objs, options);
  }

  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(gt_root)) {
    if (entry.is_directory() && count_mask_frames(entry.path()) > 0) {
      names.push_back(entry.path().filename().string());
    }
  }
  std::sort(names.begin(), names.end());
  if (names.empty()) {
    Fail(ErrorKind::kMissingData,
         "no video directories with frame_00000.png under " + gt_root.string());
  }
  std::vector<Evaluation> per_video;
  for (const auto& name : names) {
    const fs::path gt_dir = gt_root / name;
    const ObjectSet objs = objects ? *objects : discover_objects(gt_dir);
    per_video.push_back(
        evaluate_sequence(pred_root / name, gt_dir, objs, options, name));
  }
  return combine_evaluations(per_video);
}

std::string Evaluation::summary_json() const {
  nlohmann::json doc;
  doc["global"] = {{"J&F", summary.jf}, {"J", summary.j}, {"F", summary.f}};
  nlohmann::json videos = nlohmann::json::array();
  for (const auto& v : summary.videos) {
    videos.push_back({{"video", v.video}, {"J&F", v.jf}, {"J", v.j}, {"F", v.f}});
  }
  doc["videos"] = std::move(videos);
  nlohmann::json objs = nlohmann::json::array();
  for (const auto& o : summary.objects) {
    objs.push_back({{"video", o.video},
                    {"object", o.object_id},
                    {"frames", o.frames},
                    {"J&F", o.jf},
                    {"J", o.j},
                    {"F", o.f}});
  }
  doc["objects"] = std::move(objs);
  doc["warnings"] = summary.warnings;
  return doc.dump(2) + "\n";
}

std::string Evaluation::records_csv() const {
  std::string out = "video,object,frame,J,F\n";
  char buf[128];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof(buf), ",%u,%u,%.10f,%.10f\n", r.object_id,
                  r.frame_index, r.j, r.f);
    out += r.video;
    out += buf;
  }
  return out;
}

}  // namespace fusevos
