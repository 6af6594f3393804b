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

#include <set>

#include "fusevos/fusion.hpp"
#include "json.hpp"
#include "parallel.hpp"

namespace fusevos {

std::string FusionReport::to_json() const {
  nlohmann::json doc;
  doc["sequence_name"] = sequence_name;
  doc["strategy"] = ToString(strategy);
  doc["tau"] = tau;
  doc["models"] = model_names;
  doc["weights"] = weights;
  nlohmann::json per_frame = nlohmann::json::array();
  for (const auto& f : frames) {
    per_frame.push_back({{"frame", f.frame}, {"contested_pixels", f.contested_pixels}});
  }
  doc["frames"] = std::move(per_frame);
  return doc.dump(2) + "\n";
}

std::vector<ConfidenceVolume> load_frame_volumes(const ZooManifest& manifest,
                                                 std::uint32_t frame) {
  std::vector<ConfidenceVolume> volumes;
  volumes.reserve(manifest.models.size());
  for (const auto& model : manifest.models) {
    auto volume = read_confidence_volume(
        model.prediction_dir / VolumeFileName(frame), model.name);
    if (model.tta_flipped_dir) {
      auto flipped = read_confidence_volume(
          *model.tta_flipped_dir / VolumeFileName(frame), model.name);
      volume = tta_merge(volume, flipped);
    }
    volumes.push_back(std::move(volume));
  }
  return volumes;
}

FusionReport fuse_sequence(const ZooManifest& manifest, const FusionConfig& cfg,
                           const fs::path& out_dir, unsigned threads) {
  if (manifest.models.empty()) Fail(ErrorKind::kManifest, "manifest lists no models");
  if (manifest.num_frames == 0) Fail(ErrorKind::kManifest, "num_frames must be >= 1");
  std::set<std::string> names;
  for (const auto& m : manifest.models) {
    if (!names.insert(m.name).second) {
      Fail(ErrorKind::kManifest, "duplicate model name \"" + m.name + "\"");
    }
  }
  if (cfg.model_weights.size() != manifest.models.size()) {
    Fail(ErrorKind::kInvalidInput,
         "weight/volume count mismatch: " +
             std::to_string(cfg.model_weights.size()) + " weights for " +
             std::to_string(manifest.models.size()) + " models");
  }
  cfg.validate();

  FusionReport report;
  report.sequence_name = manifest.sequence_name;
  report.strategy = cfg.strategy;
  report.tau = cfg.tau;
  report.weights = cfg.model_weights;
  for (const auto& m : manifest.models) report.model_names.push_back(m.name);
  report.frames.resize(manifest.num_frames);

  internal::ParallelFor(manifest.num_frames, threads, [&](std::size_t i) {
    const auto frame = static_cast<std::uint32_t>(i);
    try {
      const auto volumes = load_frame_volumes(manifest, frame);
      const LabelMask fused = fuse(volumes, cfg, manifest.objects);
      write_label_mask(fused, out_dir / MaskFileName(frame));
      report.frames[i] = {frame, count_contested_pixels(volumes, manifest.objects)};
    } catch (const Error& e) {
      Fail(e.kind(), "frame " + std::to_string(frame) + ": " + e.what());
    }
  });

  AtomicWriteFile(out_dir / kFusionReportFile, report.to_json());
  return report;
}

}  // namespace fusevos
