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

// Multi-model mask fusion.
//
// Confidence-guided fusion decides every pixel in two stages:
//
//   1. Pixel check. Model m's foreground confidence is the max over objects of
//      its per-object confidence, f_m(x). The pixel is foreground iff
//      sum_m w_m * f_m(x) > tau.
//   2. Voting. Each model with f_m(x) >= 0.5 casts a vote of weight w_m for its
//      own argmax object. Most weighted votes wins; ties go to the larger
//      sum_m w_m * c_{m,o}(x), then to the lower object id. When every model
//      abstains the object with the largest weighted confidence sum wins.
//
// Every weighted sum is formed over the sorted multiset of its terms, so the
// output does not depend on the order in which models are supplied.

#ifndef FUSEVOS_FUSION_HPP
#define FUSEVOS_FUSION_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fusevos/core.hpp"
#include "fusevos/io.hpp"

namespace fusevos {

/// Per-object confidences below or at this value are treated as background
/// by the thresholded-argmax rules, and models below it abstain from voting.
inline constexpr double kForegroundProbability = 0.5;

struct PixelDecision {
  bool foreground = false;
  std::optional<ObjectId> winner;
  /// sum_m w_m * c_{m,o}(x), one entry per object in ObjectSet order.
  std::vector<double> aggregate;
};

/// Full confidence-guided decision for one pixel (row-major index).
PixelDecision decide_pixel(std::span<const ConfidenceVolume> volumes,
                           const FusionConfig& cfg, const ObjectSet& objects,
                           std::size_t pixel);

LabelMask fuse_confidence_guided(std::span<const ConfidenceVolume> volumes,
                                 const FusionConfig& cfg,
                                 const ObjectSet& objects);

/// Weighted per-object mean, then argmax if it exceeds 0.5.
LabelMask fuse_average(std::span<const ConfidenceVolume> volumes,
                       std::span<const double> weights,
                       const ObjectSet& objects);

/// Per-object max over models with nonzero weight, then argmax if > 0.5.
/// Weight magnitudes are ignored.
LabelMask fuse_max(std::span<const ConfidenceVolume> volumes,
                   std::span<const double> weights, const ObjectSet& objects);

/// Dispatches on cfg.strategy.
LabelMask fuse(std::span<const ConfidenceVolume> volumes,
               const FusionConfig& cfg, const ObjectSet& objects);

/// One model's own hard prediction: argmax object where its confidence
/// exceeds 0.5, else background.
LabelMask thresholded_argmax(const ConfidenceVolume& volume,
                             const ObjectSet& objects);

/// Mean of `original` and the un-mirrored `flipped_prediction`.
ConfidenceVolume tta_merge(const ConfidenceVolume& original,
                           const ConfidenceVolume& flipped_prediction);

/// Pixels where at least two models' thresholded-argmax labels differ.
std::size_t count_contested_pixels(std::span<const ConfidenceVolume> volumes,
                                   const ObjectSet& objects);

struct FrameFusionStats {
  std::uint32_t frame = 0;
  std::size_t contested_pixels = 0;
};

struct FusionReport {
  std::string sequence_name;
  Strategy strategy = Strategy::kConfidenceGuided;
  double tau = 0.0;
  std::vector<std::string> model_names;
  std::vector<double> weights;
  std::vector<FrameFusionStats> frames;

  std::string to_json() const;
};

inline constexpr const char* kFusionReportFile = "fusion_report.json";

/// Loads one frame of every model in the manifest, applying TTA merging for
/// models that list a flipped-prediction directory.
std::vector<ConfidenceVolume> load_frame_volumes(const ZooManifest& manifest,
                                                 std::uint32_t frame);

/// Fuses every frame of the manifest into out_dir/frame_%05d.png and writes
/// out_dir/fusion_report.json. Frames are processed on `threads` workers
/// (0 = hardware concurrency); output is identical for any thread count.
FusionReport fuse_sequence(const ZooManifest& manifest, const FusionConfig& cfg,
                           const fs::path& out_dir, unsigned threads = 1);

}  // namespace fusevos

#endif  // FUSEVOS_FUSION_HPP
