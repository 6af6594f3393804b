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

// Region similarity J, boundary F-measure F and their mean, plus
// per-sequence and per-dataset aggregation.
//
// Conventions:
//  * both masks (or boundaries) empty scores 1, exactly one empty scores 0;
//  * boundaries are 4-connected and the image border counts as background;
//  * a boundary pixel matches when a boundary pixel of the other mask lies
//    within Chebyshev distance `tol`;
//  * frame 0 of every sequence is the given annotation and is not scored;
//  * aggregation is frames -> per-object mean -> unweighted mean of objects,
//    summed in fixed index order.

#ifndef FUSEVOS_METRICS_HPP
#define FUSEVOS_METRICS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fusevos/core.hpp"
#include "fusevos/io.hpp"

namespace fusevos {

class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(std::uint32_t width, std::uint32_t height);
  BinaryMask(std::uint32_t width, std::uint32_t height,
             std::vector<std::uint8_t> bits);

  std::uint32_t width() const noexcept { return width_; }
  std::uint32_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return bits_.size(); }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  std::span<std::uint8_t> bits() noexcept { return bits_; }
  bool at(std::uint32_t x, std::uint32_t y) const {
    return bits_[static_cast<std::size_t>(y) * width_ + x] != 0;
  }
  void set(std::uint32_t x, std::uint32_t y, bool v = true) {
    bits_[static_cast<std::size_t>(y) * width_ + x] = v ? 1 : 0;
  }
  std::size_t count() const;
  bool empty() const { return count() == 0; }

  bool operator==(const BinaryMask&) const = default;

 private:
  std::uint32_t width_ = 0;
  std::uint32_t height_ = 0;
  std::vector<std::uint8_t> bits_;  // 0 or 1
};

BinaryMask binarize(const LabelMask& mask, ObjectId id);
BinaryMask flip_horizontal(const BinaryMask& mask);

/// |p & g| / |p | g|.
double jaccard(const BinaryMask& p, const BinaryMask& g);

/// Foreground pixels with a background 4-neighbour (or an image edge).
BinaryMask extract_boundary(const BinaryMask& mask);

/// Dilation by a (2r+1)^2 square structuring element.
BinaryMask dilate_square(const BinaryMask& mask, std::uint32_t radius);

/// Boundary matching counts. `tp` counts predicted boundary pixels matched to
/// the ground truth and feeds precision with `fp`; `tp_gt` counts ground-truth
/// boundary pixels matched by the prediction and feeds recall with `fn`.
struct BoundaryMatchCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tp_gt = 0;
  std::size_t fn = 0;

  double precision() const;
  double recall() const;
};

BoundaryMatchCounts boundary_match(const BinaryMask& p, const BinaryMask& g,
                                   std::uint32_t tol);

/// 2PR / (P + R) over boundary pixels matched within `tol`.
double boundary_f(const BinaryMask& p, const BinaryMask& g, std::uint32_t tol);

/// ceil(0.008 * image diagonal), the DAVIS convention.
std::uint32_t default_boundary_tolerance(std::uint32_t width,
                                         std::uint32_t height);

/// (j + f) / 2; throws kInvalidInput when either is outside [0,1].
double jf_mean(double j, double f);

/// Decimal round-half-up at presentation time, e.g. 0.85835 -> "0.8584".
/// Binary representation error below 1e-10 is absorbed first.
std::string format_half_up(double value, int decimals = 4);

struct EvalRecord {
  std::string video;
  ObjectId object_id = 0;
  std::uint32_t frame_index = 0;
  double j = 0.0;
  double f = 0.0;
};

struct ObjectScore {
  std::string video;
  ObjectId object_id = 0;
  std::size_t frames = 0;
  double j = 0.0;
  double f = 0.0;
  double jf = 0.0;
};

struct VideoScore {
  std::string video;
  double j = 0.0;
  double f = 0.0;
  double jf = 0.0;
};

struct EvalSummary {
  std::vector<ObjectScore> objects;
  std::vector<VideoScore> videos;
  double j = 0.0;
  double f = 0.0;
  double jf = 0.0;
  std::vector<std::string> warnings;
};

struct Evaluation {
  std::vector<EvalRecord> records;
  EvalSummary summary;

  std::string summary_json() const;
  std::string records_csv() const;
};

struct EvalOptions {
  /// Boundary tolerance in pixels; default_boundary_tolerance when unset.
  std::optional<std::uint32_t> tolerance;
  /// Worker threads over frames (0 = hardware concurrency).
  unsigned threads = 1;
};

/// Scores one video. Frames are frame_%05d.png in both directories; the
/// ground-truth directory defines the frame count.
Evaluation evaluate_sequence(const fs::path& pred_dir, const fs::path& gt_dir,
                             const ObjectSet& objects,
                             const EvalOptions& options = {},
                             const std::string& video = {});

/// Combines per-video evaluations: global J/F average every (video, object)
/// score with equal weight.
Evaluation combine_evaluations(std::span<const Evaluation> videos);

/// Object ids present in any ground-truth frame of `gt_dir`.
ObjectSet discover_objects(const fs::path& gt_dir);

/// Number of contiguous frame_%05d.png files starting at frame 0.
std::uint32_t count_mask_frames(const fs::path& dir);

/// Evaluates either a single video directory or a dataset root with one
/// subdirectory per video (same layout under pred_root). When `objects` is
/// unset, ids are discovered from each video's ground truth.
Evaluation evaluate_dataset(const fs::path& pred_root, const fs::path& gt_root,
                            const std::optional<ObjectSet>& objects,
                            const EvalOptions& options = {});

}  // namespace fusevos

#endif  // FUSEVOS_METRICS_HPP
