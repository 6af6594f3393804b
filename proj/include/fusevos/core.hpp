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

// Domain types shared by every fusevos module: label rasters, per-object
// confidence planes, fusion configuration and the memory presets recorded in
// model-zoo manifests. All types are plain values; operations are pure.

#ifndef FUSEVOS_CORE_HPP
#define FUSEVOS_CORE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fusevos/error.hpp"

namespace fusevos {

using ObjectId = std::uint32_t;

inline constexpr ObjectId kBackground = 0;

/// Ordered, duplicate-free, nonempty list of positive object ids.
class ObjectSet {
 public:
  ObjectSet() = default;
  /// Throws kInvalidInput unless ids are strictly increasing and positive.
  explicit ObjectSet(std::vector<ObjectId> ids);

  /// Sorts and deduplicates; still rejects zero and empty input.
  static ObjectSet FromUnordered(std::vector<ObjectId> ids);

  const std::vector<ObjectId>& ids() const noexcept { return ids_; }
  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }
  bool contains(ObjectId id) const {
    return std::binary_search(ids_.begin(), ids_.end(), id);
  }
  bool operator==(const ObjectSet&) const = default;

 private:
  std::vector<ObjectId> ids_;
};

/// H x W object-id raster, row-major, 0 = background.
class LabelMask {
 public:
  LabelMask() = default;
  LabelMask(std::uint32_t width, std::uint32_t height);
  LabelMask(std::uint32_t width, std::uint32_t height,
            std::vector<ObjectId> labels);

  std::uint32_t width() const noexcept { return width_; }
  std::uint32_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return labels_.size(); }
  std::span<const ObjectId> labels() const noexcept { return labels_; }
  std::span<ObjectId> labels() noexcept { return labels_; }
  ObjectId at(std::uint32_t x, std::uint32_t y) const {
    return labels_[static_cast<std::size_t>(y) * width_ + x];
  }

  bool operator==(const LabelMask&) const = default;

 private:
  std::uint32_t width_ = 0;
  std::uint32_t height_ = 0;
  std::vector<ObjectId> labels_;
};

struct ConfidencePlane {
  ObjectId object_id = 0;
  std::vector<float> values;  // row-major, width * height entries in [0,1]

  bool operator==(const ConfidencePlane&) const = default;
};

/// One model's per-object confidence planes for one frame. Background is
/// implicit and never stored.
struct ConfidenceVolume {
  std::string model_name;
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<ConfidencePlane> planes;

  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(width) * height;
  }
  const ConfidencePlane* find(ObjectId id) const;

  bool operator==(const ConfidenceVolume&) const = default;
};

enum class ViolationKind {
  kDimensionMismatch,
  kValueOutOfRange,
  kNonFiniteValue,
  kUnknownObjectId,
  kDuplicateObjectId,
  kMissingObjectId,
  kInvalidField,
  kDuplicateModelName,
  kMissingDirectory,
  kMissingFrame,
  kUnreadableFile,
};

const char* ToString(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string message;
};

struct ValidationResult {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  bool has(ViolationKind kind) const;
  void add(ViolationKind kind, std::string message) {
    violations.push_back({kind, std::move(message)});
  }
  void merge(ValidationResult other);
};

/// Checks every ConfidenceVolume invariant against the sequence's objects.
/// Reports at most one violation of each kind per plane.
ValidationResult validate_volume(const ConfidenceVolume& volume,
                                 const ObjectSet& objects);

/// Checks that a mask only carries ids from `objects` (or background).
ValidationResult validate_label_mask(const LabelMask& mask,
                                     const ObjectSet& objects);

enum class Strategy { kConfidenceGuided, kAverage, kMax };
enum class TieBreak { kSumConfidenceThenLowestId };

const char* ToString(Strategy strategy);
/// Accepts "confidence", "confidence_guided", "average", "max".
std::optional<Strategy> ParseStrategy(std::string_view name);

struct FusionConfig {
  Strategy strategy = Strategy::kConfidenceGuided;
  /// Threshold on summed weighted foreground confidence, in (0, sum(w)].
  double tau = 0.0;
  std::vector<double> model_weights;
  TieBreak tie_break = TieBreak::kSumConfidenceThenLowestId;

  /// tau = 0.5 * sum(weights), a weighted majority of probability mass.
  static double DefaultTau(std::span<const double> weights);
  static FusionConfig WithDefaultTau(Strategy strategy,
                                     std::vector<double> weights);

  double weight_sum() const;
  /// Throws kInvalidInput when an invariant fails.
  void validate() const;
};

struct MemoryPreset {
  std::uint32_t max_mem_frames = 0;
  std::uint32_t min_mem_frames = 0;
  std::uint32_t topk = 0;

  bool operator==(const MemoryPreset&) const = default;
};

/// Sequences strictly longer than this use the long-video preset; a
/// sequence of exactly this length gets the short preset.
inline constexpr std::uint32_t kLongVideoFrameThreshold = 200;
inline constexpr MemoryPreset kLongVideoPreset{45, 40, 50};
inline constexpr MemoryPreset kShortVideoPreset{15, 14, 40};

MemoryPreset memory_preset(std::uint32_t num_frames);

/// Reverses every row of every plane. flip_horizontal is an involution.
ConfidenceVolume flip_horizontal(const ConfidenceVolume& volume);
LabelMask flip_horizontal(const LabelMask& mask);

template <typename T>
void FlipRowsInPlace(std::span<T> data, std::uint32_t width,
                     std::uint32_t height) {
  for (std::uint32_t y = 0; y < height; ++y) {
    auto row = data.begin() + static_cast<std::ptrdiff_t>(y) * width;
    std::reverse(row, row + width);
  }
}

}  // namespace fusevos

#endif  // FUSEVOS_CORE_HPP
