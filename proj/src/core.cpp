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

#include "fusevos/core.hpp"

#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace fusevos {

const char* ToString(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput: return "invalid-input";
    case ErrorKind::kFormat: return "format-error";
    case ErrorKind::kIo: return "io-error";
    case ErrorKind::kMissingData: return "missing-data";
    case ErrorKind::kManifest: return "manifest-error";
  }
  return "unknown";
}

ObjectSet::ObjectSet(std::vector<ObjectId> ids) : ids_(std::move(ids)) {
  if (ids_.empty()) Fail(ErrorKind::kInvalidInput, "object set is empty");
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (ids_[i] == kBackground) {
      Fail(ErrorKind::kInvalidInput, "object id 0 is reserved for background");
    }
    if (i > 0 && ids_[i] <= ids_[i - 1]) {
      Fail(ErrorKind::kInvalidInput,
           "object ids must be strictly increasing (got " +
               std::to_string(ids_[i - 1]) + " then " +
               std::to_string(ids_[i]) + ")");
    }
  }
}

ObjectSet ObjectSet::FromUnordered(std::vector<ObjectId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ObjectSet(std::move(ids));
}

LabelMask::LabelMask(std::uint32_t width, std::uint32_t height)
    : width_(width),
      height_(height),
      labels_(static_cast<std::size_t>(width) * height, kBackground) {}

LabelMask::LabelMask(std::uint32_t width, std::uint32_t height,
                     std::vector<ObjectId> labels)
    : width_(width), height_(height), labels_(std::move(labels)) {
  if (labels_.size() != static_cast<std::size_t>(width) * height) {
    Fail(ErrorKind::kInvalidInput,
         "label count " + std::to_string(labels_.size()) +
             " does not match " + std::to_string(width) + "x" +
             std::to_string(height));
  }
}

const ConfidencePlane* ConfidenceVolume::find(ObjectId id) const {
  for (const auto& plane : planes) {
    if (plane.object_id == id) return &plane;
  }
  return nullptr;
}

const char* ToString(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kDimensionMismatch: return "dimension mismatch";
    case ViolationKind::kValueOutOfRange: return "value out of range";
    case ViolationKind::kNonFiniteValue: return "non-finite value";
    case ViolationKind::kUnknownObjectId: return "unknown object id";
    case ViolationKind::kDuplicateObjectId: return "duplicate object id";
    case ViolationKind::kMissingObjectId: return "missing object id";
    case ViolationKind::kInvalidField: return "invalid field";
    case ViolationKind::kDuplicateModelName: return "duplicate model name";
    case ViolationKind::kMissingDirectory: return "missing directory";
    case ViolationKind::kMissingFrame: return "missing frame";
    case ViolationKind::kUnreadableFile: return "unreadable file";
  }
  return "unknown";
}

bool ValidationResult::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

void ValidationResult::merge(ValidationResult other) {
  for (auto& v : other.violations) violations.push_back(std::move(v));
}

ValidationResult validate_volume(const ConfidenceVolume& volume,
                                 const ObjectSet& objects) {
  ValidationResult result;
  const std::size_t n = volume.pixel_count();
  std::set<ObjectId> seen;
  for (const auto& plane : volume.planes) {
    const std::string where = "plane " + std::to_string(plane.object_id);
    if (plane.values.size() != n) {
      result.add(ViolationKind::kDimensionMismatch,
                 "dimension mismatch: " + where + " has " +
                     std::to_string(plane.values.size()) + " values, expected " +
                     std::to_string(n));
    }
    if (!objects.contains(plane.object_id)) {
      result.add(ViolationKind::kUnknownObjectId,
                 "unknown object id " + std::to_string(plane.object_id));
    }
    if (!seen.insert(plane.object_id).second) {
      result.add(ViolationKind::kDuplicateObjectId,
                 "duplicate object id " + std::to_string(plane.object_id));
    }
    std::size_t non_finite = 0;
    std::size_t out_of_range = 0;
    for (float v : plane.values) {
      if (!std::isfinite(v)) {
        ++non_finite;
      } else if (v < 0.0f || v > 1.0f) {
        ++out_of_range;
      }
    }
    if (non_finite > 0) {
      result.add(ViolationKind::kNonFiniteValue,
                 "non-finite value: " + where + " has " +
                     std::to_string(non_finite) + " NaN/Inf entries");
    }
    if (out_of_range > 0) {
      result.add(ViolationKind::kValueOutOfRange,
                 "value out of range: " + where + " has " +
                     std::to_string(out_of_range) + " entries outside [0,1]");
    }
  }
  for (ObjectId id : objects.ids()) {
    if (!seen.count(id)) {
      result.add(ViolationKind::kMissingObjectId,
                 "missing object id " + std::to_string(id));
    }
  }
  return result;
}

ValidationResult validate_label_mask(const LabelMask& mask,
                                     const ObjectSet& objects) {
  ValidationResult result;
  std::set<ObjectId> unknown;
  for (ObjectId id : mask.labels()) {
    if (id != kBackground && !objects.contains(id)) unknown.insert(id);
  }
  for (ObjectId id : unknown) {
    result.add(ViolationKind::kUnknownObjectId,
               "unknown object id " + std::to_string(id));
  }
  return result;
}

const char* ToString(Strategy strategy) {
  switch (strategy) {
    case Strategy::kConfidenceGuided: return "confidence_guided";
    case Strategy::kAverage: return "average";
    case Strategy::kMax: return "max";
  }
  return "unknown";
}

std::optional<Strategy> ParseStrategy(std::string_view name) {
  if (name == "confidence" || name == "confidence_guided") {
    return Strategy::kConfidenceGuided;
  }
  if (name == "average") return Strategy::kAverage;
  if (name == "max") return Strategy::kMax;
  return std::nullopt;
}

double FusionConfig::DefaultTau(std::span<const double> weights) {
  return 0.5 * std::accumulate(weights.begin(), weights.end(), 0.0);
}

FusionConfig FusionConfig::WithDefaultTau(Strategy strategy,
                                          std::vector<double> weights) {
  FusionConfig cfg;
  cfg.strategy = strategy;
  cfg.tau = DefaultTau(weights);
  cfg.model_weights = std::move(weights);
  return cfg;
}

double FusionConfig::weight_sum() const {
  return std::accumulate(model_weights.begin(), model_weights.end(), 0.0);
}

void FusionConfig::validate() const {
  if (model_weights.empty()) {
    Fail(ErrorKind::kInvalidInput, "fusion config has no model weights");
  }
  bool any_positive = false;
  for (double w : model_weights) {
    if (!std::isfinite(w) || w < 0.0) {
      Fail(ErrorKind::kInvalidInput, "model weights must be finite and >= 0");
    }
    any_positive = any_positive || w > 0.0;
  }
  if (!any_positive) {
    Fail(ErrorKind::kInvalidInput, "at least one model weight must be > 0");
  }
  if (!std::isfinite(tau) || tau <= 0.0) {
    Fail(ErrorKind::kInvalidInput, "tau must be > 0");
  }
  if (strategy == Strategy::kConfidenceGuided && tau > weight_sum()) {
    std::ostringstream os;
    os << "tau " << tau << " exceeds the summed model weight " << weight_sum();
    Fail(ErrorKind::kInvalidInput, os.str());
  }
}

MemoryPreset memory_preset(std::uint32_t num_frames) {
  if (num_frames == 0) {
    Fail(ErrorKind::kInvalidInput, "num_frames must be >= 1");
  }
  return num_frames > kLongVideoFrameThreshold ? kLongVideoPreset
                                               : kShortVideoPreset;
}

ConfidenceVolume flip_horizontal(const ConfidenceVolume& volume) {
  ConfidenceVolume out = volume;
  for (auto& plane : out.planes) {
    if (plane.values.size() != out.pixel_count()) {
      Fail(ErrorKind::kInvalidInput, "plane size does not match volume size");
    }
    FlipRowsInPlace(std::span<float>(plane.values), out.width, out.height);
  }
  return out;
}

LabelMask flip_horizontal(const LabelMask& mask) {
  LabelMask out = mask;
  FlipRowsInPlace(out.labels(), out.width(), out.height());
  return out;
}

}  // namespace fusevos
