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

#include "fusevos/fusion.hpp"

#include <algorithm>
#include <numeric>

namespace fusevos {
namespace {

// Volumes re-indexed as [model][object] plane pointers in ObjectSet order.
struct Inputs {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::size_t models = 0;
  std::size_t objects = 0;
  std::vector<const float*> planes;  // models * objects

  std::size_t pixels() const { return static_cast<std::size_t>(width) * height; }
  float at(std::size_t m, std::size_t o, std::size_t px) const {
    return planes[m * objects + o][px];
  }
};

Inputs Prepare(std::span<const ConfidenceVolume> volumes,
               std::size_t weight_count, const ObjectSet& objects) {
  if (volumes.empty()) Fail(ErrorKind::kInvalidInput, "no volumes to fuse");
  if (weight_count != volumes.size()) {
    Fail(ErrorKind::kInvalidInput,
         "weight/volume count mismatch: " + std::to_string(weight_count) +
             " weights for " + std::to_string(volumes.size()) + " volumes");
  }
  Inputs in;
  in.width = volumes.front().width;
  in.height = volumes.front().height;
  in.models = volumes.size();
  in.objects = objects.size();
  in.planes.reserve(in.models * in.objects);
  for (const auto& volume : volumes) {
    if (volume.width != in.width || volume.height != in.height) {
      Fail(ErrorKind::kInvalidInput,
           "dimension mismatch among volumes: " + std::to_string(volume.width) +
               "x" + std::to_string(volume.height) + " vs " +
               std::to_string(in.width) + "x" + std::to_string(in.height));
    }
    auto check = validate_volume(volume, objects);
    if (!check.ok()) {
      Fail(ErrorKind::kInvalidInput, "model \"" + volume.model_name +
                                         "\": " + check.violations[0].message);
    }
    for (ObjectId id : objects.ids()) in.planes.push_back(volume.find(id)->values.data());
  }
  return in;
}

// Sum over the sorted multiset of terms: independent of insertion order.
class OrderFreeSum {
 public:
  void clear() { terms_.clear(); }
  void add(double v) { terms_.push_back(v); }
  double total() {
    std::sort(terms_.begin(), terms_.end());
    double s = 0.0;
    for (double t : terms_) s += t;
    return s;
  }

 private:
  std::vector<double> terms_;
};

struct Scratch {
  OrderFreeSum sum;
  std::vector<double> fg;       // per model f_m
  std::vector<std::size_t> arg;  // per model argmax object index
  std::vector<double> votes;     // per object
  std::vector<double> aggregate;  // per object
};

// Returns index of the winning object, or objects (== none) for background.
std::size_t DecideConfidenceGuided(const Inputs& in,
                                   std::span<const double> weights, double tau,
                                   std::size_t px, Scratch& s,
                                   bool always_aggregate) {
  s.fg.assign(in.models, 0.0);
  s.arg.assign(in.models, 0);
  s.sum.clear();
  for (std::size_t m = 0; m < in.models; ++m) {
    double best = in.at(m, 0, px);
    std::size_t arg = 0;
    for (std::size_t o = 1; o < in.objects; ++o) {
      const double c = in.at(m, o, px);
      if (c > best) {
        best = c;
        arg = o;
      }
    }
    s.fg[m] = best;
    s.arg[m] = arg;
    s.sum.add(weights[m] * best);
  }
  const bool foreground = s.sum.total() > tau;

  if (foreground || always_aggregate) {
    s.aggregate.assign(in.objects, 0.0);
    for (std::size_t o = 0; o < in.objects; ++o) {
      s.sum.clear();
      for (std::size_t m = 0; m < in.models; ++m) {
        s.sum.add(weights[m] * static_cast<double>(in.at(m, o, px)));
      }
      s.aggregate[o] = s.sum.total();
    }
  }
  if (!foreground) return in.objects;

  bool any_voter = false;
  s.votes.assign(in.objects, 0.0);
  for (std::size_t o = 0; o < in.objects; ++o) {
    s.sum.clear();
    for (std::size_t m = 0; m < in.models; ++m) {
      if (s.fg[m] >= kForegroundProbability && s.arg[m] == o) {
        any_voter = true;
        s.sum.add(weights[m]);
      }
    }
    s.votes[o] = s.sum.total();
  }

  std::size_t winner = 0;
  for (std::size_t o = 1; o < in.objects; ++o) {
    if (any_voter) {
      if (s.votes[o] > s.votes[winner] ||
          (s.votes[o] == s.votes[winner] && s.aggregate[o] > s.aggregate[winner])) {
        winner = o;
      }
    } else if (s.aggregate[o] > s.aggregate[winner]) {
      winner = o;
    }
  }
  return winner;
}

// Argmax over per-object scores with lowest-id ties; background unless the
// best score exceeds 0.5.
ObjectId ThresholdedArgmax(std::span<const double> scores,
                           const ObjectSet& objects) {
  std::size_t best = 0;
  for (std::size_t o = 1; o < scores.size(); ++o) {
    if (scores[o] > scores[best]) best = o;
  }
  return scores[best] > kForegroundProbability ? objects.ids()[best]
                                                : kBackground;
}

}  // namespace

PixelDecision decide_pixel(std::span<const ConfidenceVolume> volumes,
                           const FusionConfig& cfg, const ObjectSet& objects,
                           std::size_t pixel) {
  cfg.validate();
  const Inputs in = Prepare(volumes, cfg.model_weights.size(), objects);
  if (pixel >= in.pixels()) Fail(ErrorKind::kInvalidInput, "pixel out of range");
  Scratch scratch;
  const std::size_t w = DecideConfidenceGuided(in, cfg.model_weights, cfg.tau,
                                               pixel, scratch, true);
  PixelDecision d;
  d.foreground = w < in.objects;
  if (d.foreground) d.winner = objects.ids()[w];
  d.aggregate = scratch.aggregate;
  return d;
}

LabelMask fuse_confidence_guided(std::span<const ConfidenceVolume> volumes,
                                 const FusionConfig& cfg,
                                 const ObjectSet& objects) {
  cfg.validate();
  const Inputs in = Prepare(volumes, cfg.model_weights.size(), objects);
  LabelMask out(in.width, in.height);
  auto labels = out.labels();
  Scratch scratch;
  for (std::size_t px = 0; px < in.pixels(); ++px) {
    const std::size_t w = DecideConfidenceGuided(in, cfg.model_weights, cfg.tau,
                                                 px, scratch, false);
    labels[px] = w < in.objects ? objects.ids()[w] : kBackground;
  }
  return out;
}

LabelMask fuse_average(std::span<const ConfidenceVolume> volumes,
                       std::span<const double> weights,
                       const ObjectSet& objects) {
  FusionConfig probe = FusionConfig::WithDefaultTau(
      Strategy::kAverage, std::vector<double>(weights.begin(), weights.end()));
  probe.validate();
  const Inputs in = Prepare(volumes, weights.size(), objects);

  OrderFreeSum sum;
  for (double w : weights) sum.add(w);
  const double total_weight = sum.total();

  LabelMask out(in.width, in.height);
  auto labels = out.labels();
  std::vector<double> scores(in.objects);
  for (std::size_t px = 0; px < in.pixels(); ++px) {
    for (std::size_t o = 0; o < in.objects; ++o) {
      sum.clear();
      for (std::size_t m = 0; m < in.models; ++m) {
        sum.add(weights[m] * static_cast<double>(in.at(m, o, px)));
      }
      scores[o] = sum.total() / total_weight;
    }
    labels[px] = ThresholdedArgmax(scores, objects);
  }
  return out;
}

LabelMask fuse_max(std::span<const ConfidenceVolume> volumes,
                   std::span<const double> weights, const ObjectSet& objects) {
  FusionConfig probe = FusionConfig::WithDefaultTau(
      Strategy::kMax, std::vector<double>(weights.begin(), weights.end()));
  probe.validate();
  const Inputs in = Prepare(volumes, weights.size(), objects);

  LabelMask out(in.width, in.height);
  auto labels = out.labels();
  std::vector<double> scores(in.objects);
  for (std::size_t px = 0; px < in.pixels(); ++px) {
    for (std::size_t o = 0; o < in.objects; ++o) {
      double best = 0.0;
      for (std::size_t m = 0; m < in.models; ++m) {
        if (weights[m] > 0.0) best = std::max(best, static_cast<double>(in.at(m, o, px)));
      }
      scores[o] = best;
    }
    labels[px] = ThresholdedArgmax(scores, objects);
  }
  return out;
}

LabelMask fuse(std::span<const ConfidenceVolume> volumes,
               const FusionConfig& cfg, const ObjectSet& objects) {
  switch (cfg.strategy) {
    case Strategy::kConfidenceGuided:
      return fuse_confidence_guided(volumes, cfg, objects);
    case Strategy::kAverage:
      return fuse_average(volumes, cfg.model_weights, objects);
    case Strategy::kMax:
      return fuse_max(volumes, cfg.model_weights, objects);
  }
  Fail(ErrorKind::kInvalidInput, "unknown fusion strategy");
}

LabelMask thresholded_argmax(const ConfidenceVolume& volume,
                             const ObjectSet& objects) {
  const Inputs in = Prepare(std::span(&volume, 1), 1, objects);
  LabelMask out(in.width, in.height);
  auto labels = out.labels();
  std::vector<double> scores(in.objects);
  for (std::size_t px = 0; px < in.pixels(); ++px) {
    for (std::size_t o = 0; o < in.objects; ++o) scores[o] = in.at(0, o, px);
    labels[px] = ThresholdedArgmax(scores, objects);
  }
  return out;
}

ConfidenceVolume tta_merge(const ConfidenceVolume& original,
                           const ConfidenceVolume& flipped_prediction) {
  if (original.width != flipped_prediction.width ||
      original.height != flipped_prediction.height) {
    Fail(ErrorKind::kInvalidInput, "tta_merge: dimension mismatch");
  }
  if (original.planes.size() != flipped_prediction.planes.size()) {
    Fail(ErrorKind::kInvalidInput, "tta_merge: object set mismatch");
  }
  const ConfidenceVolume unflipped = flip_horizontal(flipped_prediction);
  ConfidenceVolume out = original;
  for (auto& plane : out.planes) {
    const ConfidencePlane* other = unflipped.find(plane.object_id);
    if (other == nullptr) {
      Fail(ErrorKind::kInvalidInput,
           "tta_merge: object " + std::to_string(plane.object_id) +
               " missing from flipped prediction");
    }
    if (plane.values.size() != out.pixel_count() ||
        other->values.size() != out.pixel_count()) {
      Fail(ErrorKind::kInvalidInput, "tta_merge: plane size mismatch");
    }
    for (std::size_t i = 0; i < plane.values.size(); ++i) {
      // Exact in double; a single rounding back to float.
      plane.values[i] = static_cast<float>(
          (static_cast<double>(plane.values[i]) + other->values[i]) * 0.5);
    }
  }
  return out;
}

std::size_t count_contested_pixels(std::span<const ConfidenceVolume> volumes,
                                   const ObjectSet& objects) {
  std::vector<LabelMask> labels;
  labels.reserve(volumes.size());
  for (const auto& v : volumes) labels.push_back(thresholded_argmax(v, objects));
  if (labels.empty()) return 0;
  for (const auto& l : labels) {
    if (l.width() != labels[0].width() || l.height() != labels[0].height()) {
      Fail(ErrorKind::kInvalidInput, "dimension mismatch among volumes");
    }
  }
  std::size_t contested = 0;
  for (std::size_t px = 0; px < labels[0].size(); ++px) {
    const ObjectId first = labels[0].labels()[px];
    for (std::size_t m = 1; m < labels.size(); ++m) {
      if (labels[m].labels()[px] != first) {
        ++contested;
        break;
      }
    }
  }
  return contested;
}

}  // namespace fusevos
