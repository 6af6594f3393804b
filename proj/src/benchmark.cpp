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

#include "fusevos/benchmark.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace fusevos {
namespace {

std::uint64_t Mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t x = a * 0x9E3779B97F4A7C15ull + b + 0x632BE59BD9B4E019ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

struct Ellipse {
  double cx, cy, rx, ry, vx, vy;
};

std::vector<Ellipse> MakeTracks(const BenchmarkOptions& opt, std::mt19937_64& rng) {
  const double w = opt.width;
  const double h = opt.height;
  const double r_min = std::min(w, h) * 0.11;
  const double r_max = std::min(w, h) * 0.19;
  std::uniform_real_distribution<double> radius(r_min, r_max);
  std::uniform_real_distribution<double> cx(w * 0.25, w * 0.75);
  std::uniform_real_distribution<double> cy(h * 0.25, h * 0.75);
  std::uniform_real_distribution<double> speed(-1.5, 1.5);
  std::vector<Ellipse> tracks;
  for (std::uint32_t k = 0; k < opt.objects; ++k) {
    tracks.push_back({cx(rng), cy(rng), radius(rng), radius(rng), speed(rng), speed(rng)});
  }
  return tracks;
}

LabelMask RenderFrame(const BenchmarkOptions& opt, const std::vector<Ellipse>& tracks,
                      std::uint32_t frame) {
  LabelMask mask(opt.width, opt.height);
  auto labels = mask.labels();
  for (std::size_t k = 0; k < tracks.size(); ++k) {
    const Ellipse& e = tracks[k];
    const double margin = std::max(e.rx, e.ry);
    const double cx = std::clamp(e.cx + e.vx * frame, margin, opt.width - margin);
    const double cy = std::clamp(e.cy + e.vy * frame, margin, opt.height - margin);
    for (std::uint32_t y = 0; y < opt.height; ++y) {
      for (std::uint32_t x = 0; x < opt.width; ++x) {
        const double dx = (x + 0.5 - cx) / e.rx;
        const double dy = (y + 0.5 - cy) / e.ry;
        if (dx * dx + dy * dy <= 1.0) {
          labels[static_cast<std::size_t>(y) * opt.width + x] =
              static_cast<ObjectId>(k + 1);
        }
      }
    }
  }
  return mask;
}

bool AnyWithin(const LabelMask& m, std::uint32_t x, std::uint32_t y,
               std::uint32_t r, ObjectId id) {
  const std::int64_t x0 = std::max<std::int64_t>(0, std::int64_t{x} - r);
  const std::int64_t x1 = std::min<std::int64_t>(m.width() - 1, std::int64_t{x} + r);
  const std::int64_t y0 = std::max<std::int64_t>(0, std::int64_t{y} - r);
  const std::int64_t y1 = std::min<std::int64_t>(m.height() - 1, std::int64_t{y} + r);
  for (std::int64_t yy = y0; yy <= y1; ++yy) {
    for (std::int64_t xx = x0; xx <= x1; ++xx) {
      if (m.at(static_cast<std::uint32_t>(xx), static_cast<std::uint32_t>(yy)) == id) {
        return true;
      }
    }
  }
  return false;
}

// True when the whole (2r+1)^2 window lies inside the image and carries `id`.
bool AllWithin(const LabelMask& m, std::uint32_t x, std::uint32_t y,
               std::uint32_t r, ObjectId id) {
  if (x < r || y < r || x + r >= m.width() || y + r >= m.height()) return false;
  for (std::uint32_t yy = y - r; yy <= y + r; ++yy) {
    for (std::uint32_t xx = x - r; xx <= x + r; ++xx) {
      if (m.at(xx, yy) != id) return false;
    }
  }
  return true;
}

LabelMask Dilate(const LabelMask& gt, const ObjectSet& objects, std::uint32_t r) {
  LabelMask out = gt;
  for (std::uint32_t y = 0; y < gt.height(); ++y) {
    for (std::uint32_t x = 0; x < gt.width(); ++x) {
      if (gt.at(x, y) != kBackground) continue;
      for (ObjectId id : objects.ids()) {
        if (AnyWithin(gt, x, y, r, id)) {
          out.labels()[static_cast<std::size_t>(y) * gt.width() + x] = id;
          break;
        }
      }
    }
  }
  return out;
}

LabelMask Erode(const LabelMask& gt, std::uint32_t r) {
  LabelMask out = gt;
  for (std::uint32_t y = 0; y < gt.height(); ++y) {
    for (std::uint32_t x = 0; x < gt.width(); ++x) {
      const ObjectId id = gt.at(x, y);
      if (id != kBackground && !AllWithin(gt, x, y, r, id)) {
        out.labels()[static_cast<std::size_t>(y) * gt.width() + x] = kBackground;
      }
    }
  }
  return out;
}

LabelMask ApplyProfile(const BenchmarkOptions& opt, const ObjectSet& objects,
                       const LabelMask& gt, ErrorProfile profile,
                       std::mt19937_64& rng) {
  switch (profile) {
    case ErrorProfile::kNearOracle:
      return gt;
    case ErrorProfile::kBoundaryDilating:
      return Dilate(gt, objects, opt.boundary_shift);
    case ErrorProfile::kBoundaryEroding:
      return Erode(gt, opt.boundary_shift);
    case ErrorProfile::kIdSwapping: {
      if (!std::bernoulli_distribution(opt.swap_probability)(rng)) return gt;
      LabelMask out = gt;
      const auto& ids = objects.ids();
      for (auto& label : out.labels()) {
        if (label == kBackground) continue;
        const auto it = std::lower_bound(ids.begin(), ids.end(), label);
        const std::size_t next = (static_cast<std::size_t>(it - ids.begin()) + 1) % ids.size();
        label = ids[next];
      }
      return out;
    }
    case ErrorProfile::kDropProne: {
      LabelMask out = gt;
      std::bernoulli_distribution drop(opt.drop_probability);
      for (ObjectId id : objects.ids()) {
        if (!drop(rng)) continue;
        for (auto& label : out.labels()) {
          if (label == id) label = kBackground;
        }
      }
      return out;
    }
  }
  return gt;
}

ConfidenceVolume Render(const BenchmarkOptions& opt, const ObjectSet& objects,
                        const LabelMask& labels, const std::string& name,
                        std::mt19937_64& rng) {
  std::uniform_real_distribution<float> confident(opt.confident_low, opt.confident_high);
  std::uniform_real_distribution<float> background(0.0f, opt.background_high);
  ConfidenceVolume v;
  v.model_name = name;
  v.width = opt.width;
  v.height = opt.height;
  for (ObjectId id : objects.ids()) {
    ConfidencePlane plane;
    plane.object_id = id;
    plane.values.reserve(labels.size());
    for (ObjectId label : labels.labels()) {
      plane.values.push_back(label == id ? confident(rng) : background(rng));
    }
    v.planes.push_back(std::move(plane));
  }
  return v;
}

}  // namespace

const char* ToString(ErrorProfile profile) {
  switch (profile) {
    case ErrorProfile::kNearOracle: return "near_oracle";
    case ErrorProfile::kBoundaryDilating: return "boundary_dilating";
    case ErrorProfile::kBoundaryEroding: return "boundary_eroding";
    case ErrorProfile::kIdSwapping: return "id_swapping";
    case ErrorProfile::kDropProne: return "drop_prone";
  }
  return "unknown";
}

std::vector<SyntheticModel> DefaultSyntheticZoo() {
  return {{"SAM2Long", ErrorProfile::kNearOracle},
          {"SAM2", ErrorProfile::kBoundaryDilating},
          {"Cutie", ErrorProfile::kBoundaryEroding},
          {"LiVOS", ErrorProfile::kIdSwapping},
          {"XMem", ErrorProfile::kDropProne}};
}

SyntheticSequence generate_benchmark(const BenchmarkOptions& options) {
  if (options.width == 0 || options.height == 0 || options.frames == 0 ||
      options.objects == 0 || options.models.empty()) {
    Fail(ErrorKind::kInvalidInput, "benchmark dimensions must be positive");
  }
  if (options.objects > 255) {
    Fail(ErrorKind::kInvalidInput, "at most 255 objects fit an indexed mask");
  }
  SyntheticSequence seq;
  std::vector<ObjectId> ids;
  for (std::uint32_t k = 1; k <= options.objects; ++k) ids.push_back(k);
  seq.objects = ObjectSet(std::move(ids));
  seq.models = options.models;

  std::mt19937_64 track_rng(Mix(options.seed, 0));
  const auto tracks = MakeTracks(options, track_rng);
  for (std::uint32_t f = 0; f < options.frames; ++f) {
    seq.ground_truth.push_back(RenderFrame(options, tracks, f));
  }

  seq.predictions.resize(options.models.size());
  for (std::size_t m = 0; m < options.models.size(); ++m) {
    const SyntheticModel& model = options.models[m];
    for (std::uint32_t f = 0; f < options.frames; ++f) {
      std::mt19937_64 rng(Mix(Mix(options.seed, m + 1), f));
      const LabelMask labels =
          ApplyProfile(options, seq.objects, seq.ground_truth[f], model.profile, rng);
      seq.predictions[m].push_back(Render(options, seq.objects, labels, model.name, rng));
    }
  }
  return seq;
}

ZooManifest write_fixture(const SyntheticSequence& sequence, const fs::path& dir,
                          const std::string& sequence_name) {
  ZooManifest manifest;
  manifest.sequence_name = sequence_name;
  manifest.num_frames = static_cast<std::uint32_t>(sequence.ground_truth.size());
  manifest.objects = sequence.objects;
  for (std::size_t m = 0; m < sequence.models.size(); ++m) {
    ModelEntry entry;
    entry.name = sequence.models[m].name;
    entry.weight = 1.0;
    entry.prediction_dir = dir / "models" / entry.name;
    entry.hyperparameters["error_profile"] = std::string(ToString(sequence.models[m].profile));
    const MemoryPreset preset = memory_preset(manifest.num_frames);
    entry.hyperparameters["max_mem_frames"] = std::int64_t{preset.max_mem_frames};
    entry.hyperparameters["min_mem_frames"] = std::int64_t{preset.min_mem_frames};
    entry.hyperparameters["topk"] = std::int64_t{preset.topk};
    for (std::uint32_t f = 0; f < manifest.num_frames; ++f) {
      write_confidence_volume(sequence.predictions[m][f],
                              entry.prediction_dir / VolumeFileName(f));
    }
    manifest.models.push_back(std::move(entry));
  }
  for (std::uint32_t f = 0; f < manifest.num_frames; ++f) {
    write_label_mask(sequence.ground_truth[f],
                     dir / kFixtureGroundTruth / MaskFileName(f));
  }
  AtomicWriteFile(dir / kFixtureManifest, ManifestToJson(manifest, dir));
  return manifest;
}

}  // namespace fusevos
