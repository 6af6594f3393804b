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

// Seeded synthetic multi-model benchmark. Ground truth is a set of moving
// ellipses; each simulated model derives its own label map from the ground
// truth through one error profile and renders it as soft confidences.

#ifndef FUSEVOS_BENCHMARK_HPP
#define FUSEVOS_BENCHMARK_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fusevos/core.hpp"
#include "fusevos/io.hpp"

namespace fusevos {

enum class ErrorProfile {
  kNearOracle,        // ground truth, soft confidences only
  kBoundaryDilating,  // every object grown by a few pixels
  kBoundaryEroding,   // every object shrunk by a few pixels
  kIdSwapping,        // object ids permuted on some frames
  kDropProne,         // objects vanish on some frames
};

const char* ToString(ErrorProfile profile);

struct SyntheticModel {
  std::string name;
  ErrorProfile profile;
};

/// The five-model zoo: SAM2Long, SAM2, Cutie, LiVOS, XMem, each assigned one
/// error profile.
std::vector<SyntheticModel> DefaultSyntheticZoo();

struct BenchmarkOptions {
  std::uint64_t seed = 1;
  std::uint32_t width = 64;
  std::uint32_t height = 64;
  std::uint32_t frames = 10;
  std::uint32_t objects = 2;
  std::vector<SyntheticModel> models = DefaultSyntheticZoo();

  std::uint32_t boundary_shift = 2;   // pixels grown/shrunk
  double swap_probability = 0.5;      // per frame
  double drop_probability = 0.3;      // per frame and object
  float confident_low = 0.65f;        // in-object confidence range
  float confident_high = 0.95f;
  float background_high = 0.10f;      // out-of-object confidence in [0, this]
};

struct SyntheticSequence {
  ObjectSet objects;
  std::vector<SyntheticModel> models;
  std::vector<LabelMask> ground_truth;                    // [frame]
  std::vector<std::vector<ConfidenceVolume>> predictions;  // [model][frame]
};

SyntheticSequence generate_benchmark(const BenchmarkOptions& options);

/// Writes <dir>/manifest.json, <dir>/models/<name>/frame_%05d.cgfv and
/// <dir>/gt/frame_%05d.png. Returns the manifest as written.
ZooManifest write_fixture(const SyntheticSequence& sequence, const fs::path& dir,
                          const std::string& sequence_name = "synthetic");

inline constexpr const char* kFixtureManifest = "manifest.json";
inline constexpr const char* kFixtureGroundTruth = "gt";

}  // namespace fusevos

#endif  // FUSEVOS_BENCHMARK_HPP
