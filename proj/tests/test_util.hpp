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


#ifndef FUSEVOS_TESTS_TEST_UTIL_HPP
#define FUSEVOS_TESTS_TEST_UTIL_HPP

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "fusevos/core.hpp"
#include "fusevos/metrics.hpp"

namespace fusevos::testing {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    const auto tag = std::to_string(rd()) + std::to_string(rd());
    path_ = fs::temp_directory_path() / ("fusevos-test-" + tag);
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& child) const { return path_ / child; }

 private:
  fs::path path_;
};

inline ObjectSet FirstIds(std::uint32_t n) {
  std::vector<ObjectId> ids;
  for (std::uint32_t i = 1; i <= n; ++i) ids.push_back(i);
  return ObjectSet(std::move(ids));
}

// Quantized values collide often, which exercises the tie-break paths.
inline float RandomConfidence(std::mt19937_64& rng, bool quantized) {
  if (quantized) {
    return static_cast<float>(std::uniform_int_distribution<int>(0, 8)(rng)) / 8.0f;
  }
  return std::uniform_real_distribution<float>(0.0f, 1.0f)(rng);
}

inline ConfidenceVolume RandomVolume(std::mt19937_64& rng, const std::string& name,
                                     std::uint32_t width, std::uint32_t height,
                                     const ObjectSet& objects, bool quantized) {
  ConfidenceVolume v;
  v.model_name = name;
  v.width = width;
  v.height = height;
  for (ObjectId id : objects.ids()) {
    ConfidencePlane plane{id, {}};
    for (std::size_t i = 0; i < v.pixel_count(); ++i) {
      plane.values.push_back(RandomConfidence(rng, quantized));
    }
    v.planes.push_back(std::move(plane));
  }
  return v;
}

inline BinaryMask RandomBinary(std::mt19937_64& rng, std::uint32_t width,
                               std::uint32_t height) {
  const double density = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  std::bernoulli_distribution on(density);
  BinaryMask m(width, height);
  for (auto& b : m.bits()) b = on(rng) ? 1 : 0;
  return m;
}

// A filled axis-aligned rectangle [x0, x1) x [y0, y1).
inline BinaryMask Rect(std::uint32_t width, std::uint32_t height, std::uint32_t x0,
                       std::uint32_t y0, std::uint32_t x1, std::uint32_t y1) {
  BinaryMask m(width, height);
  for (std::uint32_t y = y0; y < y1; ++y) {
    for (std::uint32_t x = x0; x < x1; ++x) m.set(x, y);
  }
  return m;
}

inline LabelMask RandomLabels(std::mt19937_64& rng, std::uint32_t width,
                              std::uint32_t height, ObjectId max_id) {
  std::uniform_int_distribution<ObjectId> id(0, max_id);
  std::vector<ObjectId> labels(static_cast<std::size_t>(width) * height);
  for (auto& l : labels) l = id(rng);
  return LabelMask(width, height, std::move(labels));
}

struct FusionInstance {
  std::vector<ConfidenceVolume> volumes;
  std::vector<double> weights;
  double tau = 0.0;
  ObjectSet objects;
};

// Random fusion input. Quantized instances use dyadic weights, confidences
// and tau so every sum is exact and ties are frequent.
inline FusionInstance RandomFusionInstance(std::mt19937_64& rng, std::uint32_t width,
                                           std::uint32_t height, std::size_t min_models,
                                           std::size_t max_models,
                                           std::uint32_t max_objects, bool quantized) {
  FusionInstance inst;
  const std::size_t models = min_models + rng() % (max_models - min_models + 1);
  inst.objects = FirstIds(1 + static_cast<std::uint32_t>(rng() % max_objects));
  double total = 0.0;
  for (std::size_t m = 0; m < models; ++m) {
    double w;
    if (quantized) {
      w = 0.5 * static_cast<double>(rng() % 5);
    } else {
      w = rng() % 5 == 0 ? 0.0 : std::uniform_real_distribution<double>(0.01, 2.0)(rng);
    }
    inst.weights.push_back(w);
    total += w;
    inst.volumes.push_back(RandomVolume(rng, "model" + std::to_string(m), width,
                                        height, inst.objects, quantized));
  }
  if (total == 0.0) {
    inst.weights[rng() % models] = 1.0;
    total = 1.0;
  }
  if (quantized) {
    inst.tau = total * static_cast<double>(1 + rng() % 8) / 8.0;
  } else {
    inst.tau = total * std::uniform_real_distribution<double>(0.05, 1.0)(rng);
  }
  return inst;
}

}  // namespace fusevos::testing

#endif  // FUSEVOS_TESTS_TEST_UTIL_HPP
