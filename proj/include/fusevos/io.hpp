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

// Readers and writers for indexed-PNG label masks, CGFV confidence volumes and
// the JSON model-zoo manifest.
//
// CGFV layout (all integers little-endian):
//
//   offset  size  field
//   0       4     magic "CGFV"
//   4       2     u16 version (= 1)
//   6       4     u32 height
//   10      4     u32 width
//   14      2     u16 num_planes
//   16      ...   per plane: u32 object_id, then height*width f32, row-major
//
// Every writer stages its output in a temporary sibling file and renames it
// into place, so readers never observe partial files.

#ifndef FUSEVOS_IO_HPP
#define FUSEVOS_IO_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fusevos/core.hpp"

namespace fusevos {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Files

std::vector<std::uint8_t> ReadFileBytes(const fs::path& path);
/// Writes via temp file + rename. Creates the parent directory if needed.
void AtomicWriteFile(const fs::path& path, std::span<const std::uint8_t> bytes);
void AtomicWriteFile(const fs::path& path, const std::string& text);

/// "frame_00003.cgfv" style names, index starting at 0.
std::string VolumeFileName(std::uint32_t frame_index);
std::string MaskFileName(std::uint32_t frame_index);

// ---------------------------------------------------------------------------
// Indexed PNG label masks

using Rgb = std::array<std::uint8_t, 3>;
using Palette = std::map<ObjectId, Rgb>;

/// The DAVIS colour map (bit-interleaved) for ids 0..max_id.
Palette DefaultPalette(ObjectId max_id = 255);

/// Decodes an 8-bit palette PNG; palette index = object id.
LabelMask DecodeLabelMask(std::span<const std::uint8_t> png_bytes);
LabelMask read_label_mask(const fs::path& path);

std::vector<std::uint8_t> EncodeLabelMask(const LabelMask& mask,
                                          const Palette& palette);
void write_label_mask(const LabelMask& mask, const fs::path& path,
                      const Palette& palette);
void write_label_mask(const LabelMask& mask, const fs::path& path);

// ---------------------------------------------------------------------------
// CGFV confidence volumes

inline constexpr std::uint16_t kCgfvVersion = 1;
inline constexpr std::size_t kCgfvHeaderSize = 16;

std::vector<std::uint8_t> EncodeConfidenceVolume(const ConfidenceVolume& volume);
ConfidenceVolume DecodeConfidenceVolume(std::span<const std::uint8_t> bytes,
                                        std::string model_name = {});

void write_confidence_volume(const ConfidenceVolume& volume,
                             const fs::path& path);
ConfidenceVolume read_confidence_volume(const fs::path& path,
                                        std::string model_name = {});

// ---------------------------------------------------------------------------
// Model-zoo manifest

using Scalar = std::variant<bool, std::int64_t, double, std::string>;

struct ModelEntry {
  std::string name;
  double weight = 1.0;
  fs::path prediction_dir;
  std::map<std::string, Scalar> hyperparameters;
  std::optional<fs::path> tta_flipped_dir;
};

struct ZooManifest {
  std::string sequence_name;
  std::uint32_t num_frames = 0;
  ObjectSet objects;
  std::vector<ModelEntry> models;
  /// Unknown keys encountered while parsing; they are otherwise ignored.
  std::vector<std::string> warnings;

  std::vector<double> weights() const;
};

inline constexpr int kManifestVersion = 1;

/// Parses manifest JSON. Relative paths resolve against `base_dir`.
/// Throws kManifest with line/column on syntax or schema errors.
ZooManifest ParseManifest(const std::string& text, const fs::path& base_dir);
ZooManifest load_manifest(const fs::path& path);

/// Serializes with paths written relative to `base_dir` when possible.
std::string ManifestToJson(const ZooManifest& manifest,
                           const fs::path& base_dir);

enum class ValidationDepth {
  kLayout,    // invariants + directory/frame-file existence
  kContents,  // additionally decodes every volume and checks it
};

ValidationResult validate_manifest(const ZooManifest& manifest,
                                   ValidationDepth depth = ValidationDepth::kLayout);

}  // namespace fusevos

#endif  // FUSEVOS_IO_HPP
