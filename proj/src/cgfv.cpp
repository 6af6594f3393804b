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

#include <bit>
#include <cmath>
#include <cstring>
#include <set>

#include "fusevos/io.hpp"

namespace fusevos {
namespace {

constexpr char kMagic[4] = {'C', 'G', 'F', 'V'};

class ByteWriter {
 public:
  explicit ByteWriter(std::size_t reserve) { bytes_.reserve(reserve); }

  void u16(std::uint16_t v) {
    bytes_.push_back(static_cast<std::uint8_t>(v));
    bytes_.push_back(static_cast<std::uint8_t>(v >> 8));
  }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) {
      bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
  }
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
  void raw(const char* data, std::size_t n) {
    bytes_.insert(bytes_.end(), data, data + n);
  }

  std::vector<std::uint8_t> take() { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t remaining() const { return bytes_.size() - pos_; }

  std::uint16_t u16() {
    need(2);
    std::uint16_t v = static_cast<std::uint16_t>(bytes_[pos_] |
                                                 (bytes_[pos_ + 1] << 8));
    pos_ += 2;
    return v;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      v |= static_cast<std::uint32_t>(bytes_[pos_ + i]) << (8 * i);
    }
    pos_ += 4;
    return v;
  }
  float f32() { return std::bit_cast<float>(u32()); }

 private:
  void need(std::size_t n) const {
    if (remaining() < n) Fail(ErrorKind::kFormat, "truncated payload");
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> EncodeConfidenceVolume(const ConfidenceVolume& volume) {
  if (volume.planes.size() > 0xFFFF) {
    Fail(ErrorKind::kInvalidInput, "too many planes for CGFV");
  }
  std::set<ObjectId> ids;
  for (const auto& plane : volume.planes) {
    if (plane.object_id == kBackground) {
      Fail(ErrorKind::kInvalidInput, "object id 0 is reserved for background");
    }
    if (plane.values.size() != volume.pixel_count()) {
      Fail(ErrorKind::kInvalidInput,
           "plane " + std::to_string(plane.object_id) +
               " size does not match volume dimensions");
    }
    if (!ids.insert(plane.object_id).second) {
      Fail(ErrorKind::kInvalidInput,
           "duplicate object id " + std::to_string(plane.object_id));
    }
    for (float v : plane.values) {
      if (!std::isfinite(v) || v < 0.0f || v > 1.0f) {
        Fail(ErrorKind::kInvalidInput,
             "plane " + std::to_string(plane.object_id) +
                 " holds a value outside [0,1]");
      }
    }
  }

  const std::size_t plane_bytes = 4 + 4 * volume.pixel_count();
  ByteWriter w(kCgfvHeaderSize + plane_bytes * volume.planes.size());
  w.raw(kMagic, sizeof(kMagic));
  w.u16(kCgfvVersion);
  w.u32(volume.height);
  w.u32(volume.width);
  w.u16(static_cast<std::uint16_t>(volume.planes.size()));
  for (const auto& plane : volume.planes) {
    w.u32(plane.object_id);
    for (float v : plane.values) w.f32(v);
  }
  return w.take();
}

ConfidenceVolume DecodeConfidenceVolume(std::span<const std::uint8_t> bytes,
                                        std::string model_name) {
  if (bytes.size() < sizeof(kMagic) ||
      std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    Fail(ErrorKind::kFormat, "bad magic");
  }
  ByteReader r(bytes.subspan(sizeof(kMagic)));
  const std::uint16_t version = r.u16();
  if (version != kCgfvVersion) {
    Fail(ErrorKind::kFormat,
         "unsupported version " + std::to_string(version));
  }
  ConfidenceVolume volume;
  volume.model_name = std::move(model_name);
  volume.height = r.u32();
  volume.width = r.u32();
  const std::uint16_t num_planes = r.u16();

  // Size check before allocating anything proportional to the header.
  const std::uint64_t pixels =
      static_cast<std::uint64_t>(volume.width) * volume.height;
  if (num_planes > 0 && pixels > r.remaining() / 4) {
    Fail(ErrorKind::kFormat, "truncated payload");
  }
  const std::uint64_t expected = num_planes * (4 + 4 * pixels);
  if (r.remaining() < expected) Fail(ErrorKind::kFormat, "truncated payload");
  if (r.remaining() > expected) {
    Fail(ErrorKind::kFormat, "trailing bytes after last plane");
  }

  std::set<ObjectId> ids;
  volume.planes.reserve(num_planes);
  for (std::uint16_t p = 0; p < num_planes; ++p) {
    ConfidencePlane plane;
    plane.object_id = r.u32();
    if (plane.object_id == kBackground) {
      Fail(ErrorKind::kFormat, "object id 0 is reserved for background");
    }
    if (!ids.insert(plane.object_id).second) {
      Fail(ErrorKind::kFormat,
           "duplicate object id " + std::to_string(plane.object_id));
    }
    plane.values.resize(pixels);
    for (auto& v : plane.values) {
      v = r.f32();
      if (!std::isfinite(v)) {
        Fail(ErrorKind::kFormat, "non-finite value in plane " +
                                     std::to_string(plane.object_id));
      }
      if (v < 0.0f || v > 1.0f) {
        Fail(ErrorKind::kFormat, "value out of range in plane " +
                                     std::to_string(plane.object_id));
      }
    }
    volume.planes.push_back(std::move(plane));
  }
  return volume;
}

void write_confidence_volume(const ConfidenceVolume& volume,
                             const fs::path& path) {
  AtomicWriteFile(path, EncodeConfidenceVolume(volume));
}

ConfidenceVolume read_confidence_volume(const fs::path& path,
                                        std::string model_name) {
  const auto bytes = ReadFileBytes(path);
  try {
    return DecodeConfidenceVolume(bytes, std::move(model_name));
  } catch (const Error& e) {
    Fail(e.kind(), path.string() + ": " + e.what());
  }
}

}  // namespace fusevos
