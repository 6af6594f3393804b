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

#include <png.h>

#include <csetjmp>
#include <cstdio>
#include <cstring>

#include "fusevos/io.hpp"

namespace fusevos {
namespace {

constexpr std::size_t kMaxPixels = std::size_t{1} << 28;

struct PngErrorState {
  std::jmp_buf jmp;
  char message[256];
};

void OnPngError(png_structp png, png_const_charp msg) {
  auto* state = static_cast<PngErrorState*>(png_get_error_ptr(png));
  std::snprintf(state->message, sizeof(state->message), "%s", msg);
  std::longjmp(state->jmp, 1);
}

void OnPngWarning(png_structp, png_const_charp) {}

struct ReadCursor {
  const std::uint8_t* data;
  std::size_t size;
  std::size_t pos;
};

void ReadFromCursor(png_structp png, png_bytep out, png_size_t n) {
  auto* cursor = static_cast<ReadCursor*>(png_get_io_ptr(png));
  if (cursor->size - cursor->pos < n) png_error(png, "truncated PNG data");
  std::memcpy(out, cursor->data + cursor->pos, n);
  cursor->pos += n;
}

struct RawImage {
  png_uint_32 width = 0;
  png_uint_32 height = 0;
  int bit_depth = 0;
  int color_type = 0;
  std::vector<std::uint8_t> pixels;
  std::vector<png_bytep> rows;
};

enum class RawStatus { kOk, kLibpng, kNotPalette, kBadDepth, kTooLarge };

// libpng reports errors with longjmp, so nothing with a non-trivial destructor
// may be constructed in this frame after setjmp. All buffers live in `out`.
RawStatus DecodeRaw(ReadCursor* cursor, PngErrorState* err, RawImage* out) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, err,
                                           OnPngError, OnPngWarning);
  if (png == nullptr) {
    std::snprintf(err->message, sizeof(err->message), "out of memory");
    return RawStatus::kLibpng;
  }
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    std::snprintf(err->message, sizeof(err->message), "out of memory");
    return RawStatus::kLibpng;
  }
  if (setjmp(err->jmp)) {
    png_destroy_read_struct(&png, &info, nullptr);
    return RawStatus::kLibpng;
  }
  png_set_read_fn(png, cursor, ReadFromCursor);
  png_read_info(png, info);
  out->width = png_get_image_width(png, info);
  out->height = png_get_image_height(png, info);
  out->bit_depth = png_get_bit_depth(png, info);
  out->color_type = png_get_color_type(png, info);

  RawStatus status = RawStatus::kOk;
  if (out->color_type != PNG_COLOR_TYPE_PALETTE) {
    status = RawStatus::kNotPalette;
  } else if (out->bit_depth != 8) {
    status = RawStatus::kBadDepth;
  } else if (static_cast<std::size_t>(out->width) * out->height > kMaxPixels) {
    status = RawStatus::kTooLarge;
  }
  if (status != RawStatus::kOk) {
    png_destroy_read_struct(&png, &info, nullptr);
    return status;
  }

  png_set_interlace_handling(png);
  png_read_update_info(png, info);
  out->pixels.resize(static_cast<std::size_t>(out->width) * out->height);
  out->rows.resize(out->height);
  for (png_uint_32 y = 0; y < out->height; ++y) {
    out->rows[y] = out->pixels.data() + static_cast<std::size_t>(y) * out->width;
  }
  png_read_image(png, out->rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return RawStatus::kOk;
}

void WriteToVector(png_structp png, png_bytep data, png_size_t n) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + n);
}

void FlushNoop(png_structp) {}

struct EncodeInput {
  png_uint_32 width;
  png_uint_32 height;
  const png_color* palette;
  int palette_size;
  png_bytep* rows;
};

bool EncodeRaw(const EncodeInput* in, std::vector<std::uint8_t>* out,
               PngErrorState* err) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, err,
                                            OnPngError, OnPngWarning);
  if (png == nullptr) return false;
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    return false;
  }
  if (setjmp(err->jmp)) {
    png_destroy_write_struct(&png, &info);
    return false;
  }
  png_set_write_fn(png, out, WriteToVector, FlushNoop);
  png_set_IHDR(png, info, in->width, in->height, 8, PNG_COLOR_TYPE_PALETTE,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_set_PLTE(png, info, in->palette, in->palette_size);
  png_write_info(png, info);
  png_write_image(png, in->rows);
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return true;
}

}  // namespace

Palette DefaultPalette(ObjectId max_id) {
  Palette palette;
  for (ObjectId i = 0; i <= max_id && i < 256; ++i) {
    Rgb rgb{0, 0, 0};
    ObjectId c = i;
    for (int j = 0; j < 8; ++j) {
      rgb[0] |= static_cast<std::uint8_t>(((c >> 0) & 1u) << (7 - j));
      rgb[1] |= static_cast<std::uint8_t>(((c >> 1) & 1u) << (7 - j));
      rgb[2] |= static_cast<std::uint8_t>(((c >> 2) & 1u) << (7 - j));
      c >>= 3;
    }
    palette[i] = rgb;
  }
  return palette;
}

LabelMask DecodeLabelMask(std::span<const std::uint8_t> png_bytes) {
  if (png_bytes.size() < 8 || png_sig_cmp(png_bytes.data(), 0, 8) != 0) {
    Fail(ErrorKind::kFormat, "not a PNG file");
  }
  ReadCursor cursor{png_bytes.data(), png_bytes.size(), 0};
  PngErrorState err{};
  RawImage raw;
  switch (DecodeRaw(&cursor, &err, &raw)) {
    case RawStatus::kOk:
      break;
    case RawStatus::kLibpng:
      Fail(ErrorKind::kFormat, std::string("PNG decode failed: ") + err.message);
    case RawStatus::kNotPalette:
      Fail(ErrorKind::kFormat, "not palette-indexed (PNG color type " +
                                   std::to_string(raw.color_type) + ")");
    case RawStatus::kBadDepth:
      Fail(ErrorKind::kFormat, "bit depth " + std::to_string(raw.bit_depth) +
                                   " is not 8");
    case RawStatus::kTooLarge:
      Fail(ErrorKind::kFormat, "image dimensions too large");
  }
  std::vector<ObjectId> labels(raw.pixels.begin(), raw.pixels.end());
  return LabelMask(raw.width, raw.height, std::move(labels));
}

LabelMask read_label_mask(const fs::path& path) {
  const auto bytes = ReadFileBytes(path);
  try {
    return DecodeLabelMask(bytes);
  } catch (const Error& e) {
    Fail(e.kind(), path.string() + ": " + e.what());
  }
}

std::vector<std::uint8_t> EncodeLabelMask(const LabelMask& mask,
                                          const Palette& palette) {
  if (mask.width() == 0 || mask.height() == 0) {
    Fail(ErrorKind::kInvalidInput, "cannot encode an empty mask");
  }
  ObjectId max_label = 0;
  std::vector<bool> used(256, false);
  std::vector<ObjectId> unmapped;
  for (ObjectId id : mask.labels()) {
    if (id > 255) {
      Fail(ErrorKind::kInvalidInput,
           "label " + std::to_string(id) + " does not fit an 8-bit palette");
    }
    if (!used[id]) {
      used[id] = true;
      if (!palette.count(id)) unmapped.push_back(id);
    }
    max_label = std::max(max_label, id);
  }
  if (!palette.count(kBackground) &&
      std::find(unmapped.begin(), unmapped.end(), kBackground) ==
          unmapped.end()) {
    unmapped.push_back(kBackground);
  }
  if (!unmapped.empty()) {
    std::sort(unmapped.begin(), unmapped.end());
    std::string list;
    for (ObjectId id : unmapped) {
      list += (list.empty() ? "" : ", ") + std::to_string(id);
    }
    Fail(ErrorKind::kInvalidInput, "labels without palette entry: " + list);
  }

  std::vector<png_color> colors(static_cast<std::size_t>(max_label) + 1,
                                png_color{0, 0, 0});
  for (ObjectId i = 0; i <= max_label; ++i) {
    if (auto it = palette.find(i); it != palette.end()) {
      colors[i] = png_color{it->second[0], it->second[1], it->second[2]};
    }
  }
  std::vector<std::uint8_t> pixels(mask.labels().begin(), mask.labels().end());
  std::vector<png_bytep> rows(mask.height());
  for (std::uint32_t y = 0; y < mask.height(); ++y) {
    rows[y] = pixels.data() + static_cast<std::size_t>(y) * mask.width();
  }
  EncodeInput in{mask.width(), mask.height(), colors.data(),
                 static_cast<int>(colors.size()), rows.data()};
  std::vector<std::uint8_t> out;
  PngErrorState err{};
  if (!EncodeRaw(&in, &out, &err)) {
    Fail(ErrorKind::kIo, std::string("PNG encode failed: ") + err.message);
  }
  return out;
}

void write_label_mask(const LabelMask& mask, const fs::path& path,
                      const Palette& palette) {
  AtomicWriteFile(path, EncodeLabelMask(mask, palette));
}

void write_label_mask(const LabelMask& mask, const fs::path& path) {
  write_label_mask(mask, path, DefaultPalette());
}

}  // namespace fusevos
