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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "fusevos/error.hpp"
#include "fusevos/io.hpp"
#include "test_util.hpp"

namespace fusevos {
namespace {

using testing::FirstIds;
using testing::RandomLabels;
using testing::RandomVolume;
using testing::TempDir;

ErrorKind KindOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::kInvalidInput;
}

std::string MessageOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  ADD_FAILURE() << "no error thrown";
  return {};
}

// Writes a PNG with arbitrary color type and bit depth straight through libpng.
void WriteRawPng(const fs::path& path, std::uint32_t width, std::uint32_t height,
                 int color_type, int bit_depth, const std::vector<std::uint8_t>& data) {
  FILE* fp = std::fopen(path.c_str(), "wb");
  ASSERT_NE(fp, nullptr);
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png_create_info_struct(png);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
    FAIL() << "libpng write failed";
  }
  png_init_io(png, fp);
  png_set_IHDR(png, info, width, height, bit_depth, color_type, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  if (color_type == PNG_COLOR_TYPE_PALETTE) {
    png_color palette[16] = {};
    png_set_PLTE(png, info, palette, 1 << std::min(bit_depth, 4));
  }
  png_write_info(png, info);
  const std::size_t stride = data.size() / height;
  for (std::uint32_t y = 0; y < height; ++y) {
    png_write_row(png, const_cast<png_bytep>(data.data() + y * stride));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  std::fclose(fp);
}

TEST(LabelMaskPng, DecodesSmallIndexedMask) {
  TempDir dir;
  const LabelMask m(2, 2, {0, 1, 1, 2});
  write_label_mask(m, dir / "m.png");
  const LabelMask back = read_label_mask(dir / "m.png");
  EXPECT_EQ(back.width(), 2u);
  EXPECT_EQ(back.height(), 2u);
  EXPECT_EQ(back, m);
}

TEST(LabelMaskPng, RejectsRgb) {
  TempDir dir;
  WriteRawPng(dir / "rgb.png", 2, 1, PNG_COLOR_TYPE_RGB, 8, std::vector<std::uint8_t>(6, 7));
  const auto msg = MessageOf([&] { read_label_mask(dir / "rgb.png"); });
  EXPECT_NE(msg.find("not palette-indexed"), std::string::npos) << msg;
  EXPECT_EQ(KindOf([&] { read_label_mask(dir / "rgb.png"); }), ErrorKind::kFormat);
}

TEST(LabelMaskPng, RejectsPaletteWithFourBitDepth) {
  TempDir dir;
  WriteRawPng(dir / "p4.png", 2, 1, PNG_COLOR_TYPE_PALETTE, 4, {0x12});
  const auto msg = MessageOf([&] { read_label_mask(dir / "p4.png"); });
  EXPECT_NE(msg.find("bit depth 4"), std::string::npos) << msg;
}

TEST(LabelMaskPng, MissingFileIsMissingData) {
  TempDir dir;
  EXPECT_EQ(KindOf([&] { read_label_mask(dir / "nope.png"); }), ErrorKind::kMissingData);
}

TEST(LabelMaskPng, GarbageIsFormatError) {
  const std::vector<std::uint8_t> junk{1, 2, 3, 4, 5};
  EXPECT_EQ(KindOf([&] { DecodeLabelMask(junk); }), ErrorKind::kFormat);
}

TEST(LabelMaskPng, UnmappedLabelIsInvalidInput) {
  const LabelMask m(2, 1, {0, 3});
  Palette p{{0, {0, 0, 0}}, {1, {255, 0, 0}}};
  const auto msg = MessageOf([&] { EncodeLabelMask(m, p); });
  EXPECT_NE(msg.find("3"), std::string::npos);
  EXPECT_EQ(KindOf([&] { EncodeLabelMask(m, p); }), ErrorKind::kInvalidInput);
  p[3] = {1, 2, 3};
  EXPECT_EQ(DecodeLabelMask(EncodeLabelMask(m, p)), m);
}

TEST(LabelMaskPng, RandomRoundTrips) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint32_t w = 1 + rng() % 40;
    const std::uint32_t h = 1 + rng() % 40;
    const LabelMask m = RandomLabels(rng, w, h, static_cast<ObjectId>(rng() % 256));
    EXPECT_EQ(DecodeLabelMask(EncodeLabelMask(m, DefaultPalette())), m) << trial;
  }
}

TEST(LabelMaskPng, EncodingIsByteReproducible) {
  std::mt19937_64 rng(5);
  const LabelMask m = RandomLabels(rng, 17, 9, 6);
  EXPECT_EQ(EncodeLabelMask(m, DefaultPalette()), EncodeLabelMask(m, DefaultPalette()));
}

TEST(DefaultPalette, FollowsTheDavisColorMap) {
  const Palette p = DefaultPalette();
  EXPECT_EQ(p.at(0), (Rgb{0, 0, 0}));
  EXPECT_EQ(p.at(1), (Rgb{128, 0, 0}));
  EXPECT_EQ(p.at(2), (Rgb{0, 128, 0}));
  EXPECT_EQ(p.at(3), (Rgb{128, 128, 0}));
  EXPECT_EQ(p.at(4), (Rgb{0, 0, 128}));
}

ConfidenceVolume SmallVolume() {
  ConfidenceVolume v;
  v.width = 2;
  v.height = 2;
  v.planes.push_back({3, {0.0f, 0.25f, 0.5f, 1.0f}});
  return v;
}

TEST(Cgfv, SmallVolumeIs36Bytes) {
  // magic 4 + version 2 + height 4 + width 4 + planes 2 + id 4 + 4 floats
  const std::size_t expected = 4 + 2 + 4 + 4 + 2 + 4 + 4 * 4;
  const auto bytes = EncodeConfidenceVolume(SmallVolume());
  ASSERT_EQ(bytes.size(), expected);
  EXPECT_EQ(bytes.size(), 36u);
  EXPECT_EQ(std::memcmp(bytes.data(), "CGFV", 4), 0);
  EXPECT_EQ(bytes[4], 1);
  EXPECT_EQ(bytes[5], 0);
  EXPECT_EQ(bytes[16], 3);  // first object id, little-endian
  TempDir dir;
  write_confidence_volume(SmallVolume(), dir / "v.cgfv");
  EXPECT_EQ(fs::file_size(dir / "v.cgfv"), 36u);
}

TEST(Cgfv, HeaderFieldsAreLittleEndian) {
  ConfidenceVolume v;
  v.width = 0x0102;
  v.height = 1;
  v.planes.push_back({0x0A0B0C0D, std::vector<float>(0x0102, 0.5f)});
  const auto b = EncodeConfidenceVolume(v);
  EXPECT_EQ(b[6], 1);  // height
  EXPECT_EQ(b[10], 0x02);  // width low byte
  EXPECT_EQ(b[11], 0x01);
  EXPECT_EQ(b[14], 1);  // num_planes
  EXPECT_EQ(b[16], 0x0D);
  EXPECT_EQ(b[19], 0x0A);
  float first;
  std::memcpy(&first, b.data() + 20, 4);
  EXPECT_EQ(first, 0.5f);
}

TEST(Cgfv, RandomRoundTripsAreBitExact) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const auto v = RandomVolume(rng, "m", 1 + rng() % 20, 1 + rng() % 20,
                                FirstIds(1 + rng() % 4), trial % 3 == 0);
    const auto bytes = EncodeConfidenceVolume(v);
    EXPECT_EQ(DecodeConfidenceVolume(bytes, "m"), v) << trial;
    EXPECT_EQ(EncodeConfidenceVolume(DecodeConfidenceVolume(bytes)), bytes);
  }
}

TEST(Cgfv, RejectsBadMagic) {
  auto bytes = EncodeConfidenceVolume(SmallVolume());
  std::memcpy(bytes.data(), "XXXX", 4);
  EXPECT_EQ(MessageOf([&] { DecodeConfidenceVolume(bytes); }), "bad magic");
}

TEST(Cgfv, RejectsUnsupportedVersion) {
  auto bytes = EncodeConfidenceVolume(SmallVolume());
  bytes[4] = 2;
  EXPECT_NE(MessageOf([&] { DecodeConfidenceVolume(bytes); }).find("unsupported version"),
            std::string::npos);
}

TEST(Cgfv, RejectsNonFiniteAndOutOfRange) {
  auto bytes = EncodeConfidenceVolume(SmallVolume());
  const float nan = std::nanf("");
  std::memcpy(bytes.data() + 24, &nan, 4);
  EXPECT_NE(MessageOf([&] { DecodeConfidenceVolume(bytes); }).find("non-finite"),
            std::string::npos);
  const float big = 1.5f;
  std::memcpy(bytes.data() + 24, &big, 4);
  EXPECT_NE(MessageOf([&] { DecodeConfidenceVolume(bytes); }).find("out of range"),
            std::string::npos);
}

TEST(Cgfv, RejectsTrailingBytesAndDuplicateIds) {
  auto bytes = EncodeConfidenceVolume(SmallVolume());
  bytes.push_back(0);
  EXPECT_EQ(KindOf([&] { DecodeConfidenceVolume(bytes); }), ErrorKind::kFormat);

  ConfidenceVolume v = SmallVolume();
  v.planes.push_back(v.planes[0]);
  EXPECT_THROW(EncodeConfidenceVolume(v), Error);
}

TEST(Cgfv, EveryTruncationIsRejected) {
  const auto bytes = EncodeConfidenceVolume(SmallVolume());
  for (std::size_t n = 0; n < bytes.size(); ++n) {
    std::span<const std::uint8_t> prefix(bytes.data(), n);
    EXPECT_EQ(KindOf([&] { DecodeConfidenceVolume(prefix); }), ErrorKind::kFormat) << n;
  }
}

// Random corruption must either fail cleanly or yield a volume that still
// satisfies every invariant.
TEST(Cgfv, CorruptedFilesNeverYieldInvalidVolumes) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto v = RandomVolume(rng, "m", 1 + rng() % 5, 1 + rng() % 5, FirstIds(2), false);
    auto bytes = EncodeConfidenceVolume(v);
    const int flips = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k < flips; ++k) bytes[rng() % bytes.size()] ^= static_cast<std::uint8_t>(1 + rng() % 255);
    if (rng() % 3 == 0) bytes.resize(rng() % bytes.size());
    try {
      const auto decoded = DecodeConfidenceVolume(bytes);
      std::vector<ObjectId> ids;
      for (const auto& p : decoded.planes) ids.push_back(p.object_id);
      if (ids.empty()) continue;
      const auto objects = ObjectSet::FromUnordered(ids);
      EXPECT_TRUE(validate_volume(decoded, objects).ok()) << trial;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kFormat);
    }
  }
}

TEST(Cgfv, HugeHeaderDoesNotAllocate) {
  std::vector<std::uint8_t> b{'C', 'G', 'F', 'V', 1, 0, 0xFF, 0xFF, 0xFF, 0xFF,
                              0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF};
  EXPECT_EQ(KindOf([&] { DecodeConfidenceVolume(b); }), ErrorKind::kFormat);
}

const char* kZoo[] = {"SAM2Long", "SAM2", "Cutie", "LiVOS", "XMem"};

// A 5-model zoo on disk with `frames` frames of 3x2 volumes.
void WriteZoo(const fs::path& root, std::uint32_t frames, const std::string& extra_model_key = {}) {
  std::string models;
  std::mt19937_64 rng(4);
  for (const char* name : kZoo) {
    for (std::uint32_t f = 0; f < frames; ++f) {
      write_confidence_volume(RandomVolume(rng, name, 3, 2, ObjectSet({1, 2}), false),
                              root / "preds" / name / VolumeFileName(f));
    }
    if (!models.empty()) models += ",\n";
    models += std::string(R"(    {"name": ")") + name + R"(", "weight": 1.0, )" +
              R"("prediction_dir": "preds/)" + name + R"(", )" +
              R"("hyperparameters": {"num_pathway": 3, "iou_thre": 0.1, "uncertainty": 1.5})" +
              extra_model_key + "}";
  }
  std::ofstream(root / "manifest.json")
      << "{\n  \"version\": 1,\n  \"sequence_name\": \"seq\",\n  \"num_frames\": "
      << frames << ",\n  \"objects\": [1, 2],\n  \"models\": [\n" << models << "\n  ]\n}\n";
}

TEST(Manifest, FiveModelZooValidates) {
  TempDir dir;
  WriteZoo(dir.path(), 4);
  const ZooManifest m = load_manifest(dir / "manifest.json");
  ASSERT_EQ(m.models.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(m.models[i].name, kZoo[i]);
  EXPECT_EQ(m.num_frames, 4u);
  EXPECT_EQ(m.objects, ObjectSet({1, 2}));
  EXPECT_EQ(m.models[1].prediction_dir, dir / "preds" / "SAM2");
  EXPECT_EQ(std::get<std::int64_t>(m.models[0].hyperparameters.at("num_pathway")), 3);
  EXPECT_DOUBLE_EQ(std::get<double>(m.models[0].hyperparameters.at("iou_thre")), 0.1);
  EXPECT_TRUE(m.warnings.empty());
  EXPECT_TRUE(validate_manifest(m).ok());
  EXPECT_TRUE(validate_manifest(m, ValidationDepth::kContents).ok());
}

TEST(Manifest, DuplicateModelName) {
  TempDir dir;
  WriteZoo(dir.path(), 2);
  ZooManifest m = load_manifest(dir / "manifest.json");
  m.models[3].name = "SAM2";
  const auto r = validate_manifest(m);
  ASSERT_TRUE(r.has(ViolationKind::kDuplicateModelName));
  EXPECT_NE(r.violations[0].message.find("duplicate model name"), std::string::npos);
}

TEST(Manifest, MissingFrameIsNamed) {
  TempDir dir;
  WriteZoo(dir.path(), 10);
  fs::remove(dir / "preds/Cutie/frame_00003.cgfv");
  const auto r = validate_manifest(load_manifest(dir / "manifest.json"));
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].kind, ViolationKind::kMissingFrame);
  EXPECT_NE(r.violations[0].message.find("frame_00003.cgfv"), std::string::npos);
  EXPECT_NE(r.violations[0].message.find("Cutie"), std::string::npos);
}

TEST(Manifest, DeepValidationCatchesBadContents) {
  TempDir dir;
  WriteZoo(dir.path(), 3);
  const ZooManifest m = load_manifest(dir / "manifest.json");
  std::ofstream(dir / "preds/XMem/frame_00001.cgfv", std::ios::binary) << "junk";
  std::mt19937_64 rng(1);
  write_confidence_volume(RandomVolume(rng, "LiVOS", 4, 2, ObjectSet({1, 2}), false),
                          dir / "preds/LiVOS/frame_00002.cgfv");
  EXPECT_TRUE(validate_manifest(m).ok());
  const auto r = validate_manifest(m, ValidationDepth::kContents);
  EXPECT_TRUE(r.has(ViolationKind::kUnreadableFile));
  EXPECT_TRUE(r.has(ViolationKind::kDimensionMismatch));
}

TEST(Manifest, MissingDirectory) {
  TempDir dir;
  WriteZoo(dir.path(), 1);
  fs::remove_all(dir / "preds/SAM2");
  EXPECT_TRUE(validate_manifest(load_manifest(dir / "manifest.json"))
                  .has(ViolationKind::kMissingDirectory));
}

TEST(Manifest, UnknownKeysWarn) {
  TempDir dir;
  WriteZoo(dir.path(), 1, R"(, "checkpoint": "x.pt")");
  const ZooManifest m = load_manifest(dir / "manifest.json");
  EXPECT_EQ(m.warnings.size(), 5u);
  EXPECT_NE(m.warnings[0].find("checkpoint"), std::string::npos);
}

TEST(Manifest, ParseErrorReportsLineAndColumn) {
  const std::string text = "{\n  \"version\": 1,\n  \"sequence_name\": oops\n}";
  try {
    ParseManifest(text, ".");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kManifest);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(Manifest, SchemaErrors) {
  EXPECT_EQ(KindOf([] { ParseManifest(R"({"version": 2})", "."); }), ErrorKind::kManifest);
  EXPECT_EQ(KindOf([] {
              ParseManifest(R"({"version":1,"sequence_name":"s","num_frames":1,)"
                            R"("objects":[2,1],"models":[]})", ".");
            }),
            ErrorKind::kManifest);
  EXPECT_EQ(KindOf([] {
              ParseManifest(R"({"version":1,"sequence_name":"s","num_frames":1,)"
                            R"("objects":[1],"models":[{"name":"a"}]})", ".");
            }),
            ErrorKind::kManifest);
}

TEST(Manifest, InvariantViolations) {
  const ZooManifest m = ParseManifest(
      R"({"version":1,"sequence_name":"s","num_frames":0,"objects":[1],)"
      R"("models":[{"name":"a","weight":-1,"prediction_dir":"/nonexistent"}]})", "/");
  const auto r = validate_manifest(m);
  EXPECT_TRUE(r.has(ViolationKind::kInvalidField));
  EXPECT_TRUE(r.has(ViolationKind::kMissingDirectory));
}

TEST(Manifest, MissingFileIsManifestError) {
  TempDir dir;
  const auto msg = MessageOf([&] { load_manifest(dir / "absent.json"); });
  EXPECT_NE(msg.find("absent.json"), std::string::npos);
  EXPECT_EQ(KindOf([&] { load_manifest(dir / "absent.json"); }), ErrorKind::kManifest);
}

TEST(Manifest, JsonRoundTrip) {
  TempDir dir;
  WriteZoo(dir.path(), 2);
  ZooManifest m = load_manifest(dir / "manifest.json");
  m.models[2].weight = 0.5;
  m.models[2].tta_flipped_dir = dir / "flipped";
  const ZooManifest back = ParseManifest(ManifestToJson(m, dir.path()), dir.path());
  ASSERT_EQ(back.models.size(), m.models.size());
  for (std::size_t i = 0; i < m.models.size(); ++i) {
    EXPECT_EQ(back.models[i].name, m.models[i].name);
    EXPECT_EQ(back.models[i].weight, m.models[i].weight);
    EXPECT_EQ(back.models[i].prediction_dir, m.models[i].prediction_dir);
    EXPECT_EQ(back.models[i].hyperparameters, m.models[i].hyperparameters);
    EXPECT_EQ(back.models[i].tta_flipped_dir, m.models[i].tta_flipped_dir);
  }
  EXPECT_EQ(back.weights(), m.weights());
}

TEST(AtomicWrite, LeavesNoTemporaryFiles) {
  TempDir dir;
  AtomicWriteFile(dir / "sub/a.txt", std::string("hello"));
  AtomicWriteFile(dir / "sub/a.txt", std::string("world"));
  std::size_t n = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir / "sub")) ++n;
  EXPECT_EQ(n, 1u);
  const auto bytes = ReadFileBytes(dir / "sub/a.txt");
  EXPECT_EQ(std::string(bytes.begin(), bytes.end()), "world");
}

TEST(FileNames, ZeroPaddedFiveDigits) {
  EXPECT_EQ(VolumeFileName(3), "frame_00003.cgfv");
  EXPECT_EQ(MaskFileName(12345), "frame_12345.png");
}

}  // namespace
}  // namespace fusevos
