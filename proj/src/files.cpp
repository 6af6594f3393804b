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

#include <unistd.h>

#include <atomic>
#include <cstdio>
#include <fstream>
#include <iterator>

#include "fusevos/io.hpp"

namespace fusevos {

std::vector<std::uint8_t> ReadFileBytes(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    Fail(ErrorKind::kMissingData, "file not found: " + path.string());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorKind::kIo, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) Fail(ErrorKind::kIo, "read failed: " + path.string());
  return bytes;
}

void AtomicWriteFile(const fs::path& path, std::span<const std::uint8_t> bytes) {
  static std::atomic<unsigned long> counter{0};
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
    if (ec) {
      Fail(ErrorKind::kIo, "cannot create directory " +
                               path.parent_path().string() + ": " +
                               ec.message());
    }
  }
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid()) + "." +
         std::to_string(counter.fetch_add(1));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) Fail(ErrorKind::kIo, "cannot open " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    out.close();
    if (!out) {
      fs::remove(tmp, ec);
      Fail(ErrorKind::kIo, "write failed: " + tmp.string());
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    Fail(ErrorKind::kIo, "cannot rename into " + path.string() + ": " +
                             ec.message());
  }
}

void AtomicWriteFile(const fs::path& path, const std::string& text) {
  AtomicWriteFile(path,
                  std::span<const std::uint8_t>(
                      reinterpret_cast<const std::uint8_t*>(text.data()),
                      text.size()));
}

std::string VolumeFileName(std::uint32_t frame_index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "frame_%05u.cgfv", frame_index);
  return buf;
}

std::string MaskFileName(std::uint32_t frame_index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "frame_%05u.png", frame_index);
  return buf;
}

}  // namespace fusevos
