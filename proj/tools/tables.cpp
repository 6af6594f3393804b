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


#include "tables.hpp"

#include <algorithm>
#include <cstdio>

#include "fusevos/fusevos.h"

namespace fusevos::cli {
namespace {

std::string Pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

}  // namespace

std::string Fixed4(double value) {
  char buf[64];
  if (fusevos_format_half_up(value, 4, buf, sizeof(buf)) == 0) return "nan";
  return buf;
}

std::string RenderScoreTable(const std::vector<ScoreRow>& rows) {
  std::size_t video_w = 5;
  std::size_t object_w = 6;
  for (const auto& r : rows) {
    video_w = std::max(video_w, r.video.size());
    object_w = std::max(object_w, r.object.size());
  }
  video_w += 2;
  object_w += 2;
  std::string out = Pad("scope", 8) + Pad("video", video_w) +
                    Pad("object", object_w) + Pad("J&F", 8) + Pad("J", 8) + "F\n";
  for (const auto& r : rows) {
    out += Pad(r.scope, 8) + Pad(r.video, video_w) + Pad(r.object, object_w) +
           Pad(Fixed4(r.jf), 8) + Pad(Fixed4(r.j), 8) + Fixed4(r.f) + "\n";
  }
  return out;
}

std::string RenderRankTable(const std::vector<RankRow>& rows) {
  std::size_t name_w = 8;
  for (const auto& r : rows) name_w = std::max(name_w, r.strategy.size());
  name_w += 2;
  std::string out =
      Pad("rank", 6) + Pad("strategy", name_w) + Pad("J&F", 8) + Pad("J", 8) + "F\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out += Pad(std::to_string(i + 1), 6) + Pad(r.strategy, name_w) +
           Pad(Fixed4(r.jf), 8) + Pad(Fixed4(r.j), 8) + Fixed4(r.f) + "\n";
  }
  return out;
}

}  // namespace fusevos::cli
