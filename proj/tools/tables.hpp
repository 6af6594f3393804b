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


#ifndef FUSEVOS_TOOLS_TABLES_HPP
#define FUSEVOS_TOOLS_TABLES_HPP

#include <string>
#include <vector>

namespace fusevos::cli {

struct ScoreRow {
  std::string scope;   // "object", "video" or "global"
  std::string video;   // "-" when not applicable
  std::string object;  // "-" when not applicable
  double jf = 0.0;
  double j = 0.0;
  double f = 0.0;
};

struct RankRow {
  std::string strategy;
  double jf = 0.0;
  double j = 0.0;
  double f = 0.0;
};

// Four decimals, round half up.
std::string Fixed4(double value);

std::string RenderScoreTable(const std::vector<ScoreRow>& rows);
std::string RenderRankTable(const std::vector<RankRow>& rows);

}  // namespace fusevos::cli

#endif  // FUSEVOS_TOOLS_TABLES_HPP
