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


// Deliberately naive reference implementations: nested loops straight from
// the definitions, no summed-area tables, no dilation, long double sums.

#ifndef FUSEVOS_TESTS_ORACLES_HPP
#define FUSEVOS_TESTS_ORACLES_HPP

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <vector>

#include "fusevos/core.hpp"
#include "fusevos/metrics.hpp"

namespace fusevos::oracle {

inline double Jaccard(const BinaryMask& p, const BinaryMask& g) {
  std::size_t inter = 0;
  std::size_t uni = 0;
  for (std::uint32_t y = 0; y < p.height(); ++y) {
    for (std::uint32_t x = 0; x < p.width(); ++x) {
      if (p.at(x, y) && g.at(x, y)) ++inter;
      if (p.at(x, y) || g.at(x, y)) ++uni;
    }
  }
  if (uni == 0) return 1.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

inline bool IsBoundary(const BinaryMask& m, std::uint32_t x, std::uint32_t y) {
  if (!m.at(x, y)) return false;
  const int dx[4] = {1, -1, 0, 0};
  const int dy[4] = {0, 0, 1, -1};
  for (int k = 0; k < 4; ++k) {
    const int nx = static_cast<int>(x) + dx[k];
    const int ny = static_cast<int>(y) + dy[k];
    if (nx < 0 || ny < 0 || nx >= static_cast<int>(m.width()) ||
        ny >= static_cast<int>(m.height())) {
      return true;
    }
    if (!m.at(static_cast<std::uint32_t>(nx), static_cast<std::uint32_t>(ny))) return true;
  }
  return false;
}

struct Point {
  int x;
  int y;
};

inline std::vector<Point> BoundaryPoints(const BinaryMask& m) {
  std::vector<Point> pts;
  for (std::uint32_t y = 0; y < m.height(); ++y) {
    for (std::uint32_t x = 0; x < m.width(); ++x) {
      if (IsBoundary(m, x, y)) pts.push_back({static_cast<int>(x), static_cast<int>(y)});
    }
  }
  return pts;
}

inline std::size_t MatchedCount(const std::vector<Point>& from,
                                const std::vector<Point>& to, int tol) {
  std::size_t matched = 0;
  for (const Point& a : from) {
    for (const Point& b : to) {
      if (std::abs(a.x - b.x) <= tol && std::abs(a.y - b.y) <= tol) {
        ++matched;
        break;
      }
    }
  }
  return matched;
}

inline double BoundaryF(const BinaryMask& p, const BinaryMask& g, int tol) {
  const auto pb = BoundaryPoints(p);
  const auto gb = BoundaryPoints(g);
  if (pb.empty() && gb.empty()) return 1.0;
  if (pb.empty() || gb.empty()) return 0.0;
  const double precision =
      static_cast<double>(MatchedCount(pb, gb, tol)) / static_cast<double>(pb.size());
  const double recall =
      static_cast<double>(MatchedCount(gb, pb, tol)) / static_cast<double>(gb.size());
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

inline float Conf(const std::vector<ConfidenceVolume>& volumes, std::size_t m,
                  ObjectId id, std::size_t px) {
  for (const auto& plane : volumes[m].planes) {
    if (plane.object_id == id) return plane.values[px];
  }
  std::abort();
}

inline LabelMask FuseConfidenceGuided(const std::vector<ConfidenceVolume>& volumes,
                                      const std::vector<double>& weights, double tau,
                                      const ObjectSet& objects) {
  const auto& ids = objects.ids();
  const std::uint32_t w = volumes[0].width;
  const std::uint32_t h = volumes[0].height;
  std::vector<ObjectId> out(static_cast<std::size_t>(w) * h, kBackground);
  for (std::size_t px = 0; px < out.size(); ++px) {
    long double score = 0.0L;
    for (std::size_t m = 0; m < volumes.size(); ++m) {
      float best = 0.0f;
      for (ObjectId id : ids) best = std::max(best, Conf(volumes, m, id, px));
      score += static_cast<long double>(weights[m]) * best;
    }
    if (!(score > static_cast<long double>(tau))) continue;

    std::vector<long double> votes(ids.size(), 0.0L);
    std::vector<long double> sums(ids.size(), 0.0L);
    bool anyone_voted = false;
    for (std::size_t m = 0; m < volumes.size(); ++m) {
      std::size_t arg = 0;
      for (std::size_t o = 0; o < ids.size(); ++o) {
        if (Conf(volumes, m, ids[o], px) > Conf(volumes, m, ids[arg], px)) arg = o;
      }
      if (Conf(volumes, m, ids[arg], px) >= 0.5f) {
        anyone_voted = true;
        votes[arg] += weights[m];
      }
      for (std::size_t o = 0; o < ids.size(); ++o) {
        sums[o] += static_cast<long double>(weights[m]) * Conf(volumes, m, ids[o], px);
      }
    }
    std::size_t winner = 0;
    for (std::size_t o = 1; o < ids.size(); ++o) {
      bool better;
      if (anyone_voted) {
        better = votes[o] > votes[winner] ||
                 (votes[o] == votes[winner] && sums[o] > sums[winner]);
      } else {
        better = sums[o] > sums[winner];
      }
      if (better) winner = o;
    }
    out[px] = ids[winner];
  }
  return LabelMask(w, h, std::move(out));
}

inline LabelMask FuseAverage(const std::vector<ConfidenceVolume>& volumes,
                             const std::vector<double>& weights,
                             const ObjectSet& objects) {
  const auto& ids = objects.ids();
  const std::uint32_t w = volumes[0].width;
  const std::uint32_t h = volumes[0].height;
  long double total = 0.0L;
  for (double x : weights) total += x;
  std::vector<ObjectId> out(static_cast<std::size_t>(w) * h, kBackground);
  for (std::size_t px = 0; px < out.size(); ++px) {
    long double best = -1.0L;
    ObjectId best_id = kBackground;
    for (ObjectId id : ids) {
      long double s = 0.0L;
      for (std::size_t m = 0; m < volumes.size(); ++m) {
        s += static_cast<long double>(weights[m]) * Conf(volumes, m, id, px);
      }
      const long double a = s / total;
      if (a > best) {
        best = a;
        best_id = id;
      }
    }
    out[px] = best > 0.5L ? best_id : kBackground;
  }
  return LabelMask(w, h, std::move(out));
}

inline LabelMask FuseMax(const std::vector<ConfidenceVolume>& volumes,
                         const std::vector<double>& weights,
                         const ObjectSet& objects) {
  const auto& ids = objects.ids();
  const std::uint32_t w = volumes[0].width;
  const std::uint32_t h = volumes[0].height;
  std::vector<ObjectId> out(static_cast<std::size_t>(w) * h, kBackground);
  for (std::size_t px = 0; px < out.size(); ++px) {
    float best = -1.0f;
    ObjectId best_id = kBackground;
    for (ObjectId id : ids) {
      float a = 0.0f;
      for (std::size_t m = 0; m < volumes.size(); ++m) {
        if (weights[m] != 0.0) a = std::max(a, Conf(volumes, m, id, px));
      }
      if (a > best) {
        best = a;
        best_id = id;
      }
    }
    out[px] = best > 0.5f ? best_id : kBackground;
  }
  return LabelMask(w, h, std::move(out));
}

// Pixels where the per-model thresholded argmax labels are not all equal.
inline std::size_t ContestedPixels(const std::vector<ConfidenceVolume>& volumes,
                                   const ObjectSet& objects) {
  const std::vector<double> one{1.0};
  std::vector<LabelMask> labels;
  for (const auto& v : volumes) labels.push_back(FuseAverage({v}, one, objects));
  std::size_t n = 0;
  for (std::size_t px = 0; px < labels[0].size(); ++px) {
    for (const auto& l : labels) {
      if (l.labels()[px] != labels[0].labels()[px]) {
        ++n;
        break;
      }
    }
  }
  return n;
}

}  // namespace fusevos::oracle

#endif  // FUSEVOS_TESTS_ORACLES_HPP
