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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "fusevos/metrics.hpp"

namespace fusevos {
namespace {

void RequireSameShape(const BinaryMask& a, const BinaryMask& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    Fail(ErrorKind::kInvalidInput,
         "dimension mismatch: " + std::to_string(a.width()) + "x" +
             std::to_string(a.height()) + " vs " + std::to_string(b.width()) +
             "x" + std::to_string(b.height()));
  }
}

// Summed-area table with a zero guard row/column: box counts in O(1).
class BoxCounter {
 public:
  explicit BoxCounter(const BinaryMask& mask)
      : w_(mask.width()), h_(mask.height()),
        sat_((static_cast<std::size_t>(w_) + 1) * (h_ + 1), 0) {
    for (std::uint32_t y = 0; y < h_; ++y) {
      std::uint32_t row = 0;
      for (std::uint32_t x = 0; x < w_; ++x) {
        row += mask.at(x, y) ? 1 : 0;
        cell(x + 1, y + 1) = cell(x + 1, y) + row;
      }
    }
  }

  // Any set pixel within Chebyshev distance r of (x, y)?
  bool any_within(std::uint32_t x, std::uint32_t y, std::uint32_t r) const {
    const std::uint32_t x0 = x > r ? x - r : 0;
    const std::uint32_t y0 = y > r ? y - r : 0;
    const std::uint32_t x1 = std::min<std::uint64_t>(std::uint64_t{x} + r + 1, w_);
    const std::uint32_t y1 = std::min<std::uint64_t>(std::uint64_t{y} + r + 1, h_);
    const std::uint32_t total = at(x1, y1) + at(x0, y0) - at(x0, y1) - at(x1, y0);
    return total > 0;
  }

 private:
  std::uint32_t& cell(std::uint32_t x, std::uint32_t y) {
    return sat_[static_cast<std::size_t>(y) * (w_ + 1) + x];
  }
  std::uint32_t at(std::uint32_t x, std::uint32_t y) const {
    return sat_[static_cast<std::size_t>(y) * (w_ + 1) + x];
  }

  std::uint32_t w_;
  std::uint32_t h_;
  std::vector<std::uint32_t> sat_;
};

// Counts boundary pixels of `from` that have a pixel of `to` within r.
std::pair<std::size_t, std::size_t> MatchBoundary(const BinaryMask& from,
                                                  const BoxCounter& to,
                                                  std::uint32_t r) {
  std::size_t matched = 0;
  std::size_t unmatched = 0;
  for (std::uint32_t y = 0; y < from.height(); ++y) {
    for (std::uint32_t x = 0; x < from.width(); ++x) {
      if (!from.at(x, y)) continue;
      if (to.any_within(x, y, r)) {
        ++matched;
      } else {
        ++unmatched;
      }
    }
  }
  return {matched, unmatched};
}

}  // namespace

BinaryMask::BinaryMask(std::uint32_t width, std::uint32_t height)
    : width_(width), height_(height),
      bits_(static_cast<std::size_t>(width) * height, 0) {}

BinaryMask::BinaryMask(std::uint32_t width, std::uint32_t height,
                       std::vector<std::uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
  if (bits_.size() != static_cast<std::size_t>(width) * height) {
    Fail(ErrorKind::kInvalidInput, "binary mask size does not match dimensions");
  }
  for (auto& b : bits_) b = b ? 1 : 0;
}

std::size_t BinaryMask::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

BinaryMask binarize(const LabelMask& mask, ObjectId id) {
  BinaryMask out(mask.width(), mask.height());
  auto bits = out.bits();
  auto labels = mask.labels();
  for (std::size_t i = 0; i < labels.size(); ++i) bits[i] = labels[i] == id;
  return out;
}

BinaryMask flip_horizontal(const BinaryMask& mask) {
  BinaryMask out = mask;
  FlipRowsInPlace(out.bits(), out.width(), out.height());
  return out;
}

double jaccard(const BinaryMask& p, const BinaryMask& g) {
  RequireSameShape(p, g);
  std::size_t inter = 0;
  std::size_t uni = 0;
  auto a = p.bits();
  auto b = g.bits();
  for (std::size_t i = 0; i < a.size(); ++i) {
    inter += a[i] & b[i];
    uni += a[i] | b[i];
  }
  if (uni == 0) return 1.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

BinaryMask extract_boundary(const BinaryMask& mask) {
  const std::uint32_t w = mask.width();
  const std::uint32_t h = mask.height();
  BinaryMask out(w, h);
  for (std::uint32_t y = 0; y < h; ++y) {
    for (std::uint32_t x = 0; x < w; ++x) {
      if (!mask.at(x, y)) continue;
      const bool edge = x == 0 || y == 0 || x + 1 == w || y + 1 == h;
      if (edge || !mask.at(x - 1, y) || !mask.at(x + 1, y) ||
          !mask.at(x, y - 1) || !mask.at(x, y + 1)) {
        out.set(x, y);
      }
    }
  }
  return out;
}

BinaryMask dilate_square(const BinaryMask& mask, std::uint32_t radius) {
  const BoxCounter counter(mask);
  BinaryMask out(mask.width(), mask.height());
  for (std::uint32_t y = 0; y < mask.height(); ++y) {
    for (std::uint32_t x = 0; x < mask.width(); ++x) {
      if (counter.any_within(x, y, radius)) out.set(x, y);
    }
  }
  return out;
}

double BoundaryMatchCounts::precision() const {
  const std::size_t n = tp + fp;
  return n == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(n);
}

double BoundaryMatchCounts::recall() const {
  const std::size_t n = tp_gt + fn;
  return n == 0 ? 1.0 : static_cast<double>(tp_gt) / static_cast<double>(n);
}

BoundaryMatchCounts boundary_match(const BinaryMask& p, const BinaryMask& g,
                                   std::uint32_t tol) {
  RequireSameShape(p, g);
  const BinaryMask pb = extract_boundary(p);
  const BinaryMask gb = extract_boundary(g);
  BoundaryMatchCounts counts;
  std::tie(counts.tp, counts.fp) = MatchBoundary(pb, BoxCounter(gb), tol);
  std::tie(counts.tp_gt, counts.fn) = MatchBoundary(gb, BoxCounter(pb), tol);
  return counts;
}

double boundary_f(const BinaryMask& p, const BinaryMask& g, std::uint32_t tol) {
  const BoundaryMatchCounts c = boundary_match(p, g, tol);
  const bool pred_empty = c.tp + c.fp == 0;
  const bool gt_empty = c.tp_gt + c.fn == 0;
  if (pred_empty && gt_empty) return 1.0;
  if (pred_empty || gt_empty) return 0.0;
  const double precision = c.precision();
  const double recall = c.recall();
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

std::uint32_t default_boundary_tolerance(std::uint32_t width,
                                         std::uint32_t height) {
  const double diagonal = std::hypot(static_cast<double>(width),
                                     static_cast<double>(height));
  return static_cast<std::uint32_t>(std::ceil(0.008 * diagonal));
}

double jf_mean(double j, double f) {
  if (!(j >= 0.0 && j <= 1.0) || !(f >= 0.0 && f <= 1.0)) {
    Fail(ErrorKind::kInvalidInput, "J and F must lie in [0,1]");
  }
  return (j + f) / 2.0;
}

std::string format_half_up(double value, int decimals) {
  if (decimals < 0 || decimals > 9) {
    Fail(ErrorKind::kInvalidInput, "format_half_up supports 0..9 decimals");
  }
  if (!std::isfinite(value)) return std::to_string(value);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10f", std::fabs(value));
  std::string text(buf);
  const std::size_t dot = text.find('.');
  // Digits kept (integer part + `decimals` fractional digits), no dot.
  std::string digits = text.substr(0, dot) + text.substr(dot + 1, decimals);
  const bool round_up = text[dot + 1 + decimals] >= '5';
  if (round_up) {
    int i = static_cast<int>(digits.size()) - 1;
    for (; i >= 0; --i) {
      if (digits[i] == '9') {
        digits[i] = '0';
      } else {
        ++digits[i];
        break;
      }
    }
    if (i < 0) digits.insert(digits.begin(), '1');
  }
  const std::size_t int_len = digits.size() - decimals;
  std::string out = digits.substr(0, int_len);
  if (decimals > 0) out += "." + digits.substr(int_len);
  const bool is_zero = out.find_first_not_of("0.") == std::string::npos;
  if (value < 0 && !is_zero) out.insert(out.begin(), '-');
  return out;
}

}  // namespace fusevos
