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

#include "fusevos/losses.hpp"

#include <algorithm>
#include <cmath>

#include "fusevos/error.hpp"

namespace fusevos {

double ClampProbability(double p) {
  return std::clamp(p, kProbabilityEpsilon, 1.0 - kProbabilityEpsilon);
}

void LossWeights::validate() const {
  for (double w : {focal, dice, iou, cls}) {
    if (!std::isfinite(w) || w < 0.0) {
      Fail(ErrorKind::kInvalidInput, "loss weights must be finite and >= 0");
    }
  }
}

SoftPrediction::SoftPrediction(std::span<const double> probs,
                               std::span<const std::uint8_t> targets)
    : targets_(targets.begin(), targets.end()) {
  if (probs.size() != targets.size()) {
    Fail(ErrorKind::kInvalidInput, "probs and targets differ in length");
  }
  probs_.reserve(probs.size());
  for (double p : probs) {
    if (!std::isfinite(p)) Fail(ErrorKind::kInvalidInput, "non-finite probability");
    probs_.push_back(ClampProbability(p));
  }
  for (auto t : targets_) {
    if (t > 1) Fail(ErrorKind::kInvalidInput, "targets must be 0 or 1");
  }
}

LossResult focal_loss(const SoftPrediction& sp, double gamma, double alpha) {
  if (!std::isfinite(gamma) || gamma < 0.0) {
    Fail(ErrorKind::kInvalidInput, "focal gamma must be >= 0");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    Fail(ErrorKind::kInvalidInput, "focal alpha must lie in [0,1]");
  }
  const std::size_t n = sp.size();
  LossResult r;
  r.gradient.resize(n);
  if (n == 0) return r;
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double p = sp.probs()[i];
    if (sp.targets()[i]) {
      const double q = 1.0 - p;
      const double mod = std::pow(q, gamma);
      const double logp = std::log(p);
      r.value += -alpha * mod * logp;
      const double dmod = gamma == 0.0 ? 0.0 : gamma * std::pow(q, gamma - 1.0);
      r.gradient[i] = alpha * (dmod * logp - mod / p) * inv_n;
    } else {
      const double mod = std::pow(p, gamma);
      const double log1mp = std::log1p(-p);
      r.value += -(1.0 - alpha) * mod * log1mp;
      const double dmod = gamma == 0.0 ? 0.0 : gamma * std::pow(p, gamma - 1.0);
      r.gradient[i] = -(1.0 - alpha) * (dmod * log1mp - mod / (1.0 - p)) * inv_n;
    }
  }
  r.value *= inv_n;
  return r;
}

LossResult dice_loss(const SoftPrediction& sp, double smooth) {
  if (!(smooth > 0.0) || !std::isfinite(smooth)) {
    Fail(ErrorKind::kInvalidInput, "dice smooth must be > 0");
  }
  double inter = 0.0;
  double sum_p = 0.0;
  double sum_t = 0.0;
  for (std::size_t i = 0; i < sp.size(); ++i) {
    const double t = sp.targets()[i];
    inter += sp.probs()[i] * t;
    sum_p += sp.probs()[i];
    sum_t += t;
  }
  const double num = 2.0 * inter + smooth;
  const double den = sum_p + sum_t + smooth;
  LossResult r;
  r.value = 1.0 - num / den;
  r.gradient.resize(sp.size());
  for (std::size_t i = 0; i < sp.size(); ++i) {
    const double t = sp.targets()[i];
    r.gradient[i] = -(2.0 * t * den - num) / (den * den);
  }
  return r;
}

LossResult iou_loss(const SoftPrediction& sp, double smooth) {
  if (!(smooth > 0.0) || !std::isfinite(smooth)) {
    Fail(ErrorKind::kInvalidInput, "iou smooth must be > 0");
  }
  double inter = 0.0;
  double sum_p = 0.0;
  double sum_t = 0.0;
  for (std::size_t i = 0; i < sp.size(); ++i) {
    const double t = sp.targets()[i];
    inter += sp.probs()[i] * t;
    sum_p += sp.probs()[i];
    sum_t += t;
  }
  const double num = inter + smooth;
  const double den = sum_p + sum_t - inter + smooth;
  LossResult r;
  r.value = 1.0 - num / den;
  r.gradient.resize(sp.size());
  for (std::size_t i = 0; i < sp.size(); ++i) {
    const double t = sp.targets()[i];
    // d num/dp = t, d den/dp = 1 - t.
    r.gradient[i] = -(t * den - num * (1.0 - t)) / (den * den);
  }
  return r;
}

ScalarLossResult cls_loss(double pred_presence, bool target_presence) {
  if (!std::isfinite(pred_presence)) {
    Fail(ErrorKind::kInvalidInput, "non-finite presence probability");
  }
  const double p = ClampProbability(pred_presence);
  ScalarLossResult r;
  if (target_presence) {
    r.value = -std::log(p);
    r.gradient = -1.0 / p;
  } else {
    r.value = -std::log1p(-p);
    r.gradient = 1.0 / (1.0 - p);
  }
  return r;
}

TotalLossResult total_loss(const SoftPrediction& sp, double pred_presence,
                           bool target_presence, const LossWeights& weights,
                           const LossHyperparameters& hyper) {
  weights.validate();
  const LossResult focal = focal_loss(sp, hyper.gamma, hyper.alpha);
  const LossResult dice = dice_loss(sp, hyper.dice_smooth);
  const LossResult iou = iou_loss(sp, hyper.iou_smooth);
  const ScalarLossResult cls = cls_loss(pred_presence, target_presence);

  TotalLossResult r;
  r.value = weights.focal * focal.value + weights.dice * dice.value +
            weights.iou * iou.value + weights.cls * cls.value;
  r.gradient.resize(sp.size());
  for (std::size_t i = 0; i < sp.size(); ++i) {
    r.gradient[i] = weights.focal * focal.gradient[i] +
                    weights.dice * dice.gradient[i] +
                    weights.iou * iou.gradient[i];
  }
  r.presence_gradient = weights.cls * cls.gradient;
  return r;
}

}  // namespace fusevos
