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

// Segmentation training losses with analytic gradients with respect to the
// predicted probabilities:
//
//   total = l_focal * focal + l_dice * dice + l_iou * iou + l_cls * cls
//
// Inputs are probabilities (not logits), clamped to [eps, 1 - eps]. Pixel
// reductions are arithmetic means in index order.

#ifndef FUSEVOS_LOSSES_HPP
#define FUSEVOS_LOSSES_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fusevos {

inline constexpr double kProbabilityEpsilon = 1e-7;

double ClampProbability(double p);

struct LossWeights {
  double focal = 1.0;
  double dice = 1.0;
  double iou = 1.0;
  double cls = 1.0;

  void validate() const;
  LossWeights scaled(double a) const { return {a * focal, a * dice, a * iou, a * cls}; }
};

struct LossHyperparameters {
  double gamma = 2.0;
  double alpha = 0.25;
  double dice_smooth = 1.0;
  double iou_smooth = 1.0;
};

/// Clamped probabilities paired with binary targets of the same length.
class SoftPrediction {
 public:
  SoftPrediction(std::span<const double> probs,
                 std::span<const std::uint8_t> targets);

  std::span<const double> probs() const noexcept { return probs_; }
  std::span<const std::uint8_t> targets() const noexcept { return targets_; }
  std::size_t size() const noexcept { return probs_.size(); }

 private:
  std::vector<double> probs_;
  std::vector<std::uint8_t> targets_;
};

struct LossResult {
  double value = 0.0;
  std::vector<double> gradient;  // d value / d probs
};

struct ScalarLossResult {
  double value = 0.0;
  double gradient = 0.0;
};

/// Mean of -alpha (1-p)^gamma log p (target 1) and
/// -(1-alpha) p^gamma log(1-p) (target 0).
LossResult focal_loss(const SoftPrediction& sp, double gamma, double alpha);

/// 1 - (2 sum(p t) + s) / (sum(p) + sum(t) + s).
LossResult dice_loss(const SoftPrediction& sp, double smooth);

/// Soft IoU: 1 - (sum(p t) + s) / (sum(p) + sum(t) - sum(p t) + s).
LossResult iou_loss(const SoftPrediction& sp, double smooth);

/// Binary cross-entropy on the frame-level presence probability.
ScalarLossResult cls_loss(double pred_presence, bool target_presence);

struct TotalLossResult {
  double value = 0.0;
  std::vector<double> gradient;   // d total / d probs
  double presence_gradient = 0.0;  // d total / d pred_presence
};

TotalLossResult total_loss(const SoftPrediction& sp, double pred_presence,
                           bool target_presence, const LossWeights& weights,
                           const LossHyperparameters& hyper = {});

// ---------------------------------------------------------------------------
// Finite-difference gradient check

struct GradcheckOptions {
  std::uint64_t seed = 0;
  std::size_t cases = 100;
  std::size_t max_size = 64;
  double step = 1e-5;
  double tolerance = 1e-4;
  /// Test hook: corrupt the analytic gradient of this kernel.
  std::string perturb_kernel;
};

struct GradcheckRow {
  std::string kernel;
  std::size_t cases = 0;
  double max_rel_error = 0.0;
  std::uint64_t worst_case_seed = 0;
  bool passed = false;
};

/// Relative error |a - n| / max(|a|, |n|, 1e-6).
double GradientRelativeError(double analytic, double numeric);

/// Runs central differences over focal, dice, iou and cls with random
/// inputs (sizes 1..max_size). Each case is reproducible from its seed.
std::vector<GradcheckRow> run_gradcheck(const GradcheckOptions& options);

}  // namespace fusevos

#endif  // FUSEVOS_LOSSES_HPP
