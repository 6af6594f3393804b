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
#include <functional>
#include <random>

#include "fusevos/error.hpp"
#include "fusevos/losses.hpp"

namespace fusevos {
namespace {

// Probabilities stay away from the clamp so p +- step never reaches it.
constexpr double kMinProb = 0.02;
constexpr double kMaxProb = 0.98;

std::uint64_t SplitMix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

struct Case {
  std::vector<double> probs;
  std::vector<std::uint8_t> targets;
  double gamma;
  double alpha;
  double smooth;
};

Case MakeCase(std::uint64_t seed, std::size_t max_size) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size(1, max_size);
  std::uniform_real_distribution<double> prob(kMinProb, kMaxProb);
  std::bernoulli_distribution coin(0.5);
  Case c;
  const std::size_t n = size(rng);
  for (std::size_t i = 0; i < n; ++i) {
    c.probs.push_back(prob(rng));
    c.targets.push_back(coin(rng) ? 1 : 0);
  }
  c.gamma = std::uniform_real_distribution<double>(0.0, 3.0)(rng);
  c.alpha = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  c.smooth = std::uniform_real_distribution<double>(0.1, 2.0)(rng);
  return c;
}

using VectorKernel = std::function<LossResult(const SoftPrediction&, const Case&)>;

double CheckVector(const VectorKernel& kernel, const Case& c, double step,
                   bool perturb) {
  LossResult analytic = kernel(SoftPrediction(c.probs, c.targets), c);
  if (perturb) analytic.gradient[0] += 1e-2 * (1.0 + std::fabs(analytic.gradient[0]));
  double worst = 0.0;
  std::vector<double> probs = c.probs;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double p0 = probs[i];
    probs[i] = p0 + step;
    const double up = kernel(SoftPrediction(probs, c.targets), c).value;
    probs[i] = p0 - step;
    const double down = kernel(SoftPrediction(probs, c.targets), c).value;
    probs[i] = p0;
    const double numeric = (up - down) / (2.0 * step);
    worst = std::max(worst, GradientRelativeError(analytic.gradient[i], numeric));
  }
  return worst;
}

double CheckCls(const Case& c, double step, bool perturb) {
  const double p = c.probs[0];
  const bool t = c.targets[0] != 0;
  double analytic = cls_loss(p, t).gradient;
  if (perturb) analytic += 1e-2 * (1.0 + std::fabs(analytic));
  const double numeric =
      (cls_loss(p + step, t).value - cls_loss(p - step, t).value) / (2.0 * step);
  return GradientRelativeError(analytic, numeric);
}

}  // namespace

double GradientRelativeError(double analytic, double numeric) {
  const double scale = std::max({std::fabs(analytic), std::fabs(numeric), 1e-6});
  return std::fabs(analytic - numeric) / scale;
}

std::vector<GradcheckRow> run_gradcheck(const GradcheckOptions& options) {
  if (options.cases == 0 || options.max_size == 0) {
    Fail(ErrorKind::kInvalidInput, "gradcheck needs at least one case of size >= 1");
  }
  const std::vector<std::pair<std::string, VectorKernel>> kernels = {
      {"focal", [](const SoftPrediction& sp, const Case& c) {
         return focal_loss(sp, c.gamma, c.alpha);
       }},
      {"dice", [](const SoftPrediction& sp, const Case& c) {
         return dice_loss(sp, c.smooth);
       }},
      {"iou", [](const SoftPrediction& sp, const Case& c) {
         return iou_loss(sp, c.smooth);
       }},
  };
  const std::vector<std::string> names = {"focal", "dice", "iou", "cls"};
  if (!options.perturb_kernel.empty() &&
      std::find(names.begin(), names.end(), options.perturb_kernel) == names.end()) {
    Fail(ErrorKind::kInvalidInput, "unknown kernel \"" + options.perturb_kernel + "\"");
  }

  std::vector<GradcheckRow> rows;
  for (std::size_t k = 0; k < names.size(); ++k) {
    GradcheckRow row;
    row.kernel = names[k];
    row.cases = options.cases;
    const bool perturb = options.perturb_kernel == names[k];
    for (std::size_t i = 0; i < options.cases; ++i) {
      const std::uint64_t case_seed = SplitMix(options.seed * 0x100000001B3ull + k * 7919 + i);
      const Case c = MakeCase(case_seed, options.max_size);
      const double err = k < kernels.size()
                             ? CheckVector(kernels[k].second, c, options.step, perturb)
                             : CheckCls(c, options.step, perturb);
      if (i == 0 || err > row.max_rel_error) {
        row.max_rel_error = err;
        row.worst_case_seed = case_seed;
      }
    }
    row.passed = row.max_rel_error < options.tolerance;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace fusevos
