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
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "fusevos/error.hpp"
#include "fusevos/losses.hpp"

namespace fusevos {
namespace {

constexpr double kEps = kProbabilityEpsilon;

struct Input {
  std::vector<double> probs;
  std::vector<std::uint8_t> targets;
};

Input RandomInput(std::mt19937_64& rng, double lo = 0.02, double hi = 0.98) {
  Input in;
  const std::size_t n = 1 + rng() % 64;
  std::uniform_real_distribution<double> p(lo, hi);
  for (std::size_t i = 0; i < n; ++i) {
    in.probs.push_back(p(rng));
    in.targets.push_back(rng() % 2 ? 1 : 0);
  }
  return in;
}

double MeanBce(const Input& in) {
  double s = 0.0;
  for (std::size_t i = 0; i < in.probs.size(); ++i) {
    const double p = in.probs[i];
    s += in.targets[i] ? -std::log(p) : -std::log(1.0 - p);
  }
  return s / static_cast<double>(in.probs.size());
}

// Central differences straight on the loss value.
template <typename F>
std::vector<double> NumericGradient(const Input& in, F value, double h = 1e-5) {
  std::vector<double> g(in.probs.size());
  Input probe = in;
  for (std::size_t i = 0; i < in.probs.size(); ++i) {
    probe.probs[i] = in.probs[i] + h;
    const double up = value(SoftPrediction(probe.probs, probe.targets));
    probe.probs[i] = in.probs[i] - h;
    const double down = value(SoftPrediction(probe.probs, probe.targets));
    probe.probs[i] = in.probs[i];
    g[i] = (up - down) / (2.0 * h);
  }
  return g;
}

double RelError(double a, double n) {
  return std::fabs(a - n) / std::max({std::fabs(a), std::fabs(n), 1e-6});
}

TEST(Focal, ConfidentCorrectPixelCostsAlmostNothing) {
  const std::vector<double> p{0.999};
  const std::vector<std::uint8_t> t{1};
  EXPECT_LE(focal_loss(SoftPrediction(p, t), 2.0, 0.25).value, 1e-3);
}

TEST(Focal, GammaZeroHalfAlphaIsHalfBce) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const Input in = RandomInput(rng, 0.001, 0.999);
    const double v = focal_loss(SoftPrediction(in.probs, in.targets), 0.0, 0.5).value;
    EXPECT_NEAR(v, 0.5 * MeanBce(in), 1e-12);
  }
}

TEST(Focal, PerPixelValueFallsAsTheTargetGetsEasier) {
  const std::vector<std::uint8_t> t{1};
  for (double gamma : {0.5, 1.0, 2.0, 3.0}) {
    double prev = INFINITY;
    for (int k = 1; k <= 99; ++k) {
      const std::vector<double> p{k / 100.0};
      const double v = focal_loss(SoftPrediction(p, t), gamma, 0.25).value;
      EXPECT_LT(v, prev) << "gamma " << gamma << " p " << p[0];
      prev = v;
    }
  }
  const std::vector<double> hard{0.6};
  const std::vector<double> easy{0.99};
  EXPECT_GT(focal_loss(SoftPrediction(hard, t), 2.0, 0.25).value,
            focal_loss(SoftPrediction(easy, t), 2.0, 0.25).value);
}

TEST(Focal, RejectsBadHyperparameters) {
  const std::vector<double> p{0.5};
  const std::vector<std::uint8_t> t{1};
  EXPECT_THROW(focal_loss(SoftPrediction(p, t), -1.0, 0.25), Error);
  EXPECT_THROW(focal_loss(SoftPrediction(p, t), 2.0, 1.5), Error);
  EXPECT_THROW(dice_loss(SoftPrediction(p, t), 0.0), Error);
  EXPECT_THROW(iou_loss(SoftPrediction(p, t), -1.0), Error);
}

TEST(SoftPrediction, ClampsAndValidates) {
  const std::vector<double> p{0.0, 1.0, 0.3};
  const std::vector<std::uint8_t> t{0, 1, 1};
  const SoftPrediction sp(p, t);
  EXPECT_EQ(sp.probs()[0], kEps);
  EXPECT_EQ(sp.probs()[1], 1.0 - kEps);
  EXPECT_EQ(sp.probs()[2], 0.3);
  const std::vector<std::uint8_t> short_t{0};
  EXPECT_THROW(SoftPrediction(p, short_t), Error);
  const std::vector<std::uint8_t> bad_t{0, 2, 1};
  EXPECT_THROW(SoftPrediction(p, bad_t), Error);
}

TEST(Dice, PerfectMatchLimit) {
  const std::vector<std::uint8_t> t{1, 1, 0, 1};
  std::vector<double> p(t.begin(), t.end());
  EXPECT_LE(dice_loss(SoftPrediction(p, t), 1.0).value, 2 * kEps);
}

TEST(Dice, AllMissedHandValue) {
  const std::vector<double> p(4, 0.0);
  const std::vector<std::uint8_t> t(4, 1);
  const double v = dice_loss(SoftPrediction(p, t), 1.0).value;
  EXPECT_NEAR(v, 1.0 - (8 * kEps + 1.0) / (4 * kEps + 5.0), 1e-15);
  EXPECT_NEAR(v, 0.8, 1e-6);
}

TEST(Iou, PerfectMatchAndHalfOverlap) {
  const std::vector<std::uint8_t> t{1, 0, 1};
  std::vector<double> p(t.begin(), t.end());
  EXPECT_LE(iou_loss(SoftPrediction(p, t), 1.0).value, 1e-6);
  const std::vector<double> p2{1.0, 1.0};
  const std::vector<std::uint8_t> t2{1, 0};
  EXPECT_NEAR(iou_loss(SoftPrediction(p2, t2), 1e-6).value, 0.5, 1e-3);
}

TEST(Cls, ClosedForms) {
  EXPECT_NEAR(cls_loss(0.5, true).value, std::log(2.0), 1e-15);
  EXPECT_NEAR(cls_loss(1.0, true).value, kEps, 1e-12);
  EXPECT_NEAR(cls_loss(0.0, false).value, kEps, 1e-12);
  for (double p : {0.1, 0.37, 0.5, 0.93}) {
    EXPECT_DOUBLE_EQ(cls_loss(p, true).gradient, -1.0 / p);
    const double h = 1e-5;
    const double numeric = (cls_loss(p + h, true).value - cls_loss(p - h, true).value) / (2 * h);
    EXPECT_LT(RelError(cls_loss(p, true).gradient, numeric), 1e-4);
    const double numeric0 = (cls_loss(p + h, false).value - cls_loss(p - h, false).value) / (2 * h);
    EXPECT_LT(RelError(cls_loss(p, false).gradient, numeric0), 1e-4);
  }
}

TEST(Gradients, MatchCentralDifferences) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const Input in = RandomInput(rng);
    const double gamma = std::uniform_real_distribution<double>(0.0, 3.0)(rng);
    const double alpha = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const double smooth = std::uniform_real_distribution<double>(0.1, 2.0)(rng);
    const SoftPrediction sp(in.probs, in.targets);
    const auto focal = focal_loss(sp, gamma, alpha).gradient;
    const auto dice = dice_loss(sp, smooth).gradient;
    const auto iou = iou_loss(sp, smooth).gradient;
    const auto nf = NumericGradient(in, [&](const SoftPrediction& s) {
      return focal_loss(s, gamma, alpha).value;
    });
    const auto nd = NumericGradient(in, [&](const SoftPrediction& s) {
      return dice_loss(s, smooth).value;
    });
    const auto ni = NumericGradient(in, [&](const SoftPrediction& s) {
      return iou_loss(s, smooth).value;
    });
    for (std::size_t i = 0; i < in.probs.size(); ++i) {
      EXPECT_LT(RelError(focal[i], nf[i]), 1e-4) << trial;
      EXPECT_LT(RelError(dice[i], nd[i]), 1e-4) << trial;
      EXPECT_LT(RelError(iou[i], ni[i]), 1e-4) << trial;
    }
  }
}

TEST(Losses, FiniteAndNonNegative) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    Input in = RandomInput(rng, 0.0, 1.0);
    for (auto& p : in.probs) {
      if (rng() % 8 == 0) p = (rng() % 2) ? 0.0 : 1.0;
    }
    const SoftPrediction sp(in.probs, in.targets);
    for (double v : {focal_loss(sp, 2.0, 0.25).value, dice_loss(sp, 1.0).value,
                     iou_loss(sp, 1.0).value, cls_loss(in.probs[0], in.targets[0]).value}) {
      EXPECT_TRUE(std::isfinite(v));
      EXPECT_GE(v, 0.0);
    }
  }
}

TEST(Losses, DiceAndIouIgnorePixelOrder) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    Input in = RandomInput(rng);
    std::vector<std::size_t> order(in.probs.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    Input shuffled;
    for (std::size_t i : order) {
      shuffled.probs.push_back(in.probs[i]);
      shuffled.targets.push_back(in.targets[i]);
    }
    const SoftPrediction a(in.probs, in.targets);
    const SoftPrediction b(shuffled.probs, shuffled.targets);
    EXPECT_NEAR(dice_loss(a, 1.0).value, dice_loss(b, 1.0).value, 1e-12);
    EXPECT_NEAR(iou_loss(a, 1.0).value, iou_loss(b, 1.0).value, 1e-12);
  }
}

TEST(TotalLoss, ZeroWeightsAndProjection) {
  std::mt19937_64 rng(5);
  const Input in = RandomInput(rng);
  const SoftPrediction sp(in.probs, in.targets);
  const TotalLossResult zero = total_loss(sp, 0.3, true, {0, 0, 0, 0});
  EXPECT_EQ(zero.value, 0.0);
  EXPECT_EQ(zero.presence_gradient, 0.0);
  for (double g : zero.gradient) EXPECT_EQ(g, 0.0);

  const LossHyperparameters hyper;
  const TotalLossResult focal_only = total_loss(sp, 0.3, true, {1, 0, 0, 0}, hyper);
  const LossResult focal = focal_loss(sp, hyper.gamma, hyper.alpha);
  EXPECT_EQ(focal_only.value, focal.value);
  EXPECT_EQ(focal_only.gradient, focal.gradient);
  EXPECT_THROW(total_loss(sp, 0.3, true, {1, -1, 0, 0}), Error);
}

TEST(TotalLoss, WeightedSumOfComponentsAndLinearity) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> lam(0.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Input in = RandomInput(rng);
    const SoftPrediction sp(in.probs, in.targets);
    const LossWeights w{lam(rng), lam(rng), lam(rng), lam(rng)};
    LossHyperparameters hyper;
    hyper.gamma = std::uniform_real_distribution<double>(0.0, 3.0)(rng);
    hyper.alpha = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const double presence = std::uniform_real_distribution<double>(0.01, 0.99)(rng);
    const bool target = rng() % 2;
    const TotalLossResult total = total_loss(sp, presence, target, w, hyper);
    const double expected = w.focal * focal_loss(sp, hyper.gamma, hyper.alpha).value +
                            w.dice * dice_loss(sp, hyper.dice_smooth).value +
                            w.iou * iou_loss(sp, hyper.iou_smooth).value +
                            w.cls * cls_loss(presence, target).value;
    EXPECT_NEAR(total.value, expected, 1e-12);
    EXPECT_NEAR(total.presence_gradient, w.cls * cls_loss(presence, target).gradient, 1e-12);

    const double a = std::uniform_real_distribution<double>(0.0, 4.0)(rng);
    const TotalLossResult scaled = total_loss(sp, presence, target, w.scaled(a), hyper);
    EXPECT_NEAR(scaled.value, a * total.value, 1e-12);
    for (std::size_t i = 0; i < sp.size(); ++i) {
      EXPECT_NEAR(scaled.gradient[i], a * total.gradient[i], 1e-12);
    }
  }
}

TEST(Gradcheck, DefaultRunPassesForEveryKernel) {
  const auto rows = run_gradcheck({});
  ASSERT_EQ(rows.size(), 4u);
  const char* names[] = {"focal", "dice", "iou", "cls"};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(rows[i].kernel, names[i]);
    EXPECT_EQ(rows[i].cases, 100u);
    EXPECT_TRUE(rows[i].passed) << rows[i].kernel << " " << rows[i].max_rel_error;
    EXPECT_LT(rows[i].max_rel_error, 1e-4);
  }
}

TEST(Gradcheck, IsDeterministicPerSeed) {
  GradcheckOptions opt;
  opt.seed = 7;
  const auto a = run_gradcheck(opt);
  const auto b = run_gradcheck(opt);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].max_rel_error, b[i].max_rel_error);
    EXPECT_EQ(a[i].worst_case_seed, b[i].worst_case_seed);
  }
}

TEST(Gradcheck, PerturbedKernelFails) {
  for (const char* kernel : {"focal", "dice", "iou", "cls"}) {
    GradcheckOptions opt;
    opt.perturb_kernel = kernel;
    for (const auto& row : run_gradcheck(opt)) {
      EXPECT_EQ(row.passed, row.kernel != kernel) << kernel << " " << row.kernel;
    }
  }
  GradcheckOptions bad;
  bad.perturb_kernel = "hinge";
  EXPECT_THROW(run_gradcheck(bad), Error);
}

}  // namespace
}  // namespace fusevos
