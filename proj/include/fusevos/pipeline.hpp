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

#ifndef FUSEVOS_PIPELINE_HPP
#define FUSEVOS_PIPELINE_HPP

#include <string>
#include <vector>

#include "fusevos/fusion.hpp"
#include "fusevos/metrics.hpp"

namespace fusevos {

struct StrategyScore {
  Strategy strategy = Strategy::kConfidenceGuided;
  double j = 0.0;
  double f = 0.0;
  double jf = 0.0;
};

struct Comparison {
  /// Ranked by J&F, best first; equal scores keep the
  /// confidence_guided, average, max order.
  std::vector<StrategyScore> ranking;
  std::vector<FusionReport> reports;  // per strategy, in run order
  std::vector<Evaluation> evaluations;

  std::string to_json() const;
};

/// Runs all three strategies with `weights` (tau from `tau`, or the default
/// when tau <= 0), writes fused masks to out_dir/<strategy>/ and scores each
/// against gt_dir.
Comparison compare_strategies(const ZooManifest& manifest, const fs::path& gt_dir,
                              const std::vector<double>& weights, double tau,
                              const EvalOptions& eval_options,
                              const fs::path& out_dir, unsigned threads = 1);

}  // namespace fusevos

#endif  // FUSEVOS_PIPELINE_HPP
