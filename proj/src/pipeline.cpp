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

#include "fusevos/pipeline.hpp"

#include <algorithm>

#include "json.hpp"

namespace fusevos {

Comparison compare_strategies(const ZooManifest& manifest, const fs::path& gt_dir,
                              const std::vector<double>& weights, double tau,
                              const EvalOptions& eval_options,
                              const fs::path& out_dir, unsigned threads) {
  Comparison out;
  EvalOptions opts = eval_options;
  opts.threads = threads;
  for (Strategy strategy :
       {Strategy::kConfidenceGuided, Strategy::kAverage, Strategy::kMax}) {
    FusionConfig cfg = FusionConfig::WithDefaultTau(strategy, weights);
    if (tau > 0.0) cfg.tau = tau;
    const fs::path dir = out_dir / ToString(strategy);
    out.reports.push_back(fuse_sequence(manifest, cfg, dir, threads));
    out.evaluations.push_back(
        evaluate_sequence(dir, gt_dir, manifest.objects, opts, manifest.sequence_name));
    const EvalSummary& s = out.evaluations.back().summary;
    out.ranking.push_back({strategy, s.j, s.f, s.jf});
  }
  std::stable_sort(out.ranking.begin(), out.ranking.end(),
                   [](const StrategyScore& a, const StrategyScore& b) {
                     return a.jf > b.jf;
                   });
  return out;
}

std::string Comparison::to_json() const {
  nlohmann::json doc = nlohmann::json::array();
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    const auto& r = ranking[i];
    doc.push_back({{"rank", i + 1},
                   {"strategy", ToString(r.strategy)},
                   {"J&F", r.jf},
                   {"J", r.j},
                   {"F", r.f}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace fusevos
