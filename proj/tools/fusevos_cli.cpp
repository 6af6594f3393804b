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


#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fusevos/fusevos.h"
#include "tables.hpp"

namespace {

namespace fs = std::filesystem;
using fusevos::cli::RankRow;
using fusevos::cli::ScoreRow;

constexpr int kExitUsage = 2;
constexpr int kExitManifest = 3;
constexpr int kExitMissingData = 4;
constexpr int kExitInternal = 5;

struct Failure {
  int code;
  std::string message;
};

int ExitCodeFor(fusevos_status status) {
  switch (status) {
    case FUSEVOS_OK: return 0;
    case FUSEVOS_ERR_INVALID_ARGUMENT: return kExitUsage;
    case FUSEVOS_ERR_MANIFEST: return kExitManifest;
    case FUSEVOS_ERR_MISSING_DATA:
    case FUSEVOS_ERR_FORMAT: return kExitMissingData;
    case FUSEVOS_ERR_IO:
    case FUSEVOS_ERR_INTERNAL: return kExitInternal;
  }
  return kExitInternal;
}

void Check(fusevos_status status) {
  if (status != FUSEVOS_OK) throw Failure{ExitCodeFor(status), fusevos_last_error()};
}

std::string OneLine(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
template <typename T, void (*Free)(T*)>
using Handle = std::unique_ptr<T, Deleter<T, Free>>;

using Manifest = Handle<fusevos_manifest, fusevos_manifest_free>;
using Config = Handle<fusevos_fusion_config, fusevos_fusion_config_free>;
using Report = Handle<fusevos_fusion_report, fusevos_fusion_report_free>;
using Evaluation = Handle<fusevos_evaluation, fusevos_evaluation_free>;
using ComparisonH = Handle<fusevos_comparison, fusevos_comparison_free>;
using Gradcheck = Handle<fusevos_gradcheck, fusevos_gradcheck_free>;
using Strings = Handle<fusevos_strings, fusevos_strings_free>;

void PrintWarnings(fusevos_strings* raw) {
  Strings list(raw);
  for (std::size_t i = 0; i < fusevos_strings_size(list.get()); ++i) {
    std::cerr << "warning: " << OneLine(fusevos_strings_get(list.get(), i)) << "\n";
  }
}

Manifest LoadManifest(const std::string& path) {
  fusevos_manifest* raw = nullptr;
  const fusevos_status st = fusevos_manifest_load(path.c_str(), &raw);
  if (st != FUSEVOS_OK) {
    // Whatever goes wrong while loading, the manifest is what the user must fix.
    throw Failure{st == FUSEVOS_ERR_INVALID_ARGUMENT ? kExitUsage : kExitManifest,
                  fusevos_last_error()};
  }
  Manifest m(raw);
  fusevos_strings* warnings = nullptr;
  Check(fusevos_manifest_warnings(m.get(), &warnings));
  PrintWarnings(warnings);
  return m;
}

unsigned ParseThreads(const std::string& text, const char* source) {
  if (text == "auto") return 0;
  try {
    std::size_t used = 0;
    const unsigned long v = std::stoul(text, &used);
    if (used == text.size() && v <= 4096) return static_cast<unsigned>(v);
  } catch (const std::exception&) {
  }
  throw Failure{kExitUsage, std::string("invalid thread count \"") + text +
                                "\" from " + source};
}

unsigned ResolveThreads(const std::optional<std::string>& flag) {
  if (flag) return ParseThreads(*flag, "--threads");
  if (const char* env = std::getenv("FUSEVOS_THREADS"); env && *env) {
    return ParseThreads(env, "FUSEVOS_THREADS");
  }
  return 0;
}

fusevos_strategy ParseStrategyName(const std::string& name) {
  fusevos_strategy s{};
  if (fusevos_strategy_parse(name.c_str(), &s) != FUSEVOS_OK) {
    throw Failure{kExitUsage, fusevos_last_error()};
  }
  return s;
}

std::vector<double> ManifestWeights(const fusevos_manifest* m) {
  std::vector<double> w;
  for (std::size_t i = 0; i < fusevos_manifest_num_models(m); ++i) {
    w.push_back(fusevos_manifest_model_weight(m, i));
  }
  return w;
}

void WriteText(const fs::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.close();
  if (!out) throw Failure{kExitInternal, "cannot write " + path.string()};
}

std::string Number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct FuseArgs {
  std::string manifest;
  std::string strategy = "confidence";
  std::optional<double> tau;
  std::vector<double> weights;
  std::string out;
  std::optional<std::string> threads;
};

int RunFuse(const FuseArgs& a) {
  Manifest m = LoadManifest(a.manifest);
  const fusevos_strategy strategy = ParseStrategyName(a.strategy);
  const std::vector<double> weights = a.weights.empty() ? ManifestWeights(m.get()) : a.weights;
  fusevos_fusion_config* raw_cfg = nullptr;
  Check(fusevos_fusion_config_create(strategy, weights.data(), weights.size(), &raw_cfg));
  Config cfg(raw_cfg);
  if (a.tau) Check(fusevos_fusion_config_set_tau(cfg.get(), *a.tau));
  fusevos_fusion_report* raw_report = nullptr;
  Check(fusevos_fuse_sequence(m.get(), cfg.get(), a.out.c_str(),
                              ResolveThreads(a.threads), &raw_report));
  Report report(raw_report);
  std::size_t contested = 0;
  const std::size_t frames = fusevos_fusion_report_num_frames(report.get());
  for (std::size_t f = 0; f < frames; ++f) {
    contested += fusevos_fusion_report_contested_pixels(report.get(), f);
  }
  std::cout << "fused " << frames << " frames with " << fusevos_strategy_name(strategy)
            << " (tau " << Number(fusevos_fusion_config_tau(cfg.get())) << ") into "
            << a.out << "\n"
            << "contested pixels: " << contested << "\n";
  return 0;
}

struct EvalArgs {
  std::string pred;
  std::string gt;
  std::vector<std::uint32_t> objects;
  std::optional<std::int32_t> tolerance;
  std::string out;
  std::optional<std::string> threads;
};

std::vector<ScoreRow> ScoreRows(const fusevos_evaluation* e) {
  std::vector<ScoreRow> rows;
  for (std::size_t i = 0; i < fusevos_evaluation_num_objects(e); ++i) {
    const char* video = nullptr;
    std::uint32_t id = 0;
    ScoreRow r;
    Check(fusevos_evaluation_object(e, i, &video, &id, &r.j, &r.f, &r.jf));
    r.scope = "object";
    r.video = video;
    r.object = std::to_string(id);
    rows.push_back(r);
  }
  for (std::size_t i = 0; i < fusevos_evaluation_num_videos(e); ++i) {
    const char* video = nullptr;
    ScoreRow r;
    Check(fusevos_evaluation_video(e, i, &video, &r.j, &r.f, &r.jf));
    r.scope = "video";
    r.video = video;
    r.object = "-";
    rows.push_back(r);
  }
  rows.push_back({"global", "-", "-", fusevos_evaluation_jf(e),
                  fusevos_evaluation_j(e), fusevos_evaluation_f(e)});
  return rows;
}

int RunEval(const EvalArgs& a) {
  fusevos_evaluation* raw = nullptr;
  Check(fusevos_evaluate(a.pred.c_str(), a.gt.c_str(),
                         a.objects.empty() ? nullptr : a.objects.data(),
                         a.objects.size(), a.tolerance.value_or(-1),
                         ResolveThreads(a.threads), &raw));
  Evaluation e(raw);
  fusevos_strings* warnings = nullptr;
  Check(fusevos_evaluation_warnings(e.get(), &warnings));
  PrintWarnings(warnings);
  const fs::path out = a.out.empty() ? fs::path(a.pred) : fs::path(a.out);
  WriteText(out / "eval_summary.json", fusevos_evaluation_json(e.get()));
  WriteText(out / "eval_records.csv", fusevos_evaluation_csv(e.get()));
  std::cout << fusevos::cli::RenderScoreTable(ScoreRows(e.get()));
  return 0;
}

struct CompareArgs {
  std::string manifest;
  std::string gt;
  std::vector<double> weights;
  std::optional<double> tau;
  std::optional<std::int32_t> tolerance;
  std::string out;
  std::optional<std::string> threads;
};

int RunCompare(const CompareArgs& a) {
  Manifest m = LoadManifest(a.manifest);
  fusevos_comparison* raw = nullptr;
  Check(fusevos_compare(m.get(), a.gt.c_str(),
                        a.weights.empty() ? nullptr : a.weights.data(),
                        a.weights.size(), a.tau.value_or(0.0),
                        a.tolerance.value_or(-1), a.out.c_str(),
                        ResolveThreads(a.threads), &raw));
  ComparisonH c(raw);
  std::vector<RankRow> rows;
  for (std::size_t i = 0; i < fusevos_comparison_size(c.get()); ++i) {
    fusevos_strategy s{};
    RankRow r;
    Check(fusevos_comparison_row(c.get(), i, &s, &r.j, &r.f, &r.jf));
    r.strategy = fusevos_strategy_name(s);
    rows.push_back(r);
  }
  WriteText(fs::path(a.out) / "comparison.json", fusevos_comparison_json(c.get()));
  std::cout << fusevos::cli::RenderRankTable(rows);
  return 0;
}

struct GradcheckArgs {
  std::uint64_t seed = 0;
  std::size_t cases = 100;
  std::string perturb;
};

int RunGradcheck(const GradcheckArgs& a) {
  fusevos_gradcheck* raw = nullptr;
  Check(fusevos_run_gradcheck(a.seed, a.cases,
                              a.perturb.empty() ? nullptr : a.perturb.c_str(), &raw));
  Gradcheck g(raw);
  std::cout << "kernel  max_rel_error  worst_seed            status\n";
  std::string failure;
  for (std::size_t i = 0; i < fusevos_gradcheck_size(g.get()); ++i) {
    const char* kernel = nullptr;
    double err = 0.0;
    std::uint64_t worst = 0;
    int passed = 0;
    Check(fusevos_gradcheck_row(g.get(), i, &kernel, &err, &worst, &passed));
    char line[160];
    std::snprintf(line, sizeof(line), "%-7s %-14.6e %-21llu %s\n", kernel, err,
                  static_cast<unsigned long long>(worst), passed ? "ok" : "FAIL");
    std::cout << line;
    if (!passed && failure.empty()) {
      failure = std::string("gradient check failed for kernel ") + kernel +
                " (case seed " + std::to_string(worst) + ", max relative error " +
                Number(err) + ")";
    }
  }
  std::cout.flush();
  if (!failure.empty()) {
    std::cerr << "error: " << failure << "\n";
    return 1;
  }
  return 0;
}

int RunValidate(const std::string& manifest_path, bool shallow) {
  Manifest m = LoadManifest(manifest_path);
  fusevos_strings* raw = nullptr;
  Check(fusevos_manifest_validate(m.get(), shallow ? 0 : 1, &raw));
  Strings violations(raw);
  const std::size_t n = fusevos_strings_size(violations.get());
  for (std::size_t i = 0; i < n; ++i) {
    std::cout << OneLine(fusevos_strings_get(violations.get(), i)) << "\n";
  }
  if (n > 0) {
    std::cout.flush();
    std::cerr << "error: " << manifest_path << ": " << n << " violation"
              << (n == 1 ? "" : "s") << "\n";
    return kExitManifest;
  }
  std::cout << manifest_path << ": ok\n";
  return 0;
}

struct FixtureArgs {
  std::string out;
  std::uint64_t seed = 1;
  std::uint32_t width = 64;
  std::uint32_t height = 64;
  std::uint32_t frames = 10;
  std::uint32_t objects = 2;
};

int RunGenFixture(const FixtureArgs& a) {
  Check(fusevos_generate_fixture(a.out.c_str(), a.seed, a.width, a.height,
                                 a.frames, a.objects));
  std::cout << "wrote fixture to " << a.out << "\n";
  return 0;
}

void AddThreads(CLI::App* cmd, std::optional<std::string>* threads) {
  cmd->add_option("--threads", *threads,
                  "Worker threads, an integer or \"auto\" (default: $FUSEVOS_THREADS, "
                  "else auto)");
}

void AddTolerance(CLI::App* cmd, std::optional<std::int32_t>* tolerance) {
  cmd->add_option("--tolerance", *tolerance,
                  "Boundary match tolerance in pixels (default: "
                  "ceil(0.008 * image diagonal))")
      ->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-model confidence fusion and evaluation for video object "
               "segmentation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(fusevos_version()));

  FuseArgs fuse;
  auto* fuse_cmd = app.add_subcommand("fuse", "Fuse per-model confidence volumes into masks");
  fuse_cmd->add_option("--manifest", fuse.manifest, "Model zoo manifest (JSON)")->required();
  fuse_cmd->add_option("--strategy", fuse.strategy,
                       "confidence (alias confidence_guided), average or max")
      ->capture_default_str();
  fuse_cmd->add_option("--tau", fuse.tau,
                       "Foreground threshold on the weighted vote (default: "
                       "0.5 * sum(weights))");
  fuse_cmd->add_option("--weights", fuse.weights,
                       "Comma-separated model weights in manifest order "
                       "(default: manifest weights)")
      ->delimiter(',');
  fuse_cmd->add_option("--out", fuse.out, "Output directory")->required();
  AddThreads(fuse_cmd, &fuse.threads);

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Score predicted masks against ground truth");
  eval_cmd->add_option("--pred", eval.pred, "Predicted masks (video dir or dataset root)")
      ->required();
  eval_cmd->add_option("--gt", eval.gt, "Ground-truth masks, same layout as --pred")
      ->required();
  eval_cmd->add_option("--objects", eval.objects,
                       "Comma-separated object ids (default: ids present in ground truth)")
      ->delimiter(',');
  AddTolerance(eval_cmd, &eval.tolerance);
  eval_cmd->add_option("--out", eval.out,
                       "Directory for eval_summary.json and eval_records.csv "
                       "(default: --pred)");
  AddThreads(eval_cmd, &eval.threads);

  CompareArgs cmp;
  auto* cmp_cmd = app.add_subcommand("compare", "Run and rank all fusion strategies");
  cmp_cmd->add_option("--manifest", cmp.manifest, "Model zoo manifest (JSON)")->required();
  cmp_cmd->add_option("--gt", cmp.gt, "Ground-truth mask directory")->required();
  cmp_cmd->add_option("--weights", cmp.weights,
                      "Comma-separated model weights (default: manifest weights)")
      ->delimiter(',');
  cmp_cmd->add_option("--tau", cmp.tau,
                      "Confidence-guided threshold (default: 0.5 * sum(weights))");
  AddTolerance(cmp_cmd, &cmp.tolerance);
  cmp_cmd->add_option("--out", cmp.out, "Output directory, one subdirectory per strategy")
      ->required();
  AddThreads(cmp_cmd, &cmp.threads);

  GradcheckArgs grad;
  auto* grad_cmd = app.add_subcommand("gradcheck", "Finite-difference check of the loss gradients");
  grad_cmd->add_option("--seed", grad.seed, "Base seed")->capture_default_str();
  grad_cmd->add_option("--cases", grad.cases, "Random inputs per kernel")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  grad_cmd->add_option("--perturb", grad.perturb, "Corrupt one kernel's gradient")
      ->group("");

  std::string validate_manifest;
  bool shallow = false;
  auto* val_cmd = app.add_subcommand("validate", "Check a manifest and every file it references");
  val_cmd->add_option("--manifest", validate_manifest, "Model zoo manifest (JSON)")
      ->required();
  val_cmd->add_flag("--shallow", shallow, "Check file presence only, without decoding");

  FixtureArgs fix;
  auto* fix_cmd = app.add_subcommand("gen-fixture", "Write the seeded synthetic benchmark");
  fix_cmd->group("");
  fix_cmd->add_option("--out", fix.out, "Output directory")->required();
  fix_cmd->add_option("--seed", fix.seed)->capture_default_str();
  fix_cmd->add_option("--width", fix.width)->capture_default_str();
  fix_cmd->add_option("--height", fix.height)->capture_default_str();
  fix_cmd->add_option("--frames", fix.frames)->capture_default_str();
  fix_cmd->add_option("--objects", fix.objects)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << OneLine(e.what()) << "\n";
    return kExitUsage;
  }

  try {
    if (*fuse_cmd) return RunFuse(fuse);
    if (*eval_cmd) return RunEval(eval);
    if (*cmp_cmd) return RunCompare(cmp);
    if (*grad_cmd) return RunGradcheck(grad);
    if (*val_cmd) return RunValidate(validate_manifest, shallow);
    if (*fix_cmd) return RunGenFixture(fix);
  } catch (const Failure& f) {
    std::cout.flush();
    std::cerr << "error: " << OneLine(f.message) << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << OneLine(e.what()) << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
