/*
 * Copyright 2026 The f1ev Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Subcommands of the f1ev command-line tool. Each returns the process exit
// code: 0 on success (possibly with warnings on `err`), 2 on input or usage
// errors.

#ifndef F1EV_COMMANDS_H_
#define F1EV_COMMANDS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "f1ev/dataset_io.h"
#include "f1ev/metrics.h"

namespace f1ev::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;

enum class OutputFormat { kTable, kCsv, kJsonl };

// Accepts "table", "csv", "jsonl".
std::optional<OutputFormat> ParseOutputFormat(std::string_view name);

struct RunConfig {
  double alpha = kDefaultAlpha;
  double pauc_p = kDefaultPaucMaxFpr;
  OutputFormat format = OutputFormat::kTable;
};

// One line of the evaluate table. Absent values could not be computed; the
// reason is listed in `flags`.
struct EvaluateRow {
  std::string machine;
  std::optional<double> auc;
  std::optional<double> pauc;
  // Harmonic mean of auc and pauc.
  std::optional<double> hmean;
  std::optional<double> f1_ev;
  std::optional<double> bounded_f1_ev;
  std::optional<double> optimal_f1;
  std::optional<double> theta_opt;
  std::optional<double> f1_at_submitted;
  std::vector<std::string> flags;
};

// Per-machine rows followed by an "overall" row: auc and pauc aggregate by
// harmonic mean, hmean is the harmonic mean over every auc and pauc value,
// the F1 measures aggregate by arithmetic mean.
std::vector<EvaluateRow> BuildEvaluateRows(
    const std::vector<EvaluationSet>& sets,
    const std::optional<io::ThresholdMap>& thresholds, const RunConfig& config,
    std::vector<std::string>* warnings);

struct EvaluateArgs {
  std::filesystem::path scores;
  std::filesystem::path truth;
  std::optional<std::filesystem::path> thresholds;
  RunConfig config;
};

int CmdEvaluate(const EvaluateArgs& args, std::ostream& out,
                std::ostream& err);

struct CompareArgs {
  std::filesystem::path cohort_dir;
  std::filesystem::path truth;
  // When set, per-point scatter data is written to <scatter_dir>/scatter.csv.
  std::optional<std::filesystem::path> scatter_dir;
  RunConfig config;
};

int CmdCompare(const CompareArgs& args, std::ostream& out, std::ostream& err);

inline const std::vector<double> kDefaultAblationAlphas = {0.05, 0.1, 0.2,
                                                           0.5,  1.0, 2.0};

struct AblateArgs {
  std::filesystem::path cohort_dir;
  std::filesystem::path truth;
  std::vector<double> alphas = kDefaultAblationAlphas;
  RunConfig config;
};

int CmdAblate(const AblateArgs& args, std::ostream& out, std::ostream& err);

struct CurvesArgs {
  std::filesystem::path scores;
  std::filesystem::path truth;
  std::string machine;
  RunConfig config;
};

// CSV with columns series,label,x,y:
//   f1,,threshold,F1          step breakpoints of the F1 curve
//   roc,threshold,fpr,tpr     ROC points (endpoints carry inf / -inf)
//   marker,<name>,value,F1    theta_min, theta_max and theta_opt
int CmdCurves(const CurvesArgs& args, std::ostream& out, std::ostream& err);

struct SynthArgs {
  // A toy kind name ("small-margin", ...) or "cohort".
  std::string scenario;
  std::size_t n_normal = 100;
  std::size_t n_anomalous = 100;
  std::size_t n_systems = 50;
  std::uint64_t seed = 42;
  std::filesystem::path out_dir;
};

// Toy scenarios write scores.csv and ground_truth.csv; the cohort writes
// ground_truth.csv and per-system <id>_scores.csv / <id>_thresholds.csv.
int CmdSynth(const SynthArgs& args, std::ostream& out, std::ostream& err);

}  // namespace f1ev::cli

#endif  // F1EV_COMMANDS_H_
