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

// f1ev: evaluate anomaly scores with AUC, pAUC, F1-EV and bounded F1-EV.

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "f1ev/commands.h"

namespace {

using f1ev::cli::OutputFormat;

const std::map<std::string, OutputFormat> kFormats = {
    {"table", OutputFormat::kTable},
    {"csv", OutputFormat::kCsv},
    {"jsonl", OutputFormat::kJsonl}};

void AddConfigOptions(CLI::App* app, f1ev::cli::RunConfig& config) {
  app->add_option("--alpha", config.alpha,
                  "Width of the bounded threshold range in normal-score "
                  "standard deviations")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app->add_option("--pauc-p", config.pauc_p,
                  "Upper FPR limit of the partial AUC")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  app->add_option("--format", config.format, "Output format")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case))
      ->default_str("table");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Threshold-independent anomaly detection measures"};
  app.require_subcommand(1);

  f1ev::cli::EvaluateArgs evaluate;
  std::string evaluate_thresholds;
  auto* evaluate_cmd =
      app.add_subcommand("evaluate", "Per-machine measures for one system");
  evaluate_cmd->add_option("--scores", evaluate.scores, "clip_id,score CSV")
      ->required();
  evaluate_cmd
      ->add_option("--truth", evaluate.truth,
                   "clip_id,label,domain,machine CSV")
      ->required();
  evaluate_cmd->add_option("--thresholds", evaluate_thresholds,
                           "machine,threshold CSV of submitted thresholds");
  AddConfigOptions(evaluate_cmd, evaluate.config);

  f1ev::cli::CompareArgs compare;
  std::string compare_out;
  auto* compare_cmd = app.add_subcommand(
      "compare", "Pearson correlations between measures across a cohort");
  compare_cmd->add_option("--cohort", compare.cohort_dir,
                          "Directory of <system>_scores.csv files")
      ->required();
  compare_cmd->add_option("--truth", compare.truth, "Ground-truth CSV")
      ->required();
  compare_cmd->add_option("--out", compare_out,
                          "Directory for scatter.csv (per-point measures)");
  AddConfigOptions(compare_cmd, compare.config);

  f1ev::cli::AblateArgs ablate;
  auto* ablate_cmd = app.add_subcommand(
      "ablate", "Correlations of bounded F1-EV as alpha varies");
  ablate_cmd->add_option("--cohort", ablate.cohort_dir,
                         "Directory of <system>_scores.csv files")
      ->required();
  ablate_cmd->add_option("--truth", ablate.truth, "Ground-truth CSV")
      ->required();
  ablate_cmd->add_option("--alphas", ablate.alphas, "Comma-separated alphas")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  AddConfigOptions(ablate_cmd, ablate.config);

  f1ev::cli::CurvesArgs curves;
  auto* curves_cmd = app.add_subcommand(
      "curves", "F1 step curve, ROC points and bound markers as CSV");
  curves_cmd->add_option("--scores", curves.scores, "clip_id,score CSV")
      ->required();
  curves_cmd->add_option("--truth", curves.truth, "Ground-truth CSV")
      ->required();
  curves_cmd->add_option("--machine", curves.machine, "Machine type")
      ->required();
  AddConfigOptions(curves_cmd, curves.config);

  f1ev::cli::SynthArgs synth;
  auto* synth_cmd =
      app.add_subcommand("synth", "Generate toy score sets or a cohort");
  synth_cmd
      ->add_option("--scenario", synth.scenario,
                   "small-margin, large-margin, point-threshold or cohort")
      ->required();
  synth_cmd->add_option("--n-normal", synth.n_normal)->capture_default_str();
  synth_cmd->add_option("--n-anomalous", synth.n_anomalous)
      ->capture_default_str();
  synth_cmd->add_option("--systems", synth.n_systems, "Cohort size")
      ->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed)->capture_default_str();
  synth_cmd->add_option("--out", synth.out_dir, "Output directory")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : f1ev::cli::kExitUsage;
  }

  if (*evaluate_cmd) {
    if (!evaluate_thresholds.empty()) evaluate.thresholds = evaluate_thresholds;
    return f1ev::cli::CmdEvaluate(evaluate, std::cout, std::cerr);
  }
  if (*compare_cmd) {
    if (!compare_out.empty()) compare.scatter_dir = compare_out;
    return f1ev::cli::CmdCompare(compare, std::cout, std::cerr);
  }
  if (*ablate_cmd) return f1ev::cli::CmdAblate(ablate, std::cout, std::cerr);
  if (*curves_cmd) return f1ev::cli::CmdCurves(curves, std::cout, std::cerr);
  return f1ev::cli::CmdSynth(synth, std::cout, std::cerr);
}
