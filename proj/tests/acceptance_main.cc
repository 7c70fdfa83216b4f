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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "f1ev/cohort.h"
#include "f1ev/commands.h"
#include "f1ev/error.h"
#include "f1ev/metrics.h"
#include "f1ev/synth.h"
#include "json.hpp"

namespace f1ev {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool pass = true;
  std::string detail;

  void Check(bool condition, const std::string& what) {
    if (!condition && pass) {
      pass = false;
      detail = what;
    }
  }
};

std::string Fmt(const char* format, double a, double b = 0, double c = 0,
                double d = 0) {
  char buffer[256];
  std::snprintf(buffer, sizeof(buffer), format, a, b, c, d);
  return buffer;
}

// The 500 seeded random sets shared by criteria 1 and 2: sizes 2-100, ties
// injected with probability 0.3.
std::vector<EvaluationSet> SharedRandomSets() {
  synth::Rng rng(20260101);
  std::vector<EvaluationSet> sets;
  for (int i = 0; i < 500; ++i) sets.push_back(synth::GenerateRandomSet(rng));
  return sets;
}

bool HasDistinctScores(const EvaluationSet& set) {
  for (const auto& s : set.samples()) {
    if (s.score != set.samples().front().score) return true;
  }
  return false;
}

Outcome AucOracle() {
  Outcome o;
  double worst = 0;
  for (const auto& set : SharedRandomSets()) {
    worst = std::max(worst, std::abs(AucRoc(ComputeRocCurve(set)) -
                                     oracle::PairwiseAuc(set)));
  }
  o.Check(worst <= 1e-10, Fmt("max |auc - pairwise| = %.3g", worst));
  if (o.pass) o.detail = Fmt("500 sets, max |auc - pairwise| = %.3g", worst);
  return o;
}

Outcome F1EvOracle() {
  Outcome o;
  double worst_event = 0;
  double worst_grid = 0;
  int evaluated = 0;
  for (const auto& set : SharedRandomSets()) {
    if (!HasDistinctScores(set)) continue;
    ++evaluated;
    const double value = F1Ev(set);
    worst_event =
        std::max(worst_event, std::abs(oracle::EventGridF1Ev(set) - value));
    worst_grid = std::max(worst_grid,
                          std::abs(oracle::GridF1Ev(set, 1'000'000) - value));
  }
  o.Check(worst_event <= 1e-12, Fmt("event grid off by %.3g", worst_event));
  o.Check(worst_grid <= 1e-3, Fmt("uniform grid off by %.3g", worst_grid));
  if (o.pass) {
    o.detail = Fmt("%.0f sets, event grid %.3g, uniform grid %.3g", evaluated,
                   worst_event, worst_grid);
  }
  return o;
}

Outcome WorkedExample() {
  Outcome o;
  const auto e1 = EvaluationSet::FromScores(std::vector<double>{1, 2},
                                            std::vector<double>{8, 9});
  const MetricReport r = Evaluate(e1, {.alpha = 0.2, .pauc_max_fpr = 0.1, .submitted_threshold = {}});
  const double grid = oracle::GridBoundedF1Ev(e1, 0.2, 1'000'000);
  o.Check(r.auc == 1.0, Fmt("auc = %.17g", r.auc));
  o.Check(std::abs(r.f1_ev - 0.933333) <= 1e-6 &&
              std::abs(r.f1_ev - 14.0 / 15.0) <= 1e-9,
          Fmt("f1_ev = %.17g", r.f1_ev));
  o.Check(r.theta_opt == 5.0, Fmt("theta_opt = %.17g", r.theta_opt));
  o.Check(std::abs(r.bounded_f1_ev - 0.96609) <= 1e-4,
          Fmt("bounded = %.17g", r.bounded_f1_ev));
  o.Check(std::abs(grid - r.bounded_f1_ev) <= 1e-4,
          Fmt("grid oracle bounded = %.17g", grid));
  if (o.pass) {
    o.detail = Fmt("auc 1, f1_ev %.6f, theta_opt %.1f, bounded %.5f",
                   r.f1_ev, r.theta_opt, r.bounded_f1_ev);
  }
  return o;
}

Outcome ToyRegimes() {
  Outcome o;
  int bounded_wins = 0;
  int narrower = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    using synth::ToyKind;
    const auto small = synth::GenerateToy({ToyKind::kSmallMargin, 100, 100, seed});
    const auto large = synth::GenerateToy({ToyKind::kLargeMargin, 100, 100, seed});
    const auto point =
        synth::GenerateToy({ToyKind::kPointThreshold, 100, 100, seed});
    for (const auto* set : {&small, &large, &point}) {
      o.Check(AucRoc(ComputeRocCurve(*set)) == 1.0,
              Fmt("auc < 1 at seed %.0f", static_cast<double>(seed)));
    }
    bounded_wins += ComputeBoundedF1Ev(large, kDefaultAlpha).value >
                    ComputeBoundedF1Ev(small, kDefaultAlpha).value;
    narrower += ComputeOptimalInterval(ComputeF1Curve(point)).width() <
                ComputeOptimalInterval(ComputeF1Curve(small)).width();
  }
  o.Check(bounded_wins >= 95, Fmt("large > small in %.0f/100", bounded_wins));
  o.Check(narrower >= 95, Fmt("point narrower in %.0f/100", narrower));
  if (o.pass) {
    o.detail = Fmt("auc 1 in 300/300, large > small %.0f/100, point narrower "
                   "%.0f/100",
                   bounded_wins, narrower);
  }
  return o;
}

Outcome TwoThirds() {
  Outcome o;
  double worst = 0;
  for (std::size_t per_domain : {1u, 10u, 100u, 1000u}) {
    std::vector<ScoreSample> samples;
    for (std::size_t i = 0; i < per_domain; ++i) {
      const std::string k = std::to_string(i);
      samples.push_back({"sn" + k, 0.5, Label::kNormal, Domain::kSource});
      samples.push_back({"tn" + k, 2.0, Label::kNormal, Domain::kTarget});
      samples.push_back({"sa" + k, 9.0, Label::kAnomalous, Domain::kSource});
      samples.push_back({"ta" + k, 1.0, Label::kAnomalous, Domain::kTarget});
    }
    const EvaluationSet set("two_domain", samples);
    const auto counts = ConfusionAt(set, 5.0);
    o.Check(counts.fp == 0 && counts.tp == per_domain &&
                counts.fn == per_domain,
            "construction does not have precision 1 with one domain missed");
    worst = std::max(worst, std::abs(F1At(set, 5.0) - 2.0 / 3.0));
  }
  o.Check(worst <= 1e-12, Fmt("|F1 - 2/3| = %.3g", worst));
  if (o.pass) o.detail = Fmt("max |F1 - 2/3| = %.3g", worst);
  return o;
}

Outcome CohortDirection() {
  Outcome o;
  const synth::Cohort c = synth::GenerateCohort(50, 7);
  const auto analysis = cohort::AnalyzeCohort(c.truth, c.systems, kDefaultAlpha);
  using cohort::Measure;
  const auto& p = analysis.points;
  const double bounded_opt =
      cohort::Correlation(p, Measure::kBoundedF1Ev, Measure::kF1Optimal);
  const double auc_opt = cohort::Correlation(p, Measure::kAuc, Measure::kF1Optimal);
  const double bounded_sub =
      cohort::Correlation(p, Measure::kBoundedF1Ev, Measure::kF1Submitted);
  const double basic_sub =
      cohort::Correlation(p, Measure::kF1Ev, Measure::kF1Submitted);
  o.Check(analysis.NumSystems() == 50, "not all systems usable");
  o.Check(bounded_opt > auc_opt,
          Fmt("PCC(bounded, opt) %.3f <= PCC(auc, opt) %.3f", bounded_opt,
              auc_opt));
  o.Check(bounded_sub > basic_sub,
          Fmt("PCC(bounded, sub) %.3f <= PCC(f1_ev, sub) %.3f", bounded_sub,
              basic_sub));
  if (o.pass) {
    o.detail = Fmt("PCC vs opt: bounded %.3f > auc %.3f; vs sub: bounded "
                   "%.3f > f1_ev %.3f",
                   bounded_opt, auc_opt, bounded_sub, basic_sub);
  }
  return o;
}

std::string ReportBytes(const MetricReport& r) {
  std::ostringstream s;
  s.precision(17);
  s << r.machine << ' ' << r.auc << ' ' << r.pauc << ' ' << r.f1_ev << ' '
    << r.bounded_f1_ev << ' ' << r.optimal_f1 << ' ' << r.theta_opt << ' '
    << r.range.theta_min << ' ' << r.range.theta_max;
  for (auto flag : r.degenerate_flags) s << ' ' << DegenerateMarkerName(flag);
  return s.str();
}

Outcome Invariance(const fs::path& work) {
  Outcome o;
  synth::Rng rng(777);
  synth::Rng shuffle(778);
  double worst = 0;
  int checked = 0;
  while (checked < 200) {
    const auto set = synth::GenerateRandomSet(
        rng, {.min_size = 3, .max_size = 100, .min_normal = 2});
    if (!HasDistinctScores(set)) continue;
    ++checked;
    const MetricReport base = Evaluate(set, {});
    for (auto [a, b] : {std::pair(3.0, 1.5), std::pair(0.02, 0.0),
                        std::pair(250.0, 10.0)}) {
      std::vector<ScoreSample> moved = set.samples();
      for (auto& s : moved) s.score = a * s.score + b;
      const MetricReport r = Evaluate(EvaluationSet(set.machine(), moved), {});
      for (auto [x, y] :
           {std::pair(r.auc, base.auc), std::pair(r.pauc, base.pauc),
            std::pair(r.f1_ev, base.f1_ev),
            std::pair(r.bounded_f1_ev, base.bounded_f1_ev),
            std::pair(r.optimal_f1, base.optimal_f1)}) {
        worst = std::max(worst, std::abs(x - y));
      }
      o.Check(std::abs(r.theta_opt - (a * base.theta_opt + b)) <=
                  1e-10 * std::max(1.0, std::abs(r.theta_opt)),
              "theta_opt does not follow the affine map");
    }
    std::vector<ScoreSample> permuted = set.samples();
    for (std::size_t i = permuted.size() - 1; i > 0; --i) {
      std::swap(permuted[i], permuted[shuffle.UniformIndex(0, i)]);
    }
    o.Check(ReportBytes(Evaluate(EvaluationSet(set.machine(), permuted), {})) ==
                ReportBytes(base),
            "permuted samples change the report");
    o.Check(ReportBytes(Evaluate(set, {})) == ReportBytes(base),
            "repeated evaluation differs");
  }
  o.Check(worst <= 1e-10, Fmt("shift/scale drift %.3g", worst));

  // Byte-identical CLI reports across two runs.
  std::ostringstream sink;
  cli::SynthArgs synth_args;
  synth_args.scenario = "small-margin";
  synth_args.out_dir = work / "invariance";
  o.Check(cli::CmdSynth(synth_args, sink, sink) == cli::kExitOk, "synth failed");
  std::string first;
  for (int run = 0; run < 2; ++run) {
    cli::EvaluateArgs args{work / "invariance" / "scores.csv",
                           work / "invariance" / "ground_truth.csv",
                           std::nullopt,
                           {}};
    args.config.format = cli::OutputFormat::kCsv;
    std::ostringstream out;
    o.Check(cli::CmdEvaluate(args, out, sink) == cli::kExitOk, "evaluate failed");
    if (run == 0) first = out.str();
    o.Check(!first.empty() && out.str() == first, "CLI reports differ");
  }
  if (o.pass) {
    o.detail = Fmt("%.0f sets x 3 affine maps, drift %.3g; permutation and "
                   "repeat runs byte-identical",
                   checked, worst);
  }
  return o;
}

Outcome Degenerate(const fs::path& work) {
  Outcome o;
  const auto tied = EvaluationSet::FromScores(std::vector<double>{4, 4, 4},
                                              std::vector<double>{4, 4});
  o.Check(AucRoc(ComputeRocCurve(tied)) == 0.5, "all-equal auc != 0.5");
  bool raised = false;
  try {
    F1Ev(tied);
  } catch (const Error& e) {
    raised = e.code() == ErrorCode::kDegenerateScores;
  }
  o.Check(raised, "all-equal f1_ev did not raise DegenerateScores");

  const auto flat = EvaluationSet::FromScores(std::vector<double>{3, 3, 3},
                                              std::vector<double>{4, 9});
  o.Check(ComputeBoundedF1Ev(flat, kDefaultAlpha).degenerate,
          "sigma = 0 not flagged");
  o.Check(Evaluate(flat, {}).degenerate_flags.contains(
              DegenerateMarker::kZeroNormalSpread),
          "report lacks zero_normal_spread");

  fs::create_directories(work / "degenerate");
  std::ofstream(work / "degenerate" / "scores.csv")
      << "clip_id,score\nn1,3\nn2,3\nn3,3\na1,4\na2,9\ne1,5\ne2,5\n";
  std::ofstream(work / "degenerate" / "truth.csv")
      << "clip_id,label,domain,machine\n"
         "n1,normal,source,flat\nn2,normal,source,flat\nn3,normal,source,flat\n"
         "a1,anomalous,source,flat\na2,anomalous,source,flat\n"
         "e1,normal,source,tied\ne2,anomalous,source,tied\n";
  cli::EvaluateArgs args{work / "degenerate" / "scores.csv",
                         work / "degenerate" / "truth.csv", std::nullopt, {}};
  args.config.format = cli::OutputFormat::kCsv;
  std::ostringstream out, err;
  const int code = cli::CmdEvaluate(args, out, err);
  o.Check(code == cli::kExitOk, "CLI exited non-zero on degenerate input");
  o.Check(out.str().find("zero_normal_spread") != std::string::npos,
          "CLI output lacks zero_normal_spread");
  o.Check(out.str().find("error=DegenerateScores") != std::string::npos,
          "CLI output lacks the degenerate-scores flag");
  if (o.pass) {
    o.detail = "auc 0.5, DegenerateScores raised, sigma=0 flagged, CLI exit 0";
  }
  return o;
}

std::vector<nlohmann::json> JsonLines(const std::string& text) {
  std::vector<nlohmann::json> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    lines.push_back(nlohmann::json::parse(line));
  }
  return lines;
}

Outcome EndToEnd(const fs::path& work) {
  Outcome o;
  std::ostringstream sink;
  cli::SynthArgs toy;
  toy.scenario = "point-threshold";
  toy.seed = 42;
  toy.out_dir = work / "e2e_toy";
  o.Check(cli::CmdSynth(toy, sink, sink) == cli::kExitOk, "synth toy failed");
  cli::EvaluateArgs eval{toy.out_dir / "scores.csv",
                         toy.out_dir / "ground_truth.csv", std::nullopt, {}};
  eval.config.format = cli::OutputFormat::kJsonl;
  std::ostringstream eval_out;
  o.Check(cli::CmdEvaluate(eval, eval_out, sink) == cli::kExitOk,
          "evaluate failed");
  const auto rows = JsonLines(eval_out.str());
  const MetricReport direct = Evaluate(
      synth::GenerateToy({synth::ToyKind::kPointThreshold, 100, 100, 42}), {});
  o.Check(rows.size() == 2, "unexpected evaluate row count");
  if (rows.size() == 2) {
    const auto& row = rows[0];
    o.Check(row["auc"].get<double>() == direct.auc &&
                row["pauc"].get<double>() == direct.pauc &&
                row["f1_ev"].get<double>() == direct.f1_ev &&
                row["bounded_f1_ev"].get<double>() == direct.bounded_f1_ev &&
                row["optimal_f1"].get<double>() == direct.optimal_f1 &&
                row["theta_opt"].get<double>() == direct.theta_opt,
            "CLI values differ from library values");
    o.Check(direct.auc == 1.0, "point-threshold auc != 1");
  }

  cli::SynthArgs cohort_args;
  cohort_args.scenario = "cohort";
  cohort_args.n_systems = 50;
  cohort_args.seed = 7;
  cohort_args.out_dir = work / "e2e_cohort";
  o.Check(cli::CmdSynth(cohort_args, sink, sink) == cli::kExitOk,
          "synth cohort failed");
  const fs::path truth = cohort_args.out_dir / "ground_truth.csv";
  cli::CompareArgs compare{cohort_args.out_dir, truth, std::nullopt, {}};
  compare.config.format = cli::OutputFormat::kJsonl;
  std::ostringstream compare_out;
  std::ostringstream warnings;
  o.Check(cli::CmdCompare(compare, compare_out, warnings) == cli::kExitOk,
          "compare failed");
  cli::AblateArgs ablate{cohort_args.out_dir, truth, {0.2}, {}};
  ablate.config.format = cli::OutputFormat::kJsonl;
  std::ostringstream ablate_out;
  o.Check(cli::CmdAblate(ablate, ablate_out, warnings) == cli::kExitOk,
          "ablate failed");
  const auto matrix = JsonLines(compare_out.str());
  const auto ablation = JsonLines(ablate_out.str());
  o.Check(matrix.size() == 5 && ablation.size() == 1,
          "unexpected compare/ablate shape");
  if (o.pass) {
    const auto& bounded = matrix[2];
    const auto& row = ablation[0];
    o.Check(bounded["measure"] == "bounded_f1_ev", "matrix row order");
    o.Check(row["bounded_vs_auc"] == bounded["auc"] &&
                row["bounded_vs_f1_submitted"] == bounded["f1_submitted"] &&
                row["bounded_vs_f1_optimal"] == bounded["f1_optimal"],
            "ablate alpha=0.2 differs from compare");
  }
  if (o.pass) {
    o.detail = "synth -> evaluate bit-exact; ablate(0.2) == compare";
  }
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;  // 0 for no limit
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace f1ev

int main() {
  using namespace f1ev;
  const fs::path work = fs::temp_directory_path() / "f1ev_acceptance";
  fs::remove_all(work);
  fs::create_directories(work);

  const std::vector<Criterion> criteria = {
      {1, "AUC oracle equivalence", 10, AucOracle},
      {2, "F1-EV exactness and convergence", 60, F1EvOracle},
      {3, "worked-example golden values", 0, WorkedExample},
      {4, "toy score regimes", 0, ToyRegimes},
      {5, "two-thirds cluster", 0, TwoThirds},
      {6, "directional cohort correlations", 30, CohortDirection},
      {7, "invariance suite", 0, [&] { return Invariance(work); }},
      {8, "degenerate handling", 0, [&] { return Degenerate(work); }},
      {9, "end-to-end CLI", 0, [&] { return EndToEnd(work); }},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    if (c.time_limit_s > 0 && seconds >= c.time_limit_s) {
      outcome.pass = false;
      outcome.detail += Fmt(" (over the %.0f s limit)", c.time_limit_s);
    }
    failures += !outcome.pass;
    std::printf("[%s] AC%d %s: %s (%.2f s)\n", outcome.pass ? "PASS" : "FAIL",
                c.id, c.name, outcome.detail.c_str(), seconds);
  }
  fs::remove_all(work);
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
