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

#include "f1ev/commands.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <utility>
#include <variant>

#include "f1ev/cohort.h"
#include "f1ev/error.h"
#include "f1ev/stats.h"
#include "f1ev/synth.h"
#include "json.hpp"

namespace f1ev::cli {
namespace {

using Cell = std::variant<std::string, std::optional<double>>;
using Record = std::vector<std::pair<std::string, Cell>>;

std::string FormatRounded(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.4f", value);
  return buffer;
}

std::string RenderCell(const Cell& cell, OutputFormat format) {
  if (const auto* text = std::get_if<std::string>(&cell)) return *text;
  const auto& number = std::get<std::optional<double>>(cell);
  if (!number) return format == OutputFormat::kTable ? "-" : "";
  return format == OutputFormat::kTable ? FormatRounded(*number)
                                        : io::FormatExact(*number);
}

// Writes records that share the same keys. Tables right-align every column
// but the first and round numbers to 4 decimals; CSV and JSON lines keep full
// precision.
void Emit(const std::vector<Record>& records, OutputFormat format,
          std::ostream& out) {
  if (records.empty()) return;
  const Record& first = records.front();

  if (format == OutputFormat::kJsonl) {
    for (const Record& record : records) {
      nlohmann::ordered_json line = nlohmann::ordered_json::object();
      for (const auto& [key, cell] : record) {
        if (const auto* text = std::get_if<std::string>(&cell)) {
          line[key] = *text;
        } else if (const auto& number = std::get<std::optional<double>>(cell)) {
          line[key] = *number;
        } else {
          line[key] = nullptr;
        }
      }
      out << line.dump() << '\n';
    }
    return;
  }

  std::vector<std::vector<std::string>> grid;
  grid.emplace_back();
  for (const auto& [key, cell] : first) grid.back().push_back(key);
  for (const Record& record : records) {
    grid.emplace_back();
    for (const auto& [key, cell] : record) {
      grid.back().push_back(RenderCell(cell, format));
    }
  }

  if (format == OutputFormat::kCsv) {
    for (const auto& row : grid) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c > 0) out << ',';
        out << row[c];
      }
      out << '\n';
    }
    return;
  }

  std::vector<std::size_t> widths(first.size(), 0);
  for (const auto& row : grid) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      widths[c] = std::max(widths[c], row[c].size());
    }
  }
  for (const auto& row : grid) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) line += "  ";
      const std::string pad(widths[c] - row[c].size(), ' ');
      line += c == 0 ? row[c] + pad : pad + row[c];
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  }
}

std::string JoinFlags(const std::vector<std::string>& flags) {
  std::string joined;
  for (const auto& flag : flags) {
    if (!joined.empty()) joined += ';';
    joined += flag;
  }
  return joined;
}

Record ToRecord(const EvaluateRow& row) {
  return {{"machine", row.machine},
          {"auc", row.auc},
          {"pauc", row.pauc},
          {"hmean", row.hmean},
          {"f1_ev", row.f1_ev},
          {"bounded_f1_ev", row.bounded_f1_ev},
          {"optimal_f1", row.optimal_f1},
          {"theta_opt", row.theta_opt},
          {"f1_submitted", row.f1_at_submitted},
          {"flags", JoinFlags(row.flags)}};
}

EvaluateRow RowFromReport(const MetricReport& report) {
  EvaluateRow row;
  row.machine = report.machine;
  row.auc = report.auc;
  row.pauc = report.pauc;
  row.hmean = stats::HarmonicMean(std::vector<double>{report.auc, report.pauc});
  row.f1_ev = report.f1_ev;
  row.bounded_f1_ev = report.bounded_f1_ev;
  row.optimal_f1 = report.optimal_f1;
  row.theta_opt = report.theta_opt;
  row.f1_at_submitted = report.f1_at_submitted;
  for (DegenerateMarker marker : report.degenerate_flags) {
    row.flags.emplace_back(DegenerateMarkerName(marker));
  }
  return row;
}

// Whatever survives a failed Evaluate: the ROC-based measures need only both
// classes.
EvaluateRow PartialRow(const EvaluationSet& set, const RunConfig& config,
                       const Error& failure) {
  EvaluateRow row;
  row.machine = set.machine();
  row.flags.push_back("error=" + std::string(ErrorCodeName(failure.code())));
  try {
    const RocCurve roc = ComputeRocCurve(set);
    row.auc = AucRoc(roc);
    row.pauc = PartialAuc(roc, config.pauc_p);
    row.hmean = stats::HarmonicMean(std::vector<double>{*row.auc, *row.pauc});
  } catch (const Error&) {
  }
  return row;
}

template <typename Aggregate>
std::optional<double> AggregateColumn(
    const std::vector<EvaluateRow>& rows,
    std::optional<double> EvaluateRow::*column, Aggregate aggregate) {
  std::vector<double> values;
  for (const auto& row : rows) {
    if (row.*column) values.push_back(*(row.*column));
  }
  if (values.empty()) return std::nullopt;
  return aggregate(values);
}

double ArithmeticMean(const std::vector<double>& values) {
  return stats::Mean(values);
}

double Harmonic(const std::vector<double>& values) {
  return stats::HarmonicMean(values);
}

bool ValidConfig(const RunConfig& config, std::ostream& err) {
  if (!(config.alpha > 0.0) || !std::isfinite(config.alpha)) {
    err << "error: --alpha must be positive\n";
    return false;
  }
  if (!(config.pauc_p > 0.0 && config.pauc_p <= 1.0)) {
    err << "error: --pauc-p must lie in (0, 1]\n";
    return false;
  }
  return true;
}

void PrintWarnings(const std::vector<std::string>& warnings,
                   std::ostream& err) {
  for (const auto& warning : warnings) err << "warning: " << warning << '\n';
}

struct LoadedCohort {
  io::GroundTruth truth;
  std::vector<io::SystemSubmission> systems;
};

LoadedCohort LoadCohort(const std::filesystem::path& dir,
                        const std::filesystem::path& truth) {
  LoadedCohort loaded;
  loaded.truth = io::ParseGroundTruth(truth);
  loaded.systems = cohort::LoadSubmissions(dir);
  return loaded;
}

bool EnoughSystems(const cohort::CohortAnalysis& analysis, std::ostream& err) {
  if (analysis.NumSystems() >= 3) return true;
  err << "error: need at least 3 systems with a non-zero F1 at the submitted "
         "threshold, found "
      << analysis.NumSystems() << '\n';
  return false;
}

}  // namespace

std::optional<OutputFormat> ParseOutputFormat(std::string_view name) {
  if (name == "table") return OutputFormat::kTable;
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "jsonl") return OutputFormat::kJsonl;
  return std::nullopt;
}

std::vector<EvaluateRow> BuildEvaluateRows(
    const std::vector<EvaluationSet>& sets,
    const std::optional<io::ThresholdMap>& thresholds, const RunConfig& config,
    std::vector<std::string>* warnings) {
  std::vector<EvaluateRow> rows;
  for (const EvaluationSet& set : sets) {
    EvaluateOptions options;
    options.alpha = config.alpha;
    options.pauc_max_fpr = config.pauc_p;
    if (thresholds) {
      const auto it = thresholds->find(set.machine());
      if (it != thresholds->end()) {
        options.submitted_threshold = it->second;
      } else if (warnings) {
        warnings->push_back(set.machine() + ": no submitted threshold");
      }
    }
    try {
      rows.push_back(RowFromReport(Evaluate(set, options)));
    } catch (const Error& e) {
      if (warnings) warnings->push_back(set.machine() + ": " + e.what());
      rows.push_back(PartialRow(set, config, e));
    }
  }

  EvaluateRow overall;
  overall.machine = "overall";
  overall.auc = AggregateColumn(rows, &EvaluateRow::auc, Harmonic);
  overall.pauc = AggregateColumn(rows, &EvaluateRow::pauc, Harmonic);
  std::vector<double> auc_and_pauc;
  for (const auto& row : rows) {
    if (row.auc) auc_and_pauc.push_back(*row.auc);
    if (row.pauc) auc_and_pauc.push_back(*row.pauc);
  }
  if (!auc_and_pauc.empty()) overall.hmean = Harmonic(auc_and_pauc);
  overall.f1_ev = AggregateColumn(rows, &EvaluateRow::f1_ev, ArithmeticMean);
  overall.bounded_f1_ev =
      AggregateColumn(rows, &EvaluateRow::bounded_f1_ev, ArithmeticMean);
  overall.optimal_f1 =
      AggregateColumn(rows, &EvaluateRow::optimal_f1, ArithmeticMean);
  overall.f1_at_submitted =
      AggregateColumn(rows, &EvaluateRow::f1_at_submitted, ArithmeticMean);
  rows.push_back(std::move(overall));
  return rows;
}

int CmdEvaluate(const EvaluateArgs& args, std::ostream& out,
                std::ostream& err) {
  if (!ValidConfig(args.config, err)) return kExitUsage;
  std::vector<EvaluateRow> rows;
  std::vector<std::string> warnings;
  try {
    const io::ScoreMap scores = io::ParseScores(args.scores);
    const io::GroundTruth truth = io::ParseGroundTruth(args.truth);
    std::optional<io::ThresholdMap> thresholds;
    if (args.thresholds) thresholds = io::ParseThresholds(*args.thresholds);
    const io::JoinResult joined = io::Join(scores, truth);
    for (const auto& id : joined.extra_clip_ids) {
      warnings.push_back("clip '" + id + "' is not in the ground truth");
    }
    rows = BuildEvaluateRows(joined.sets, thresholds, args.config, &warnings);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  PrintWarnings(warnings, err);
  std::vector<Record> records;
  for (const auto& row : rows) records.push_back(ToRecord(row));
  Emit(records, args.config.format, out);
  return kExitOk;
}

int CmdCompare(const CompareArgs& args, std::ostream& out, std::ostream& err) {
  if (!ValidConfig(args.config, err)) return kExitUsage;
  try {
    const LoadedCohort loaded = LoadCohort(args.cohort_dir, args.truth);
    const cohort::CohortAnalysis analysis =
        cohort::AnalyzeCohort(loaded.truth, loaded.systems, args.config.alpha);
    PrintWarnings(analysis.warnings, err);
    if (!EnoughSystems(analysis, err)) return kExitUsage;
    const cohort::CorrelationMatrix matrix =
        cohort::Correlations(analysis.points);

    std::vector<Record> records;
    for (std::size_t i = 0; i < cohort::kNumMeasures; ++i) {
      Record record{
          {"measure", std::string(cohort::MeasureName(cohort::kAllMeasures[i]))}};
      for (std::size_t j = 0; j < cohort::kNumMeasures; ++j) {
        record.emplace_back(cohort::MeasureName(cohort::kAllMeasures[j]),
                            std::optional<double>(matrix[i][j]));
      }
      records.push_back(std::move(record));
    }
    Emit(records, args.config.format, out);

    if (args.scatter_dir) {
      std::filesystem::create_directories(*args.scatter_dir);
      const auto path = *args.scatter_dir / "scatter.csv";
      std::ofstream scatter(path, std::ios::binary);
      if (!scatter) {
        err << "error: cannot write '" << path.string() << "'\n";
        return kExitUsage;
      }
      std::vector<Record> points;
      for (const auto& point : analysis.points) {
        Record record{{"system", point.system_id}, {"machine", point.machine}};
        for (cohort::Measure m : cohort::kAllMeasures) {
          record.emplace_back(cohort::MeasureName(m),
                              std::optional<double>(point[m]));
        }
        points.push_back(std::move(record));
      }
      Emit(points, OutputFormat::kCsv, scatter);
    }
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

int CmdAblate(const AblateArgs& args, std::ostream& out, std::ostream& err) {
  if (!ValidConfig(args.config, err)) return kExitUsage;
  if (args.alphas.empty()) {
    err << "error: no alpha values given\n";
    return kExitUsage;
  }
  for (double alpha : args.alphas) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
      err << "error: alpha values must be positive\n";
      return kExitUsage;
    }
  }
  try {
    const LoadedCohort loaded = LoadCohort(args.cohort_dir, args.truth);
    // Point exclusion does not depend on alpha; check it once.
    const cohort::CohortAnalysis analysis = cohort::AnalyzeCohort(
        loaded.truth, loaded.systems, args.alphas.front());
    PrintWarnings(analysis.warnings, err);
    if (!EnoughSystems(analysis, err)) return kExitUsage;

    std::vector<Record> records;
    for (const auto& row :
         cohort::AblateAlpha(loaded.truth, loaded.systems, args.alphas)) {
      records.push_back(
          {{"alpha", std::optional<double>(row.alpha)},
           {"bounded_vs_auc", std::optional<double>(row.bounded_vs_auc)},
           {"bounded_vs_f1_submitted",
            std::optional<double>(row.bounded_vs_f1_submitted)},
           {"bounded_vs_f1_optimal",
            std::optional<double>(row.bounded_vs_f1_optimal)}});
    }
    Emit(records, args.config.format, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

int CmdCurves(const CurvesArgs& args, std::ostream& out, std::ostream& err) {
  if (!ValidConfig(args.config, err)) return kExitUsage;
  if (args.machine.empty()) {
    err << "error: --machine must not be empty\n";
    return kExitUsage;
  }
  try {
    const io::JoinResult joined = io::Join(io::ParseScores(args.scores),
                                           io::ParseGroundTruth(args.truth));
    const auto it =
        std::find_if(joined.sets.begin(), joined.sets.end(),
                     [&](const auto& set) { return set.machine() == args.machine; });
    if (it == joined.sets.end()) {
      err << "error: unknown machine '" << args.machine << "'\n";
      return kExitUsage;
    }
    const EvaluationSet& set = *it;

    std::vector<Record> records;
    const F1Curve f1 = ComputeF1Curve(set);
    for (std::size_t n = 0; n < f1.size(); ++n) {
      records.push_back({{"series", std::string("f1")},
                         {"label", std::string()},
                         {"x", std::optional<double>(f1.thresholds[n])},
                         {"y", std::optional<double>(f1.f1_values[n])}});
    }
    for (const RocPoint& point : ComputeRocCurve(set).points) {
      records.push_back({{"series", std::string("roc")},
                         {"label", io::FormatExact(point.threshold)},
                         {"x", std::optional<double>(point.fpr)},
                         {"y", std::optional<double>(point.tpr)}});
    }
    try {
      const BoundedRange range = ComputeBounds(set, args.config.alpha);
      const std::pair<const char*, double> markers[] = {
          {"theta_min", range.theta_min},
          {"theta_max", range.theta_max},
          {"theta_opt", range.theta_opt}};
      for (const auto& [name, value] : markers) {
        records.push_back({{"series", std::string("marker")},
                           {"label", std::string(name)},
                           {"x", std::optional<double>(value)},
                           {"y", std::optional<double>(F1At(set, value))}});
      }
      if (range.degenerate) err << "warning: bounded range is degenerate\n";
    } catch (const Error& e) {
      err << "warning: no bound markers: " << e.what() << '\n';
    }
    Emit(records, OutputFormat::kCsv, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

int CmdSynth(const SynthArgs& args, std::ostream& out, std::ostream& err) {
  try {
    std::filesystem::create_directories(args.out_dir);
    const auto open = [&](const std::string& name) {
      std::ofstream file(args.out_dir / name, std::ios::binary);
      if (!file) {
        throw Error(ErrorCode::kInvalidInput,
                    "cannot write '" + (args.out_dir / name).string() + "'");
      }
      return file;
    };

    if (args.scenario == "cohort") {
      cohort::WriteCohort(args.out_dir,
                          synth::GenerateCohort(args.n_systems, args.seed));
      out << "wrote cohort of " << args.n_systems << " systems to "
          << args.out_dir.string() << '\n';
      return kExitOk;
    }

    synth::ToyScenario scenario;
    scenario.kind = synth::ParseToyKind(args.scenario);
    scenario.n_normal = args.n_normal;
    scenario.n_anomalous = args.n_anomalous;
    scenario.seed = args.seed;
    const EvaluationSet set = synth::GenerateToy(scenario);

    io::ScoreMap scores;
    io::GroundTruth truth;
    for (const ScoreSample& sample : set.samples()) {
      scores.emplace(sample.clip_id, sample.score);
      truth.entries.emplace(
          sample.clip_id,
          io::TruthEntry{sample.label, Domain::kSource, set.machine()});
    }
    auto scores_file = open("scores.csv");
    io::WriteScores(scores_file, scores);
    auto truth_file = open("ground_truth.csv");
    io::WriteGroundTruth(truth_file, truth);
    if (!scores_file || !truth_file) {
      throw Error(ErrorCode::kInvalidInput, "write failed");
    }
    out << "wrote " << set.size() << " clips to " << args.out_dir.string()
        << '\n';
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace f1ev::cli
