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

#include "f1ev/cohort.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <utility>

#include "f1ev/error.h"
#include "f1ev/stats.h"

namespace f1ev::cohort {
namespace {

constexpr std::string_view kScoresSuffix = "_scores.csv";
constexpr std::string_view kThresholdsSuffix = "_thresholds.csv";

std::ofstream OpenOutput(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::kInvalidInput,
                "cannot write '" + path.string() + "'");
  }
  return out;
}

}  // namespace

std::string_view MeasureName(Measure measure) {
  switch (measure) {
    case Measure::kAuc:
      return "auc";
    case Measure::kF1Ev:
      return "f1_ev";
    case Measure::kBoundedF1Ev:
      return "bounded_f1_ev";
    case Measure::kF1Submitted:
      return "f1_submitted";
    case Measure::kF1Optimal:
      return "f1_optimal";
  }
  return "unknown";
}

std::size_t CohortAnalysis::NumSystems() const {
  std::set<std::string_view> ids;
  for (const auto& p : points) ids.insert(p.system_id);
  return ids.size();
}

CohortAnalysis AnalyzeCohort(const io::GroundTruth& truth,
                             const std::vector<io::SystemSubmission>& systems,
                             double alpha) {
  std::vector<const io::SystemSubmission*> ordered;
  for (const auto& s : systems) ordered.push_back(&s);
  std::sort(ordered.begin(), ordered.end(), [](auto* a, auto* b) {
    return a->system_id < b->system_id;
  });

  CohortAnalysis analysis;
  for (const io::SystemSubmission* system : ordered) {
    const io::JoinResult joined = io::Join(system->scores, truth);
    for (const EvaluationSet& set : joined.sets) {
      const std::string where = system->system_id + "/" + set.machine();
      if (!system->thresholds || !system->thresholds->contains(set.machine())) {
        analysis.warnings.push_back(where + ": no submitted threshold");
        continue;
      }
      try {
        EvaluateOptions options;
        options.alpha = alpha;
        options.submitted_threshold = system->thresholds->at(set.machine());
        const MetricReport report = Evaluate(set, options);
        if (*report.f1_at_submitted == 0.0) {
          analysis.warnings.push_back(where +
                                      ": F1 at submitted threshold is 0");
          continue;
        }
        CohortPoint point{system->system_id, set.machine(), {}};
        point.values = {report.auc, report.f1_ev, report.bounded_f1_ev,
                        *report.f1_at_submitted, report.optimal_f1};
        analysis.points.push_back(std::move(point));
      } catch (const Error& e) {
        analysis.warnings.push_back(where + ": " + e.what());
      }
    }
  }
  return analysis;
}

double Correlation(const std::vector<CohortPoint>& points, Measure a,
                   Measure b) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& p : points) {
    xs.push_back(p[a]);
    ys.push_back(p[b]);
  }
  return stats::Pearson(stats::PairedSeries(std::move(xs), std::move(ys)));
}

CorrelationMatrix Correlations(const std::vector<CohortPoint>& points) {
  CorrelationMatrix matrix{};
  for (std::size_t i = 0; i < kNumMeasures; ++i) {
    matrix[i][i] = 1.0;
    for (std::size_t j = i + 1; j < kNumMeasures; ++j) {
      matrix[i][j] = matrix[j][i] =
          Correlation(points, kAllMeasures[i], kAllMeasures[j]);
    }
  }
  return matrix;
}

std::vector<AblationRow> AblateAlpha(
    const io::GroundTruth& truth,
    const std::vector<io::SystemSubmission>& systems,
    const std::vector<double>& alphas) {
  std::vector<AblationRow> rows;
  for (double alpha : alphas) {
    const CohortAnalysis analysis = AnalyzeCohort(truth, systems, alpha);
    const auto& points = analysis.points;
    rows.push_back(
        {alpha, Correlation(points, Measure::kBoundedF1Ev, Measure::kAuc),
         Correlation(points, Measure::kBoundedF1Ev, Measure::kF1Submitted),
         Correlation(points, Measure::kBoundedF1Ev, Measure::kF1Optimal)});
  }
  return rows;
}

std::vector<io::SystemSubmission> LoadSubmissions(
    const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw Error(ErrorCode::kInvalidInput,
                "not a directory: '" + dir.string() + "'");
  }
  std::vector<std::filesystem::path> score_files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && name.ends_with(kScoresSuffix)) {
      score_files.push_back(entry.path());
    }
  }
  std::sort(score_files.begin(), score_files.end());

  std::vector<io::SystemSubmission> systems;
  for (const auto& path : score_files) {
    const std::string name = path.filename().string();
    io::SystemSubmission system;
    system.system_id = name.substr(0, name.size() - kScoresSuffix.size());
    system.scores = io::ParseScores(path);
    const auto thresholds_path =
        dir / (system.system_id + std::string(kThresholdsSuffix));
    if (std::filesystem::exists(thresholds_path)) {
      system.thresholds = io::ParseThresholds(thresholds_path);
    }
    systems.push_back(std::move(system));
  }
  return systems;
}

void WriteCohort(const std::filesystem::path& dir,
                 const synth::Cohort& cohort) {
  {
    auto out = OpenOutput(dir / "ground_truth.csv");
    io::WriteGroundTruth(out, cohort.truth);
  }
  for (const auto& system : cohort.systems) {
    auto scores =
        OpenOutput(dir / (system.system_id + std::string(kScoresSuffix)));
    io::WriteScores(scores, system.scores);
    if (system.thresholds) {
      auto thresholds = OpenOutput(
          dir / (system.system_id + std::string(kThresholdsSuffix)));
      io::WriteThresholds(thresholds, *system.thresholds);
    }
  }
}

}  // namespace f1ev::cohort
