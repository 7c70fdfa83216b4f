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

// Cross-system comparison of performance measures. Every (system, machine)
// pair contributes one point; points whose F1 at the submitted threshold is
// 0 (or that have no submitted threshold) are left out, as are points whose
// measures cannot be computed.

#ifndef F1EV_COHORT_H_
#define F1EV_COHORT_H_

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "f1ev/dataset_io.h"
#include "f1ev/metrics.h"
#include "f1ev/synth.h"

namespace f1ev::cohort {

enum class Measure {
  kAuc,
  kF1Ev,
  kBoundedF1Ev,
  kF1Submitted,
  kF1Optimal,
};

inline constexpr std::size_t kNumMeasures = 5;
inline constexpr std::array<Measure, kNumMeasures> kAllMeasures = {
    Measure::kAuc, Measure::kF1Ev, Measure::kBoundedF1Ev,
    Measure::kF1Submitted, Measure::kF1Optimal};

std::string_view MeasureName(Measure measure);

struct CohortPoint {
  std::string system_id;
  std::string machine;
  std::array<double, kNumMeasures> values{};

  double operator[](Measure m) const {
    return values[static_cast<std::size_t>(m)];
  }
};

struct CohortAnalysis {
  // Ordered by (system_id, machine).
  std::vector<CohortPoint> points;
  std::vector<std::string> warnings;

  std::size_t NumSystems() const;
};

// Join errors propagate; per-point metric failures become warnings.
CohortAnalysis AnalyzeCohort(const io::GroundTruth& truth,
                             const std::vector<io::SystemSubmission>& systems,
                             double alpha = kDefaultAlpha);

using CorrelationMatrix =
    std::array<std::array<double, kNumMeasures>, kNumMeasures>;

// Pearson correlation between every pair of measures over the points.
CorrelationMatrix Correlations(const std::vector<CohortPoint>& points);

double Correlation(const std::vector<CohortPoint>& points, Measure a,
                   Measure b);

struct AblationRow {
  double alpha = 0.0;
  double bounded_vs_auc = 0.0;
  double bounded_vs_f1_submitted = 0.0;
  double bounded_vs_f1_optimal = 0.0;
};

std::vector<AblationRow> AblateAlpha(
    const io::GroundTruth& truth,
    const std::vector<io::SystemSubmission>& systems,
    const std::vector<double>& alphas);

// A cohort directory holds <system>_scores.csv and, optionally,
// <system>_thresholds.csv per system. Systems are returned sorted by id.
std::vector<io::SystemSubmission> LoadSubmissions(
    const std::filesystem::path& dir);

// Writes ground_truth.csv plus the per-system files into `dir`.
void WriteCohort(const std::filesystem::path& dir, const synth::Cohort& cohort);

}  // namespace f1ev::cohort

#endif  // F1EV_COHORT_H_
