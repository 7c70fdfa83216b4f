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

// Threshold-independent performance measures for anomaly detection:
// ROC AUC, standardized partial AUC, the expected F1 over a uniform
// threshold distribution (F1-EV) and its bounded variant.
//
// Decision rule used throughout: a sample is flagged anomalous iff
// score > threshold. Under this rule the F1 score, as a function of the
// threshold, is constant on every half-open interval [t(n), t(n+1)) between
// consecutive distinct scores, so a left-endpoint Riemann sum over the
// distinct scores is exact.

#ifndef F1EV_METRICS_H_
#define F1EV_METRICS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "f1ev/types.h"

namespace f1ev {

inline constexpr double kDefaultAlpha = 0.2;
inline constexpr double kDefaultPaucMaxFpr = 0.1;

// Anomalous iff score > threshold; ties are normal. Throws kInvalidInput on
// non-finite arguments.
Label Classify(double score, double threshold);

struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;

  std::uint64_t total() const { return tp + fp + fn + tn; }
  bool operator==(const ConfusionCounts&) const = default;
};

ConfusionCounts ConfusionAt(const EvaluationSet& set, double threshold);

struct PrecisionRecallF1 {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Any 0/0 quotient is reported as 0.
PrecisionRecallF1 ComputePrecisionRecallF1(const ConfusionCounts& counts);

// F1 of the decision rule at an arbitrary threshold.
double F1At(const EvaluationSet& set, double threshold);

struct RocPoint {
  double threshold = 0.0;
  double fpr = 0.0;
  double tpr = 0.0;
};

// Points ordered by (fpr, tpr). The first point (0, 0) carries threshold
// +inf and the last point (1, 1) carries -inf; every other point belongs to
// a distinct score value. Consecutive identical (fpr, tpr) pairs are merged,
// so tied scores across classes yield a single diagonal segment.
struct RocCurve {
  std::vector<RocPoint> points;
};

RocCurve ComputeRocCurve(const EvaluationSet& set);

// Trapezoidal area under the curve.
double AucRoc(const RocCurve& curve);

// Area over FPR in [0, max_fpr], McClish-standardized so that a diagonal
// curve scores 0.5 and a perfect one 1.0. max_fpr = 1 gives plain AUC.
double PartialAuc(const RocCurve& curve, double max_fpr = kDefaultPaucMaxFpr);

// F1 as a step function of the threshold: f1_values[n] holds on
// [thresholds[n], thresholds[n + 1]). thresholds are the distinct scores,
// ascending. counts[n] are the confusion counts behind f1_values[n].
struct F1Curve {
  std::vector<double> thresholds;
  std::vector<double> f1_values;
  std::vector<ConfusionCounts> counts;

  std::size_t size() const { return thresholds.size(); }
};

F1Curve ComputeF1Curve(const EvaluationSet& set);

// Expected F1 under a uniform threshold distribution on
// [min score, max score]. Throws kDegenerateScores when all scores are equal.
double F1Ev(const F1Curve& curve);
double F1Ev(const EvaluationSet& set);

// The lowest maximal run of optimal F1 on the curve, as the interval
// [lower, upper). When the run reaches the last threshold the interval
// collapses to that single point.
struct OptimalInterval {
  double lower = 0.0;
  double upper = 0.0;
  double f1 = 0.0;

  double width() const { return upper - lower; }
  double center() const { return 0.5 * (lower + upper); }
};

OptimalInterval ComputeOptimalInterval(const F1Curve& curve);

struct OptimalThreshold {
  double theta = 0.0;
  double f1 = 0.0;
};

OptimalThreshold ComputeOptimalThreshold(const EvaluationSet& set);

// Threshold range of the bounded F1-EV: [mu - alpha*sigma,
// theta_opt + alpha*sigma] with mu/sigma the mean and sample standard
// deviation (n - 1 denominator) of the normal-sample scores.
struct BoundedRange {
  double mu = 0.0;
  double sigma = 0.0;
  double alpha = kDefaultAlpha;
  double theta_opt = 0.0;
  double f1_opt = 0.0;
  double theta_min = 0.0;
  double theta_max = 0.0;
  // sigma == 0 or theta_min >= theta_max.
  bool degenerate = false;
};

BoundedRange ComputeBounds(const EvaluationSet& set,
                           double alpha = kDefaultAlpha);

struct BoundedF1Ev {
  double value = 0.0;
  bool degenerate = false;
  BoundedRange range;
  // theta_min, the distinct scores strictly inside the range, theta_max.
  // Empty for a degenerate range.
  std::vector<double> thresholds;
};

// For a degenerate range the value is the F1 at the range midpoint.
BoundedF1Ev ComputeBoundedF1Ev(const EvaluationSet& set,
                               double alpha = kDefaultAlpha);

enum class DegenerateMarker {
  kZeroNormalSpread,   // sigma of the normal scores is 0
  kEmptyBoundedRange,  // theta_min >= theta_max
};

std::string_view DegenerateMarkerName(DegenerateMarker marker);

struct EvaluateOptions {
  double alpha = kDefaultAlpha;
  double pauc_max_fpr = kDefaultPaucMaxFpr;
  std::optional<double> submitted_threshold;
};

struct MetricReport {
  std::string machine;
  double auc = 0.0;
  double pauc = 0.0;
  double f1_ev = 0.0;
  double bounded_f1_ev = 0.0;
  double optimal_f1 = 0.0;
  double theta_opt = 0.0;
  std::optional<double> f1_at_submitted;
  std::set<DegenerateMarker> degenerate_flags;
  BoundedRange range;
};

// All measures for one machine type. Errors of the individual measures
// propagate unchanged.
MetricReport Evaluate(const EvaluationSet& set,
                      const EvaluateOptions& options = {});

}  // namespace f1ev

#endif  // F1EV_METRICS_H_
