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

#include "f1ev/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "f1ev/error.h"
#include "f1ev/stats.h"

namespace f1ev {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void CheckBothClasses(const EvaluationSet& set) {
  if (set.empty()) {
    throw Error(ErrorCode::kEmptySet,
                "machine '" + set.machine() + "': evaluation set is empty");
  }
  if (set.num_normal() == 0 || set.num_anomalous() == 0) {
    throw Error(ErrorCode::kSingleClass,
                "machine '" + set.machine() +
                    "': need at least one normal and one anomalous sample");
  }
}

// Distinct score values with per-class multiplicities, ascending.
struct ScoreGroup {
  double score;
  std::uint64_t normal;
  std::uint64_t anomalous;
};

std::vector<ScoreGroup> GroupScores(const EvaluationSet& set) {
  std::vector<std::pair<double, Label>> sorted;
  sorted.reserve(set.size());
  for (const auto& sample : set.samples()) {
    sorted.emplace_back(sample.score, sample.label);
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<ScoreGroup> groups;
  for (const auto& [score, label] : sorted) {
    if (groups.empty() || groups.back().score != score) {
      groups.push_back({score, 0, 0});
    }
    if (label == Label::kNormal) {
      ++groups.back().normal;
    } else {
      ++groups.back().anomalous;
    }
  }
  return groups;
}

// Exact comparison of two F1 values through their counts,
// F1 = 2tp / (2tp + fp + fn). Both sides need tp + fn > 0.
int CompareF1(const ConfusionCounts& a, const ConfusionCounts& b) {
  using Wide = unsigned __int128;
  const Wide lhs = Wide{2 * a.tp} * (2 * b.tp + b.fp + b.fn);
  const Wide rhs = Wide{2 * b.tp} * (2 * a.tp + a.fp + a.fn);
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

void CheckAlpha(double alpha) {
  if (!std::isfinite(alpha) || alpha <= 0.0) {
    throw Error(ErrorCode::kInvalidParameter,
                "alpha must be a finite positive number, got " +
                    std::to_string(alpha));
  }
}

}  // namespace

Label Classify(double score, double threshold) {
  if (!std::isfinite(score) || !std::isfinite(threshold)) {
    throw Error(ErrorCode::kInvalidInput,
                "score and threshold must be finite");
  }
  return score > threshold ? Label::kAnomalous : Label::kNormal;
}

ConfusionCounts ConfusionAt(const EvaluationSet& set, double threshold) {
  if (set.empty()) {
    throw Error(ErrorCode::kEmptySet,
                "machine '" + set.machine() + "': evaluation set is empty");
  }
  ConfusionCounts counts;
  for (const auto& sample : set.samples()) {
    const bool flagged = Classify(sample.score, threshold) == Label::kAnomalous;
    if (sample.label == Label::kAnomalous) {
      ++(flagged ? counts.tp : counts.fn);
    } else {
      ++(flagged ? counts.fp : counts.tn);
    }
  }
  return counts;
}

PrecisionRecallF1 ComputePrecisionRecallF1(const ConfusionCounts& counts) {
  PrecisionRecallF1 result;
  const auto tp = static_cast<double>(counts.tp);
  if (counts.tp + counts.fp > 0) {
    result.precision = tp / static_cast<double>(counts.tp + counts.fp);
  }
  if (counts.tp + counts.fn > 0) {
    result.recall = tp / static_cast<double>(counts.tp + counts.fn);
  }
  const double sum = result.precision + result.recall;
  if (sum > 0.0) result.f1 = 2.0 * result.precision * result.recall / sum;
  return result;
}

double F1At(const EvaluationSet& set, double threshold) {
  return ComputePrecisionRecallF1(ConfusionAt(set, threshold)).f1;
}

RocCurve ComputeRocCurve(const EvaluationSet& set) {
  CheckBothClasses(set);
  const auto groups = GroupScores(set);
  const auto num_normal = static_cast<double>(set.num_normal());
  const auto num_anomalous = static_cast<double>(set.num_anomalous());

  RocCurve curve;
  curve.points.reserve(groups.size() + 2);
  curve.points.push_back({kInf, 0.0, 0.0});

  // Walking thresholds downwards; at threshold groups[i].score every group
  // above i is flagged.
  std::uint64_t fp = 0;
  std::uint64_t tp = 0;
  for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
    const RocPoint point{it->score, static_cast<double>(fp) / num_normal,
                         static_cast<double>(tp) / num_anomalous};
    const RocPoint& last = curve.points.back();
    if (point.fpr != last.fpr || point.tpr != last.tpr) {
      curve.points.push_back(point);
    }
    fp += it->normal;
    tp += it->anomalous;
  }
  curve.points.push_back({-kInf, 1.0, 1.0});
  return curve;
}

double AucRoc(const RocCurve& curve) {
  double area = 0.0;
  for (std::size_t n = 0; n + 1 < curve.points.size(); ++n) {
    const RocPoint& a = curve.points[n];
    const RocPoint& b = curve.points[n + 1];
    area += 0.5 * (a.tpr + b.tpr) * (b.fpr - a.fpr);
  }
  return area;
}

double PartialAuc(const RocCurve& curve, double max_fpr) {
  if (!(max_fpr > 0.0 && max_fpr <= 1.0)) {
    throw Error(ErrorCode::kInvalidParameter,
                "partial AUC FPR limit must lie in (0, 1], got " +
                    std::to_string(max_fpr));
  }
  double area = 0.0;
  for (std::size_t n = 0; n + 1 < curve.points.size(); ++n) {
    const RocPoint& a = curve.points[n];
    const RocPoint& b = curve.points[n + 1];
    if (a.fpr >= max_fpr) break;
    if (b.fpr <= max_fpr) {
      area += 0.5 * (a.tpr + b.tpr) * (b.fpr - a.fpr);
      continue;
    }
    // Segment straddles max_fpr; cut it with a linearly interpolated point.
    const double t = (max_fpr - a.fpr) / (b.fpr - a.fpr);
    const double tpr_cut = a.tpr + t * (b.tpr - a.tpr);
    area += 0.5 * (a.tpr + tpr_cut) * (max_fpr - a.fpr);
    break;
  }
  const double floor_area = 0.5 * max_fpr * max_fpr;
  return 0.5 * (1.0 + (area - floor_area) / (max_fpr - floor_area));
}

F1Curve ComputeF1Curve(const EvaluationSet& set) {
  CheckBothClasses(set);
  const auto groups = GroupScores(set);
  const std::uint64_t num_normal = set.num_normal();
  const std::uint64_t num_anomalous = set.num_anomalous();

  F1Curve curve;
  curve.thresholds.resize(groups.size());
  curve.f1_values.resize(groups.size());
  curve.counts.resize(groups.size());

  // Samples strictly above groups[i].score are flagged.
  std::uint64_t fp = 0;
  std::uint64_t tp = 0;
  for (std::size_t i = groups.size(); i-- > 0;) {
    const ConfusionCounts counts{tp, fp, num_anomalous - tp, num_normal - fp};
    curve.thresholds[i] = groups[i].score;
    curve.counts[i] = counts;
    curve.f1_values[i] = ComputePrecisionRecallF1(counts).f1;
    fp += groups[i].normal;
    tp += groups[i].anomalous;
  }
  return curve;
}

double F1Ev(const F1Curve& curve) {
  if (curve.size() < 2) {
    throw Error(ErrorCode::kDegenerateScores,
                "F1-EV needs at least two distinct score values");
  }
  const double range = curve.thresholds.back() - curve.thresholds.front();
  double expected = 0.0;
  for (std::size_t n = 0; n + 1 < curve.size(); ++n) {
    const double step =
        (curve.thresholds[n + 1] - curve.thresholds[n]) / range;
    expected += curve.f1_values[n] * step;
  }
  return expected;
}

double F1Ev(const EvaluationSet& set) {
  const F1Curve curve = ComputeF1Curve(set);
  if (curve.size() < 2) {
    throw Error(ErrorCode::kDegenerateScores,
                "machine '" + set.machine() +
                    "': all anomaly scores are equal, F1-EV is undefined");
  }
  return F1Ev(curve);
}

OptimalInterval ComputeOptimalInterval(const F1Curve& curve) {
  if (curve.size() == 0) {
    throw Error(ErrorCode::kEmptySet, "F1 curve is empty");
  }
  std::size_t best = 0;
  for (std::size_t n = 1; n < curve.size(); ++n) {
    if (CompareF1(curve.counts[n], curve.counts[best]) > 0) best = n;
  }
  std::size_t end = best + 1;
  while (end < curve.size() &&
         CompareF1(curve.counts[end], curve.counts[best]) == 0) {
    ++end;
  }

  OptimalInterval interval;
  interval.f1 = curve.f1_values[best];
  if (end == curve.size()) {
    // A run through the last threshold has no right neighbour; it is the
    // zero-width point at the maximum score.
    interval.lower = interval.upper = curve.thresholds.back();
  } else {
    interval.lower = curve.thresholds[best];
    interval.upper = curve.thresholds[end];
  }
  return interval;
}

OptimalThreshold ComputeOptimalThreshold(const EvaluationSet& set) {
  const OptimalInterval interval =
      ComputeOptimalInterval(ComputeF1Curve(set));
  return {interval.center(), interval.f1};
}

BoundedRange ComputeBounds(const EvaluationSet& set, double alpha) {
  CheckAlpha(alpha);
  if (set.num_normal() < 2) {
    throw Error(ErrorCode::kInsufficientNormals,
                "machine '" + set.machine() +
                    "': bounded F1-EV needs at least two normal samples");
  }
  const OptimalThreshold optimal = ComputeOptimalThreshold(set);
  // Sorted so that the floating-point sums do not depend on sample order.
  const std::vector<double> normal = set.SortedScores(Label::kNormal);

  BoundedRange range;
  range.alpha = alpha;
  range.mu = stats::Mean(normal);
  range.sigma = stats::SampleStd(normal);
  range.theta_opt = optimal.theta;
  range.f1_opt = optimal.f1;
  range.theta_min = range.mu - alpha * range.sigma;
  range.theta_max = range.theta_opt + alpha * range.sigma;
  range.degenerate = range.sigma == 0.0 || range.theta_min >= range.theta_max;
  return range;
}

BoundedF1Ev ComputeBoundedF1Ev(const EvaluationSet& set, double alpha) {
  BoundedF1Ev result;
  result.range = ComputeBounds(set, alpha);
  const BoundedRange& range = result.range;
  if (range.degenerate) {
    result.degenerate = true;
    result.value = F1At(set, 0.5 * (range.theta_min + range.theta_max));
    return result;
  }

  const F1Curve curve = ComputeF1Curve(set);
  auto& thresholds = result.thresholds;
  std::vector<double> f1_values;
  thresholds.push_back(range.theta_min);
  f1_values.push_back(F1At(set, range.theta_min));
  for (std::size_t n = 0; n < curve.size(); ++n) {
    const double t = curve.thresholds[n];
    if (range.theta_min < t && t < range.theta_max) {
      thresholds.push_back(t);
      f1_values.push_back(curve.f1_values[n]);
    }
  }
  thresholds.push_back(range.theta_max);

  const double width = range.theta_max - range.theta_min;
  double expected = 0.0;
  for (std::size_t k = 0; k + 1 < thresholds.size(); ++k) {
    expected += f1_values[k] * ((thresholds[k + 1] - thresholds[k]) / width);
  }
  result.value = expected;
  return result;
}

std::string_view DegenerateMarkerName(DegenerateMarker marker) {
  switch (marker) {
    case DegenerateMarker::kZeroNormalSpread:
      return "zero_normal_spread";
    case DegenerateMarker::kEmptyBoundedRange:
      return "empty_bounded_range";
  }
  return "unknown";
}

MetricReport Evaluate(const EvaluationSet& set,
                      const EvaluateOptions& options) {
  MetricReport report;
  report.machine = set.machine();

  const RocCurve roc = ComputeRocCurve(set);
  report.auc = AucRoc(roc);
  report.pauc = PartialAuc(roc, options.pauc_max_fpr);

  report.f1_ev = F1Ev(set);

  const BoundedF1Ev bounded = ComputeBoundedF1Ev(set, options.alpha);
  report.bounded_f1_ev = bounded.value;
  report.range = bounded.range;
  report.optimal_f1 = bounded.range.f1_opt;
  report.theta_opt = bounded.range.theta_opt;
  if (bounded.range.sigma == 0.0) {
    report.degenerate_flags.insert(DegenerateMarker::kZeroNormalSpread);
  }
  if (bounded.range.theta_min >= bounded.range.theta_max) {
    report.degenerate_flags.insert(DegenerateMarker::kEmptyBoundedRange);
  }

  if (options.submitted_threshold) {
    report.f1_at_submitted = F1At(set, *options.submitted_threshold);
  }
  return report;
}

}  // namespace f1ev
