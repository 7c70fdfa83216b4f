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

#include "f1ev/stats.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "f1ev/error.h"

namespace f1ev::stats {

double Mean(std::span<const double> values) {
  if (values.empty()) {
    throw Error(ErrorCode::kInsufficientData, "mean of an empty sequence");
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double SampleStd(std::span<const double> values) {
  if (values.size() < 2) {
    throw Error(ErrorCode::kInsufficientData,
                "sample standard deviation needs at least two values");
  }
  const double mean = Mean(values);
  double squares = 0.0;
  for (double v : values) squares += (v - mean) * (v - mean);
  return std::sqrt(squares / static_cast<double>(values.size() - 1));
}

double HarmonicMean(std::span<const double> values) {
  if (values.empty()) {
    throw Error(ErrorCode::kInsufficientData,
                "harmonic mean of an empty sequence");
  }
  double reciprocal_sum = 0.0;
  bool has_zero = false;
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidInput,
                  "harmonic mean needs finite non-negative values");
    }
    if (v == 0.0) {
      has_zero = true;
    } else {
      reciprocal_sum += 1.0 / v;
    }
  }
  if (has_zero) return 0.0;
  return static_cast<double>(values.size()) / reciprocal_sum;
}

PairedSeries::PairedSeries(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  if (xs_.size() != ys_.size()) {
    throw Error(ErrorCode::kInvalidInput, "paired series differ in length");
  }
  if (xs_.size() < 2) {
    throw Error(ErrorCode::kInsufficientData,
                "paired series need at least two points");
  }
  const auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(xs_.begin(), xs_.end(), finite) ||
      !std::all_of(ys_.begin(), ys_.end(), finite)) {
    throw Error(ErrorCode::kInvalidInput, "paired series must be finite");
  }
}

double Pearson(const PairedSeries& series) {
  const auto& xs = series.xs();
  const auto& ys = series.ys();
  const auto constant = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return x == v[0]; });
  };
  if (constant(xs) || constant(ys)) {
    throw Error(ErrorCode::kUndefinedCorrelation,
                "correlation with a constant series is undefined");
  }
  const double mean_x = Mean(xs);
  const double mean_y = Mean(ys);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mean_x;
    const double dy = ys[i] - mean_y;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace f1ev::stats
