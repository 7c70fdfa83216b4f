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

#ifndef F1EV_STATS_H_
#define F1EV_STATS_H_

#include <span>
#include <vector>

namespace f1ev::stats {

// Throws kInsufficientData on an empty input.
double Mean(std::span<const double> values);

// Sample standard deviation, n - 1 denominator. Needs at least two values.
double SampleStd(std::span<const double> values);

// n / sum(1 / v). Returns 0 if any value is 0; negative values throw
// kInvalidInput.
double HarmonicMean(std::span<const double> values);

// Two equal-length series of finite values, length >= 2.
class PairedSeries {
 public:
  PairedSeries(std::vector<double> xs, std::vector<double> ys);

  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& ys() const { return ys_; }
  std::size_t size() const { return xs_.size(); }

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
};

// Product-moment correlation in [-1, 1]. A constant series has no defined
// correlation and throws kUndefinedCorrelation.
double Pearson(const PairedSeries& series);

}  // namespace f1ev::stats

#endif  // F1EV_STATS_H_
