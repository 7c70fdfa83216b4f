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

#ifndef F1EV_TYPES_H_
#define F1EV_TYPES_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace f1ev {

enum class Label { kNormal, kAnomalous };
enum class Domain { kSource, kTarget };

std::string_view LabelName(Label label);
std::string_view DomainName(Domain domain);

// One test clip. Scores are finite and non-negative; larger means more
// anomalous.
struct ScoreSample {
  std::string clip_id;
  double score = 0.0;
  Label label = Label::kNormal;
  std::optional<Domain> domain;
};

// Labeled scores of a single machine type. Construction validates the
// per-sample invariants (finite, non-negative scores and unique clip ids);
// class balance is checked by the metric operations that need it.
class EvaluationSet {
 public:
  EvaluationSet(std::string machine, std::vector<ScoreSample> samples);

  // Convenience for tests and toy data: clip ids are generated as
  // "n0000"/"a0000".
  static EvaluationSet FromScores(std::span<const double> normal,
                                  std::span<const double> anomalous,
                                  std::string machine = "toy");

  const std::string& machine() const { return machine_; }
  const std::vector<ScoreSample>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }

  std::size_t num_normal() const { return num_normal_; }
  std::size_t num_anomalous() const { return samples_.size() - num_normal_; }

  // Scores of one class, ascending.
  std::vector<double> SortedScores(Label label) const;

 private:
  std::string machine_;
  std::vector<ScoreSample> samples_;
  std::size_t num_normal_ = 0;
};

}  // namespace f1ev

#endif  // F1EV_TYPES_H_
