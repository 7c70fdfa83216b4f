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

// CSV score, ground-truth and threshold files.
//
//   scores:        clip_id,score
//   ground truth:  clip_id,label,domain,machine
//                  label in {normal, anomalous}, domain in {source, target}
//   thresholds:    machine,threshold
//
// The header row is mandatory. LF and CRLF line endings are accepted, blank
// lines are skipped, fields are not quoted. Numbers are written with 17
// significant digits so that every double round-trips.

#ifndef F1EV_DATASET_IO_H_
#define F1EV_DATASET_IO_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "f1ev/types.h"

namespace f1ev::io {

using ScoreMap = std::map<std::string, double>;
using ThresholdMap = std::map<std::string, double>;

struct TruthEntry {
  Label label = Label::kNormal;
  Domain domain = Domain::kSource;
  std::string machine;

  bool operator==(const TruthEntry&) const = default;
};

struct GroundTruth {
  std::map<std::string, TruthEntry> entries;
};

struct SystemSubmission {
  std::string system_id;
  ScoreMap scores;
  // One decision threshold per machine type, when the system provides one.
  std::optional<ThresholdMap> thresholds;
};

// `source` names the input in error messages.
ScoreMap ParseScores(std::istream& in, std::string_view source = "<stream>");
ScoreMap ParseScores(const std::filesystem::path& path);

GroundTruth ParseGroundTruth(std::istream& in,
                             std::string_view source = "<stream>");
GroundTruth ParseGroundTruth(const std::filesystem::path& path);

ThresholdMap ParseThresholds(std::istream& in,
                             std::string_view source = "<stream>");
ThresholdMap ParseThresholds(const std::filesystem::path& path);

void WriteScores(std::ostream& out, const ScoreMap& scores);
void WriteGroundTruth(std::ostream& out, const GroundTruth& truth);
void WriteThresholds(std::ostream& out, const ThresholdMap& thresholds);

struct JoinResult {
  // One set per machine, machines in lexicographic order, samples ordered by
  // clip id.
  std::vector<EvaluationSet> sets;
  // Scored clips absent from the ground truth; they are dropped.
  std::vector<std::string> extra_clip_ids;
};

// Throws JoinError listing every ground-truth clip without a score.
JoinResult Join(const ScoreMap& scores, const GroundTruth& truth);

// 17 significant digits ("%.17g"); parses back to the same double.
std::string FormatExact(double value);

}  // namespace f1ev::io

#endif  // F1EV_DATASET_IO_H_
