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

#include "f1ev/types.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_set>
#include <utility>

#include "f1ev/error.h"

namespace f1ev {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput:
      return "InvalidInput";
    case ErrorCode::kInvalidParameter:
      return "InvalidParameter";
    case ErrorCode::kEmptySet:
      return "EmptySet";
    case ErrorCode::kSingleClass:
      return "SingleClass";
    case ErrorCode::kDegenerateScores:
      return "DegenerateScores";
    case ErrorCode::kInsufficientNormals:
      return "InsufficientNormals";
    case ErrorCode::kInsufficientData:
      return "InsufficientData";
    case ErrorCode::kUndefinedCorrelation:
      return "UndefinedCorrelation";
    case ErrorCode::kParseError:
      return "ParseError";
    case ErrorCode::kJoinError:
      return "JoinError";
  }
  return "Unknown";
}

namespace {

std::string ParseMessage(const std::string& path, std::size_t line,
                         const std::string& what) {
  if (line == 0) return path + ": " + what;
  return path + ":" + std::to_string(line) + ": " + what;
}

std::string JoinMessage(const std::vector<std::string>& ids) {
  std::string message = "no score for " + std::to_string(ids.size()) +
                        " ground-truth clip(s):";
  for (const auto& id : ids) message += " " + id;
  return message;
}

}  // namespace

ParseError::ParseError(std::string path, std::size_t line,
                       const std::string& what)
    : Error(ErrorCode::kParseError, ParseMessage(path, line, what)),
      path_(std::move(path)),
      line_(line) {}

JoinError::JoinError(std::vector<std::string> missing_ids)
    : Error(ErrorCode::kJoinError, JoinMessage(missing_ids)),
      missing_ids_(std::move(missing_ids)) {}

std::string_view LabelName(Label label) {
  return label == Label::kNormal ? "normal" : "anomalous";
}

std::string_view DomainName(Domain domain) {
  return domain == Domain::kSource ? "source" : "target";
}

EvaluationSet::EvaluationSet(std::string machine,
                             std::vector<ScoreSample> samples)
    : machine_(std::move(machine)), samples_(std::move(samples)) {
  std::unordered_set<std::string_view> seen;
  seen.reserve(samples_.size());
  for (const auto& sample : samples_) {
    if (!std::isfinite(sample.score) || sample.score < 0.0) {
      throw Error(ErrorCode::kInvalidInput,
                  "clip '" + sample.clip_id +
                      "': anomaly scores must be finite and non-negative");
    }
    if (!seen.insert(sample.clip_id).second) {
      throw Error(ErrorCode::kInvalidInput,
                  "duplicate clip id '" + sample.clip_id + "' in machine '" +
                      machine_ + "'");
    }
    if (sample.label == Label::kNormal) ++num_normal_;
  }
}

EvaluationSet EvaluationSet::FromScores(std::span<const double> normal,
                                        std::span<const double> anomalous,
                                        std::string machine) {
  std::vector<ScoreSample> samples;
  samples.reserve(normal.size() + anomalous.size());
  char id[32];
  for (std::size_t i = 0; i < normal.size(); ++i) {
    std::snprintf(id, sizeof(id), "n%04zu", i);
    samples.push_back({id, normal[i], Label::kNormal, std::nullopt});
  }
  for (std::size_t i = 0; i < anomalous.size(); ++i) {
    std::snprintf(id, sizeof(id), "a%04zu", i);
    samples.push_back({id, anomalous[i], Label::kAnomalous, std::nullopt});
  }
  return EvaluationSet(std::move(machine), std::move(samples));
}

std::vector<double> EvaluationSet::SortedScores(Label label) const {
  std::vector<double> scores;
  for (const auto& sample : samples_) {
    if (sample.label == label) scores.push_back(sample.score);
  }
  std::sort(scores.begin(), scores.end());
  return scores;
}

}  // namespace f1ev
