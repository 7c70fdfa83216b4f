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

#include "f1ev/dataset_io.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <utility>

#include "f1ev/error.h"

namespace f1ev::io {
namespace {

// Reads a CSV file row by row, tracking 1-based line numbers.
class CsvReader {
 public:
  CsvReader(std::istream& in, std::string_view source)
      : in_(in), source_(source) {}

  // Consumes the header row and checks it against `expected`.
  void ExpectHeader(std::string_view expected) {
    std::vector<std::string> fields;
    if (!Next(fields)) Fail("missing header '" + std::string(expected) + "'");
    std::string header;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i > 0) header += ',';
      header += fields[i];
    }
    if (header.starts_with("\xEF\xBB\xBF")) header.erase(0, 3);  // BOM
    if (header != expected) {
      Fail("expected header '" + std::string(expected) + "', got '" + header +
           "'");
    }
  }

  // Next non-blank row, split on commas. Returns false at end of input.
  bool Next(std::vector<std::string>& fields) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_number_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      fields.clear();
      std::size_t start = 0;
      while (true) {
        const std::size_t comma = line.find(',', start);
        fields.push_back(line.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      return true;
    }
    return false;
  }

  void ExpectFieldCount(const std::vector<std::string>& fields,
                        std::size_t count) {
    if (fields.size() != count) {
      Fail("expected " + std::to_string(count) + " fields, got " +
           std::to_string(fields.size()));
    }
  }

  double ParseNumber(const std::string& field) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (field.empty() || ec != std::errc() || ptr != end) {
      Fail("not a number: '" + field + "'");
    }
    if (!std::isfinite(value)) Fail("non-finite value: '" + field + "'");
    return value;
  }

  void CheckId(const std::string& field, std::string_view what) {
    if (field.empty()) Fail("empty " + std::string(what));
  }

  [[noreturn]] void Fail(const std::string& what) const {
    throw ParseError(source_, line_number_, what);
  }

 private:
  std::istream& in_;
  std::string source_;
  std::size_t line_number_ = 0;
};

std::ifstream OpenInput(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  return in;
}

}  // namespace

ScoreMap ParseScores(std::istream& in, std::string_view source) {
  CsvReader reader(in, source);
  reader.ExpectHeader("clip_id,score");
  ScoreMap scores;
  std::vector<std::string> fields;
  while (reader.Next(fields)) {
    reader.ExpectFieldCount(fields, 2);
    reader.CheckId(fields[0], "clip_id");
    const double score = reader.ParseNumber(fields[1]);
    if (!scores.emplace(fields[0], score).second) {
      reader.Fail("duplicate clip_id '" + fields[0] + "'");
    }
  }
  return scores;
}

ScoreMap ParseScores(const std::filesystem::path& path) {
  auto in = OpenInput(path);
  return ParseScores(in, path.string());
}

GroundTruth ParseGroundTruth(std::istream& in, std::string_view source) {
  CsvReader reader(in, source);
  reader.ExpectHeader("clip_id,label,domain,machine");
  GroundTruth truth;
  std::vector<std::string> fields;
  while (reader.Next(fields)) {
    reader.ExpectFieldCount(fields, 4);
    reader.CheckId(fields[0], "clip_id");
    reader.CheckId(fields[3], "machine");
    TruthEntry entry;
    if (fields[1] == "normal") {
      entry.label = Label::kNormal;
    } else if (fields[1] == "anomalous") {
      entry.label = Label::kAnomalous;
    } else {
      reader.Fail("unknown label '" + fields[1] + "'");
    }
    if (fields[2] == "source") {
      entry.domain = Domain::kSource;
    } else if (fields[2] == "target") {
      entry.domain = Domain::kTarget;
    } else {
      reader.Fail("unknown domain '" + fields[2] + "'");
    }
    entry.machine = fields[3];
    if (!truth.entries.emplace(fields[0], std::move(entry)).second) {
      reader.Fail("duplicate clip_id '" + fields[0] + "'");
    }
  }
  return truth;
}

GroundTruth ParseGroundTruth(const std::filesystem::path& path) {
  auto in = OpenInput(path);
  return ParseGroundTruth(in, path.string());
}

ThresholdMap ParseThresholds(std::istream& in, std::string_view source) {
  CsvReader reader(in, source);
  reader.ExpectHeader("machine,threshold");
  ThresholdMap thresholds;
  std::vector<std::string> fields;
  while (reader.Next(fields)) {
    reader.ExpectFieldCount(fields, 2);
    reader.CheckId(fields[0], "machine");
    const double value = reader.ParseNumber(fields[1]);
    if (!thresholds.emplace(fields[0], value).second) {
      reader.Fail("duplicate machine '" + fields[0] + "'");
    }
  }
  return thresholds;
}

ThresholdMap ParseThresholds(const std::filesystem::path& path) {
  auto in = OpenInput(path);
  return ParseThresholds(in, path.string());
}

std::string FormatExact(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void WriteScores(std::ostream& out, const ScoreMap& scores) {
  out << "clip_id,score\n";
  for (const auto& [clip_id, score] : scores) {
    out << clip_id << ',' << FormatExact(score) << '\n';
  }
}

void WriteGroundTruth(std::ostream& out, const GroundTruth& truth) {
  out << "clip_id,label,domain,machine\n";
  for (const auto& [clip_id, entry] : truth.entries) {
    out << clip_id << ',' << LabelName(entry.label) << ','
        << DomainName(entry.domain) << ',' << entry.machine << '\n';
  }
}

void WriteThresholds(std::ostream& out, const ThresholdMap& thresholds) {
  out << "machine,threshold\n";
  for (const auto& [machine, value] : thresholds) {
    out << machine << ',' << FormatExact(value) << '\n';
  }
}

JoinResult Join(const ScoreMap& scores, const GroundTruth& truth) {
  std::map<std::string, std::vector<ScoreSample>> by_machine;
  std::vector<std::string> missing;
  for (const auto& [clip_id, entry] : truth.entries) {
    const auto it = scores.find(clip_id);
    if (it == scores.end()) {
      missing.push_back(clip_id);
      continue;
    }
    by_machine[entry.machine].push_back(
        {clip_id, it->second, entry.label, entry.domain});
  }
  if (!missing.empty()) throw JoinError(std::move(missing));

  JoinResult result;
  for (const auto& [clip_id, score] : scores) {
    if (!truth.entries.contains(clip_id)) {
      result.extra_clip_ids.push_back(clip_id);
    }
  }
  // std::map iteration gives lexicographic machines and clip ids.
  for (auto& [machine, samples] : by_machine) {
    result.sets.emplace_back(machine, std::move(samples));
  }
  return result;
}

}  // namespace f1ev::io
