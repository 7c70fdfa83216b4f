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

#include <sstream>
#include <string>
#include <vector>

#include "f1ev/error.h"
#include "f1ev/synth.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace f1ev::io {
namespace {

using ::testing::ElementsAre;
using ::testing::HasSubstr;

ScoreMap Scores(const std::string& text) {
  std::istringstream in(text);
  return ParseScores(in, "scores.csv");
}

GroundTruth Truth(const std::string& text) {
  std::istringstream in(text);
  return ParseGroundTruth(in, "truth.csv");
}

ThresholdMap Thresholds(const std::string& text) {
  std::istringstream in(text);
  return ParseThresholds(in, "thresholds.csv");
}

template <typename F>
std::size_t ParseErrorLine(F&& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.line();
  }
  ADD_FAILURE() << "no ParseError";
  return 0;
}

constexpr char kTruth[] =
    "clip_id,label,domain,machine\n"
    "f1,normal,source,fan\n"
    "f2,normal,target,fan\n"
    "f3,anomalous,source,fan\n"
    "f4,anomalous,target,fan\n"
    "v1,normal,source,valve\n"
    "v2,normal,source,valve\n"
    "v3,anomalous,target,valve\n"
    "v4,anomalous,source,valve\n";

constexpr char kScores[] =
    "clip_id,score\n"
    "f1,0.1\nf2,0.2\nf3,0.9\nf4,0.8\n"
    "v1,1\nv2,2\nv3,8\nv4,9\n";

TEST(ParseScores, Basic) {
  const auto scores = Scores("clip_id,score\na,0.5\nb,1e-3\n");
  EXPECT_EQ(scores.size(), 2u);
  EXPECT_EQ(scores.at("a"), 0.5);
  EXPECT_EQ(scores.at("b"), 1e-3);
}

TEST(ParseScores, CrlfBlankLinesAndBom) {
  const auto scores = Scores("\xEF\xBB\xBF" "clip_id,score\r\na,1\r\n\r\nb,2\r\n");
  EXPECT_EQ(scores.size(), 2u);
  EXPECT_EQ(scores.at("b"), 2.0);
}

TEST(ParseScores, DuplicateReportsLine) {
  EXPECT_EQ(ParseErrorLine([] { Scores("clip_id,score\na,1\na,2\n"); }), 3u);
}

TEST(ParseScores, RejectsNonFiniteAndGarbage) {
  EXPECT_EQ(ParseErrorLine([] { Scores("clip_id,score\na,1\nb,NaN\n"); }), 3u);
  EXPECT_EQ(ParseErrorLine([] { Scores("clip_id,score\na,inf\n"); }), 2u);
  EXPECT_EQ(ParseErrorLine([] { Scores("clip_id,score\na,1x\n"); }), 2u);
  EXPECT_EQ(ParseErrorLine([] { Scores("clip_id,score\na\n"); }), 2u);
  EXPECT_EQ(ParseErrorLine([] { Scores("clip_id,score\na,1,2\n"); }), 2u);
}

TEST(ParseScores, HeaderIsMandatory) {
  EXPECT_EQ(ParseErrorLine([] { Scores("a,1\n"); }), 1u);
  // An empty file has no line to point at.
  EXPECT_EQ(ParseErrorLine([] { Scores(""); }), 0u);
}

TEST(ParseScores, MessageNamesSourceAndLine) {
  try {
    Scores("clip_id,score\na,1\na,2\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
    EXPECT_EQ(e.path(), "scores.csv");
    EXPECT_THAT(e.what(), HasSubstr("scores.csv:3"));
  }
}

TEST(ParseGroundTruth, Basic) {
  const auto truth = Truth(kTruth);
  EXPECT_EQ(truth.entries.size(), 8u);
  EXPECT_EQ(truth.entries.at("f4"),
            (TruthEntry{Label::kAnomalous, Domain::kTarget, "fan"}));
}

TEST(ParseGroundTruth, UnknownVocabulary) {
  EXPECT_EQ(ParseErrorLine([] {
              Truth("clip_id,label,domain,machine\na,normal,source,fan\n"
                    "b,broken,source,fan\n");
            }),
            3u);
  EXPECT_EQ(ParseErrorLine([] {
              Truth("clip_id,label,domain,machine\na,normal,elsewhere,fan\n");
            }),
            2u);
  EXPECT_EQ(ParseErrorLine([] {
              Truth("clip_id,label,domain,machine\na,normal,source,fan\n"
                    "a,anomalous,source,fan\n");
            }),
            3u);
}

TEST(ParseThresholds, Basic) {
  const auto thresholds = Thresholds("machine,threshold\nfan,0.5\nvalve,3\n");
  EXPECT_EQ(thresholds.at("fan"), 0.5);
  EXPECT_EQ(thresholds.at("valve"), 3.0);
  EXPECT_EQ(ParseErrorLine([] {
              Thresholds("machine,threshold\nfan,1\nfan,2\n");
            }),
            3u);
}

TEST(ParseFiles, MissingFileIsParseError) {
  EXPECT_THROW(ParseScores(std::filesystem::path("/nonexistent/x.csv")),
               ParseError);
}

TEST(Join, TwoMachinesFourClipsEach) {
  const auto result = Join(Scores(kScores), Truth(kTruth));
  ASSERT_EQ(result.sets.size(), 2u);
  EXPECT_EQ(result.sets[0].machine(), "fan");
  EXPECT_EQ(result.sets[1].machine(), "valve");
  EXPECT_EQ(result.sets[0].size(), 4u);
  EXPECT_EQ(result.sets[1].size(), 4u);
  EXPECT_EQ(result.sets[0].num_anomalous(), 2u);
  EXPECT_TRUE(result.extra_clip_ids.empty());
  EXPECT_EQ(result.sets[1].samples()[2].domain, Domain::kTarget);
}

TEST(Join, MissingClipNamed) {
  auto scores = Scores(kScores);
  scores.erase("v3");
  try {
    Join(scores, Truth(kTruth));
    FAIL();
  } catch (const JoinError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kJoinError);
    EXPECT_THAT(e.missing_ids(), ElementsAre("v3"));
    EXPECT_THAT(e.what(), HasSubstr("v3"));
  }
}

TEST(Join, ExtraClipReportedAndExcluded) {
  auto scores = Scores(kScores);
  scores["zz"] = 5.0;
  const auto result = Join(scores, Truth(kTruth));
  EXPECT_THAT(result.extra_clip_ids, ElementsAre("zz"));
  EXPECT_EQ(result.sets[0].size() + result.sets[1].size(), 8u);
}

TEST(Join, RowOrderDoesNotMatter) {
  const std::string reversed_scores =
      "clip_id,score\nv4,9\nv3,8\nv2,2\nv1,1\nf4,0.8\nf3,0.9\nf2,0.2\nf1,0.1\n";
  std::string truth_text = kTruth;
  std::vector<std::string> lines;
  std::istringstream in(truth_text);
  std::string header;
  std::getline(in, header);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  std::string reversed_truth = header + "\n";
  for (auto it = lines.rbegin(); it != lines.rend(); ++it) {
    reversed_truth += *it + "\n";
  }

  const auto a = Join(Scores(kScores), Truth(kTruth));
  const auto b = Join(Scores(reversed_scores), Truth(reversed_truth));
  ASSERT_EQ(a.sets.size(), b.sets.size());
  for (std::size_t i = 0; i < a.sets.size(); ++i) {
    ASSERT_EQ(a.sets[i].size(), b.sets[i].size());
    for (std::size_t k = 0; k < a.sets[i].size(); ++k) {
      EXPECT_EQ(a.sets[i].samples()[k].clip_id, b.sets[i].samples()[k].clip_id);
      EXPECT_EQ(a.sets[i].samples()[k].score, b.sets[i].samples()[k].score);
    }
  }
}

TEST(FormatExact, RoundTripsDoubles) {
  synth::Rng rng(31);
  for (int i = 0; i < 1000; ++i) {
    const double v = rng.Uniform(0, 1e6) * rng.Uniform();
    EXPECT_EQ(std::stod(FormatExact(v)), v);
  }
  EXPECT_EQ(FormatExact(0.5), "0.5");
}

TEST(RoundTrip, ParseWriteParse) {
  synth::Rng rng(37);
  ScoreMap scores;
  GroundTruth truth;
  ThresholdMap thresholds;
  for (int i = 0; i < 200; ++i) {
    const std::string id = "clip_" + std::to_string(i);
    scores[id] = rng.Uniform(0, 100);
    truth.entries[id] = {rng.Uniform() < 0.5 ? Label::kNormal
                                             : Label::kAnomalous,
                         rng.Uniform() < 0.5 ? Domain::kSource
                                             : Domain::kTarget,
                         rng.Uniform() < 0.5 ? "fan" : "valve"};
  }
  thresholds["fan"] = rng.Uniform(0, 10);
  thresholds["valve"] = rng.Uniform(0, 10);

  std::ostringstream s1, t1, h1;
  WriteScores(s1, scores);
  WriteGroundTruth(t1, truth);
  WriteThresholds(h1, thresholds);
  EXPECT_EQ(Scores(s1.str()), scores);
  EXPECT_EQ(Truth(t1.str()).entries, truth.entries);
  EXPECT_EQ(Thresholds(h1.str()), thresholds);

  std::ostringstream s2;
  WriteScores(s2, Scores(s1.str()));
  EXPECT_EQ(s2.str(), s1.str());
}

}  // namespace
}  // namespace f1ev::io
