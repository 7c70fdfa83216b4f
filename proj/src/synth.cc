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

#include "f1ev/synth.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>

#include "f1ev/error.h"

namespace f1ev::synth {

double Rng::Uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::size_t Rng::UniformIndex(std::size_t lo, std::size_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  // Rejection sampling keeps the draw unbiased.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return lo + static_cast<std::size_t>(x % span);
}

double Rng::Normal() {
  double sum = 0.0;
  for (int i = 0; i < 12; ++i) sum += Uniform();
  return sum - 6.0;
}

std::string_view ToyKindName(ToyKind kind) {
  switch (kind) {
    case ToyKind::kSmallMargin:
      return "small-margin";
    case ToyKind::kLargeMargin:
      return "large-margin";
    case ToyKind::kPointThreshold:
      return "point-threshold";
  }
  return "unknown";
}

ToyKind ParseToyKind(std::string_view name) {
  for (ToyKind kind : {ToyKind::kSmallMargin, ToyKind::kLargeMargin,
                       ToyKind::kPointThreshold}) {
    if (ToyKindName(kind) == name) return kind;
  }
  throw Error(ErrorCode::kInvalidParameter,
              "unknown toy scenario '" + std::string(name) + "'");
}

namespace {

std::string ClipId(std::string_view prefix, std::size_t index) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*s_%04zu",
                static_cast<int>(prefix.size()), prefix.data(), index);
  return buffer;
}

}  // namespace

EvaluationSet GenerateToy(const ToyScenario& scenario) {
  if (scenario.n_normal == 0 || scenario.n_anomalous == 0) {
    throw Error(ErrorCode::kInvalidParameter,
                "toy scenarios need at least one sample per class");
  }
  Rng rng(scenario.seed);
  std::vector<ScoreSample> samples;
  samples.reserve(scenario.n_normal + scenario.n_anomalous);
  for (std::size_t i = 0; i < scenario.n_normal; ++i) {
    samples.push_back({ClipId("normal", i), 1.0 + rng.Uniform(), Label::kNormal,
                       std::nullopt});
  }
  for (std::size_t i = 0; i < scenario.n_anomalous; ++i) {
    double score = 0.0;
    switch (scenario.kind) {
      case ToyKind::kSmallMargin:
        score = 2.05 + rng.Uniform();
        break;
      case ToyKind::kLargeMargin:
        score = 7.0 + rng.Uniform();
        break;
      case ToyKind::kPointThreshold:
        // 3 - [0, 1) is (2, 3].
        score = 3.0 - rng.Uniform();
        break;
    }
    samples.push_back(
        {ClipId("anomalous", i), score, Label::kAnomalous, std::nullopt});
  }
  return EvaluationSet(std::string(ToyKindName(scenario.kind)),
                       std::move(samples));
}

EvaluationSet GenerateRandomSet(Rng& rng, const RandomSetOptions& options) {
  const std::size_t min_size =
      std::max(options.min_size, options.min_normal + 1);
  const std::size_t size =
      rng.UniformIndex(min_size, std::max(min_size, options.max_size));
  const std::size_t n_normal = rng.UniformIndex(options.min_normal, size - 1);

  std::vector<double> scores;
  scores.reserve(size);
  for (std::size_t i = 0; i < size; ++i) {
    if (!scores.empty() && rng.Uniform() < options.tie_probability) {
      scores.push_back(scores[rng.UniformIndex(0, scores.size() - 1)]);
    } else {
      scores.push_back(rng.Uniform(0.0, 10.0));
    }
  }
  // Shuffle so that copies land in both classes.
  for (std::size_t i = size - 1; i > 0; --i) {
    std::swap(scores[i], scores[rng.UniformIndex(0, i)]);
  }
  return EvaluationSet::FromScores(
      std::span<const double>(scores).first(n_normal),
      std::span<const double>(scores).subspan(n_normal), "random");
}

namespace {

// Shape of one (system, machine) score distribution. Scores are
//   base + spread * (z + separation * anomalous + shift * target)
// with z ~ Normal(), plus occasional large positive outliers.
struct SystemModel {
  double base;
  double spread;
  double separation;
  double target_separation;
  double domain_shift;
  double missed_rate;
  double inverted_rate;
  double outlier_rate;
  double percentile;
};

constexpr std::size_t kClipsPerGroup = 50;  // per (domain, label)
constexpr std::size_t kTrainingClips = 200;
constexpr const char* kCohortMachines[] = {"fan", "valve"};

SystemModel DrawModel(Rng& rng, double quality) {
  SystemModel model;
  model.base = rng.Uniform(10.0, 14.0);
  model.spread = rng.Uniform(0.3, 1.0);
  model.separation = 0.3 + 2.7 * quality + rng.Uniform(-0.3, 0.3);
  model.target_separation = model.separation * rng.Uniform(0.4, 1.0);
  model.domain_shift = rng.Uniform(0.0, 4.0);
  model.missed_rate = rng.Uniform(0.0, 0.6);
  model.inverted_rate = rng.Uniform(0.0, 0.4);
  model.outlier_rate = rng.Uniform() < 0.3 ? rng.Uniform(0.01, 0.05) : 0.0;
  model.percentile = rng.Uniform(0.8, 0.99);
  return model;
}

double DrawScore(Rng& rng, const SystemModel& model, Label label,
                 Domain domain) {
  double z = rng.Normal();
  if (domain == Domain::kTarget) z += model.domain_shift;
  if (label == Label::kAnomalous) {
    const double kind = rng.Uniform();
    if (kind < model.missed_rate) {
      // Scored like a normal clip.
    } else if (kind < model.missed_rate + model.inverted_rate) {
      z -= 3.0;
    } else {
      z += domain == Domain::kTarget ? model.target_separation
                                     : model.separation;
    }
  }
  if (rng.Uniform() < model.outlier_rate) z += rng.Uniform(10.0, 40.0);
  return std::max(0.0, model.base + model.spread * z);
}

// Percentile of simulated source-domain normal training scores.
double EstimateThreshold(Rng& rng, const SystemModel& model) {
  std::vector<double> training(kTrainingClips);
  for (auto& score : training) {
    score = std::max(0.0, model.base + model.spread * rng.Normal());
  }
  std::sort(training.begin(), training.end());
  const auto index = static_cast<std::size_t>(
      model.percentile * static_cast<double>(training.size() - 1));
  return training[index];
}

}  // namespace

Cohort GenerateCohort(std::size_t n_systems, std::uint64_t seed) {
  if (n_systems < 3) {
    throw Error(ErrorCode::kInvalidParameter,
                "a cohort needs at least three systems");
  }
  Cohort cohort;
  for (const char* machine : kCohortMachines) {
    for (Domain domain : {Domain::kSource, Domain::kTarget}) {
      for (Label label : {Label::kNormal, Label::kAnomalous}) {
        for (std::size_t i = 0; i < kClipsPerGroup; ++i) {
          const std::string prefix = std::string(machine) + "_" +
                                     std::string(DomainName(domain)) + "_" +
                                     std::string(LabelName(label));
          cohort.truth.entries.emplace(ClipId(prefix, i),
                                       io::TruthEntry{label, domain, machine});
        }
      }
    }
  }

  Rng rng(seed);
  for (std::size_t s = 0; s < n_systems; ++s) {
    io::SystemSubmission system;
    char id[32];
    std::snprintf(id, sizeof(id), "system_%03zu", s);
    system.system_id = id;
    system.thresholds.emplace();
    const double quality =
        static_cast<double>(s) / static_cast<double>(n_systems - 1);
    for (const char* machine : kCohortMachines) {
      const SystemModel model = DrawModel(rng, quality);
      // Ground-truth entries iterate in clip-id order, which is stable.
      for (const auto& [clip_id, entry] : cohort.truth.entries) {
        if (entry.machine != machine) continue;
        system.scores.emplace(clip_id,
                              DrawScore(rng, model, entry.label, entry.domain));
      }
      (*system.thresholds)[machine] = EstimateThreshold(rng, model);
    }
    cohort.systems.push_back(std::move(system));
  }
  return cohort;
}

}  // namespace f1ev::synth

namespace f1ev::oracle {
namespace {

struct Sample {
  double score;
  bool anomalous;
};

std::vector<Sample> RawSamples(const EvaluationSet& set) {
  std::vector<Sample> raw;
  for (const auto& s : set.samples()) {
    raw.push_back({s.score, s.label == Label::kAnomalous});
  }
  return raw;
}

void RequireBothClasses(const std::vector<Sample>& raw) {
  const bool has_normal =
      std::any_of(raw.begin(), raw.end(), [](auto s) { return !s.anomalous; });
  const bool has_anomalous =
      std::any_of(raw.begin(), raw.end(), [](auto s) { return s.anomalous; });
  if (!has_normal || !has_anomalous) {
    throw Error(ErrorCode::kSingleClass, "oracle needs both classes");
  }
}

struct Counts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
};

Counts CountAbove(const std::vector<Sample>& raw, double threshold) {
  Counts c;
  for (const auto& s : raw) {
    if (s.score > threshold) {
      (s.anomalous ? c.tp : c.fp) += 1;
    } else if (s.anomalous) {
      c.fn += 1;
    }
  }
  return c;
}

double F1Of(const Counts& c) {
  if (c.tp == 0) return 0.0;
  return 2.0 * static_cast<double>(c.tp) /
         static_cast<double>(2 * c.tp + c.fp + c.fn);
}

std::vector<double> DistinctScores(const std::vector<Sample>& raw) {
  std::vector<double> values;
  for (const auto& s : raw) values.push_back(s.score);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

// Sum over `thresholds` (ascending) of F1 * gap / width, where each gap runs
// to the next threshold or to `end`. F1 is updated by a pointer sweep.
double SweepSum(std::vector<Sample> raw, const std::vector<double>& thresholds,
                double end) {
  std::sort(raw.begin(), raw.end(),
            [](auto a, auto b) { return a.score < b.score; });
  std::uint64_t total_anomalous = 0;
  std::uint64_t total_normal = 0;
  for (const auto& s : raw) (s.anomalous ? total_anomalous : total_normal)++;

  const double width = end - thresholds.front();
  std::size_t at_or_below = 0;
  std::uint64_t anomalous_below = 0;
  std::uint64_t normal_below = 0;
  double sum = 0.0;
  for (std::size_t g = 0; g < thresholds.size(); ++g) {
    const double t = thresholds[g];
    while (at_or_below < raw.size() && raw[at_or_below].score <= t) {
      (raw[at_or_below].anomalous ? anomalous_below : normal_below)++;
      ++at_or_below;
    }
    const Counts c{total_anomalous - anomalous_below,
                   total_normal - normal_below, anomalous_below};
    const double next = g + 1 < thresholds.size() ? thresholds[g + 1] : end;
    sum += F1Of(c) * (next - t);
  }
  return sum / width;
}

std::vector<double> UniformGrid(double lo, double hi, std::size_t points) {
  std::vector<double> grid(points);
  for (std::size_t g = 0; g < points; ++g) {
    grid[g] = lo + (hi - lo) * (static_cast<double>(g) /
                                static_cast<double>(points));
  }
  return grid;
}

// Brute-force lowest optimal run over the distinct scores: returns
// (lower, upper) of [lower, upper), or the last score twice when the run
// reaches it.
std::pair<double, double> BruteOptimalInterval(const std::vector<Sample>& raw) {
  const auto values = DistinctScores(raw);
  std::vector<Counts> counts;
  for (double v : values) counts.push_back(CountAbove(raw, v));
  // a > b  <=>  tp_a * den_b > tp_b * den_a
  const auto better = [](const Counts& a, const Counts& b) {
    const long double lhs = static_cast<long double>(a.tp) *
                            static_cast<long double>(2 * b.tp + b.fp + b.fn);
    const long double rhs = static_cast<long double>(b.tp) *
                            static_cast<long double>(2 * a.tp + a.fp + a.fn);
    return lhs > rhs;
  };
  const auto same = [&](const Counts& a, const Counts& b) {
    return !better(a, b) && !better(b, a);
  };
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (better(counts[i], counts[best])) best = i;
  }
  std::size_t end = best;
  while (end + 1 < values.size() && same(counts[end + 1], counts[best])) ++end;
  if (end + 1 == values.size()) return {values.back(), values.back()};
  return {values[best], values[end + 1]};
}

}  // namespace

double PairwiseAuc(const EvaluationSet& set) {
  const auto raw = RawSamples(set);
  RequireBothClasses(raw);
  std::uint64_t twice_wins = 0;
  std::uint64_t pairs = 0;
  for (const auto& normal : raw) {
    if (normal.anomalous) continue;
    for (const auto& anomalous : raw) {
      if (!anomalous.anomalous) continue;
      ++pairs;
      if (normal.score < anomalous.score) {
        twice_wins += 2;
      } else if (normal.score == anomalous.score) {
        twice_wins += 1;
      }
    }
  }
  return static_cast<double>(twice_wins) / (2.0 * static_cast<double>(pairs));
}

double GridF1Ev(const EvaluationSet& set, std::size_t grid_points) {
  const auto raw = RawSamples(set);
  RequireBothClasses(raw);
  const auto values = DistinctScores(raw);
  if (values.size() < 2) {
    throw Error(ErrorCode::kDegenerateScores, "all scores are equal");
  }
  return SweepSum(raw, UniformGrid(values.front(), values.back(), grid_points),
                  values.back());
}

double EventGridF1Ev(const EvaluationSet& set, std::size_t refinement) {
  const auto raw = RawSamples(set);
  RequireBothClasses(raw);
  const auto values = DistinctScores(raw);
  if (values.size() < 2) {
    throw Error(ErrorCode::kDegenerateScores, "all scores are equal");
  }
  const double width = values.back() - values.front();
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    const double gap = values[i + 1] - values[i];
    for (std::size_t j = 0; j < refinement; ++j) {
      const double t = values[i] + gap * (static_cast<double>(j) /
                                          static_cast<double>(refinement));
      const double next =
          j + 1 == refinement
              ? values[i + 1]
              : values[i] + gap * (static_cast<double>(j + 1) /
                                   static_cast<double>(refinement));
      sum += F1Of(CountAbove(raw, t)) * (next - t) / width;
    }
  }
  return sum;
}

double GridBoundedF1Ev(const EvaluationSet& set, double alpha,
                       std::size_t grid_points) {
  const auto raw = RawSamples(set);
  RequireBothClasses(raw);

  // Welford's running moments over the normal scores.
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t n = 0;
  for (const auto& s : raw) {
    if (s.anomalous) continue;
    ++n;
    const double delta = s.score - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (s.score - mean);
  }
  if (n < 2) {
    throw Error(ErrorCode::kInsufficientNormals, "need two normal scores");
  }
  const double sigma = std::sqrt(m2 / static_cast<double>(n - 1));
  const auto [lower, upper] = BruteOptimalInterval(raw);
  const double theta_opt = 0.5 * (lower + upper);
  const double theta_min = mean - alpha * sigma;
  const double theta_max = theta_opt + alpha * sigma;

  if (sigma == 0.0 || theta_min >= theta_max) {
    return F1Of(CountAbove(raw, 0.5 * (theta_min + theta_max)));
  }
  return SweepSum(raw, UniformGrid(theta_min, theta_max, grid_points),
                  theta_max);
}

double GridPartialAuc(const EvaluationSet& set, double max_fpr,
                      std::size_t grid_points) {
  const auto raw = RawSamples(set);
  RequireBothClasses(raw);
  std::vector<double> normal;
  std::vector<double> anomalous;
  for (const auto& s : raw) (s.anomalous ? anomalous : normal).push_back(s.score);
  std::sort(normal.begin(), normal.end(), std::greater<>());
  const auto n_normal = static_cast<double>(normal.size());
  const auto n_anomalous = static_cast<double>(anomalous.size());

  // Along the curve, false positives accrue one normal score at a time from
  // the top. A block of equal normal scores v spans false-positive counts
  // [first, last]; over it TPR rises linearly from #(anomalous > v) to
  // #(anomalous >= v).
  struct Block {
    double first;
    double last;
    double above;
    double tied;
  };
  std::vector<Block> blocks;
  for (std::size_t a = 0; a < normal.size();) {
    std::size_t b = a;
    while (b < normal.size() && normal[b] == normal[a]) ++b;
    Block block{static_cast<double>(a), static_cast<double>(b), 0.0, 0.0};
    for (double s : anomalous) {
      if (s > normal[a]) block.above += 1.0;
      if (s == normal[a]) block.tied += 1.0;
    }
    blocks.push_back(block);
    a = b;
  }

  const double h = max_fpr / static_cast<double>(grid_points);
  double area = 0.0;
  std::size_t current = 0;
  for (std::size_t g = 0; g < grid_points; ++g) {
    const double k = (static_cast<double>(g) + 0.5) * h * n_normal;
    while (current + 1 < blocks.size() && k > blocks[current].last) ++current;
    const Block& block = blocks[current];
    const double frac = std::clamp(
        (k - block.first) / (block.last - block.first), 0.0, 1.0);
    area += (block.above + block.tied * frac) / n_anomalous * h;
  }
  const double floor_area = 0.5 * max_fpr * max_fpr;
  return 0.5 * (1.0 + (area - floor_area) / (max_fpr - floor_area));
}

double OptimalIntervalWidth(const EvaluationSet& set) {
  const auto raw = RawSamples(set);
  RequireBothClasses(raw);
  const auto [lower, upper] = BruteOptimalInterval(raw);
  return upper - lower;
}

}  // namespace f1ev::oracle
