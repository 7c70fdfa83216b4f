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

// Synthetic score data and brute-force reference implementations.
//
// All randomness comes from Rng, which is std::mt19937_64 (its output
// sequence is fixed by the C++ standard) with uniform and normal variates
// derived using only exact IEEE operations, so generated data is
// byte-identical on every conforming platform.

#ifndef F1EV_SYNTH_H_
#define F1EV_SYNTH_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "f1ev/dataset_io.h"
#include "f1ev/types.h"

namespace f1ev::synth {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double Uniform();
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  // Uniform integer on [lo, hi].
  std::size_t UniformIndex(std::size_t lo, std::size_t hi);
  // Approximately standard normal: sum of 12 uniforms minus 6 (Irwin-Hall).
  // Bounded to [-6, 6].
  double Normal();

 private:
  std::mt19937_64 engine_;
};

// Toy distributions with perfectly separable classes.
//   kSmallMargin:    normal U[1, 2], anomalous U[2.05, 3.05]
//   kLargeMargin:    normal U[1, 2], anomalous U[7, 8]
//   kPointThreshold: normal U[1, 2), anomalous U(2, 3]; the supports touch
//                    at 2, so the optimal interval shrinks with more samples.
enum class ToyKind { kSmallMargin, kLargeMargin, kPointThreshold };

std::string_view ToyKindName(ToyKind kind);
// Accepts "small-margin", "large-margin", "point-threshold".
ToyKind ParseToyKind(std::string_view name);

struct ToyScenario {
  ToyKind kind = ToyKind::kLargeMargin;
  std::size_t n_normal = 100;
  std::size_t n_anomalous = 100;
  std::uint64_t seed = 42;
};

// Throws kInvalidParameter for zero counts.
EvaluationSet GenerateToy(const ToyScenario& scenario);

// Random set for property tests: size uniform on [min_size, max_size], at
// least `min_normal` normal and one anomalous sample. Each score is, with
// probability `tie_probability`, a copy of an earlier score.
struct RandomSetOptions {
  std::size_t min_size = 2;
  std::size_t max_size = 100;
  std::size_t min_normal = 1;
  double tie_probability = 0.3;
};

EvaluationSet GenerateRandomSet(Rng& rng, const RandomSetOptions& options = {});

// A synthetic challenge: ground truth for two machine types and a family of
// systems with graded separation quality, domain shift, score outliers and a
// per-machine threshold taken from a percentile of simulated normal training
// scores.
struct Cohort {
  io::GroundTruth truth;
  std::vector<io::SystemSubmission> systems;
};

// Throws kInvalidParameter when n_systems < 3.
Cohort GenerateCohort(std::size_t n_systems, std::uint64_t seed);

}  // namespace f1ev::synth

// Reference implementations used to validate the metrics. They share no code
// with the metric implementations: every value is recomputed from raw
// (score, label) pairs.
namespace f1ev::oracle {

// Fraction of (normal, anomalous) pairs with normal < anomalous, ties
// counted as one half.
double PairwiseAuc(const EvaluationSet& set);

// Left-endpoint Riemann sum of F1 over `grid_points` uniform thresholds on
// [min score, max score].
double GridF1Ev(const EvaluationSet& set, std::size_t grid_points);

// Riemann sum over a grid built from the distinct scores, with each gap
// split into `refinement` equal parts. Exact for the step-shaped F1.
double EventGridF1Ev(const EvaluationSet& set, std::size_t refinement = 1);

// Bounded F1-EV from a uniform grid on [theta_min, theta_max]; the range is
// rebuilt from scratch (two-pass moments, brute-force optimal interval).
double GridBoundedF1Ev(const EvaluationSet& set, double alpha,
                       std::size_t grid_points);

// Standardized partial AUC from a midpoint rule over `grid_points` FPR
// values, with the tie-interpolated TPR evaluated directly from the scores.
double GridPartialAuc(const EvaluationSet& set, double max_fpr,
                      std::size_t grid_points);

// Width of the lowest optimal-F1 threshold interval, by brute force.
double OptimalIntervalWidth(const EvaluationSet& set);

}  // namespace f1ev::oracle

#endif  // F1EV_SYNTH_H_
