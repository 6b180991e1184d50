// Copyright 2026 The folkwalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "folkwalk/baselines.hpp"
#include "folkwalk/dataset.hpp"
#include "folkwalk/ranking.hpp"

namespace folkwalk {

using TestSets = std::vector<std::vector<std::size_t>>;

// All four metrics are percentages in [0, 100].
struct Metrics {
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
  double rankscore = 0.0;

  friend bool operator==(const Metrics&, const Metrics&) = default;
};

enum class FMeasureMode {
  kFromMeans,  // 2PR/(P+R) of the dataset-level P and R
  kPerUser,    // mean over users of per-user F
};

struct PrecisionRecall {
  double precision = 0.0;
  double recall = 0.0;
};

// Mean over users with a nonempty test set; lists are cut to top_n. Throws
// InvalidInputError when no user has a test item.
PrecisionRecall precision_recall(const RankedLists& recs, const TestSets& test_sets,
                                 std::size_t top_n);

// Harmonic mean; 0 when both are 0.
double f_measure(double precision, double recall);

// Half-life utility: a hit at 1-based rank r is worth 2^(-(r-1)/(h-1)),
// normalized by the best achievable utility over all counted users.
double rankscore(const RankedLists& recs, const TestSets& test_sets, std::size_t half_life);

struct EvalOptions {
  std::size_t top_n = 5;
  std::size_t half_life = 5;
  FMeasureMode f_mode = FMeasureMode::kFromMeans;
};

// Also rejects lists containing one of the user's training items.
Metrics evaluate(const RankedLists& recs, const Split& split, const EvalOptions& options);

struct ExperimentConfig {
  double train_fraction = 0.2;
  std::size_t top_n = 5;
  std::size_t n_runs = 10;
  std::uint64_t base_seed = 1;
  std::size_t half_life = 5;
  FMeasureMode f_mode = FMeasureMode::kFromMeans;
  // Worker threads for independent runs; results do not depend on it.
  std::size_t threads = 1;
};

struct RunMetrics {
  std::uint64_t seed = 0;
  Metrics metrics;
};

struct EvalReport {
  AlgorithmSpec algorithm;
  std::vector<RunMetrics> runs;
  Metrics means;
  std::size_t top_n = 0;
  std::size_t half_life = 0;
  double train_fraction = 0.0;
  std::vector<std::uint64_t> seeds;

  std::vector<double> series(std::string_view metric) const;
};

// Run r splits with seed base_seed + r, trains, recommends and scores.
EvalReport run_experiment(const TaggingDataset& ds, const AlgorithmSpec& algorithm,
                          const ExperimentConfig& config);

// One report per algorithm over the same splits.
std::vector<EvalReport> run_experiments(const TaggingDataset& ds,
                                        const std::vector<AlgorithmSpec>& algorithms,
                                        const ExperimentConfig& config);

struct SweepTable {
  std::vector<double> fractions;
  // cells[a][f]: algorithm a at fractions[f].
  std::vector<std::vector<EvalReport>> cells;
};

SweepTable density_sweep(const TaggingDataset& ds, const std::vector<AlgorithmSpec>& algorithms,
                         const std::vector<double>& fractions, const ExperimentConfig& config);

struct TTestResult {
  double t = 0.0;
  double p_value = 1.0;
  std::size_t df = 0;
};

// Two-tailed paired t-test on a - b. All-zero differences give t = 0, p = 1;
// a constant nonzero difference gives t = ±inf, p = 0.
TTestResult paired_t_test(std::span<const double> a, std::span<const double> b);

enum class Objective { kPrecision, kRecall, kFMeasure, kRankscore };

std::optional<Objective> parse_objective(std::string_view name);
std::string_view objective_name(Objective objective);
double metric_value(const Metrics& m, Objective objective);

// Empty axes take their value from the base spec.
struct ParamGrid {
  std::vector<double> alpha;
  std::vector<double> beta;
  std::vector<double> eta;
  std::vector<double> lambda;
  std::vector<double> mu;
};

struct GridCell {
  AlgorithmSpec spec;
  Metrics means;
};

struct GridResult {
  Objective objective = Objective::kPrecision;
  std::vector<GridCell> cells;  // alpha outermost, mu innermost
  std::size_t best = 0;         // first cell attaining the maximum
};

// Enumerates the Cartesian product of the grid around `base` and scores each
// cell with run_experiment under `validation`.
GridResult grid_search(const TaggingDataset& ds, const ParamGrid& grid, Objective objective,
                       const AlgorithmSpec& base, const ExperimentConfig& validation);

}  // namespace folkwalk
