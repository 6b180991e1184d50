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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "folkwalk/dataset.hpp"
#include "folkwalk/ranking.hpp"
#include "folkwalk/similarity.hpp"
#include "folkwalk/walker.hpp"

namespace folkwalk {

enum class AlgorithmKind { kRandom, kUserCF, kItemCF, kFusion, kPrwIT, kPrwUT, kPrwUI, kPrw };

// Display name as used in report tables ("User based", "pRW-IT", ...).
std::string_view display_name(AlgorithmKind kind);
// Machine name as accepted on the command line ("user-cf", "prw-it", ...).
std::string_view cli_name(AlgorithmKind kind);
// Case-insensitive; accepts either name form.
std::optional<AlgorithmKind> parse_algorithm(std::string_view name);

struct AlgorithmSpec {
  AlgorithmKind kind = AlgorithmKind::kPrw;
  // Neighborhood size for the CF baselines; nullopt uses every neighbor.
  std::optional<std::size_t> neighbors;
  double fuse_weight = 0.5;  // Fusion: weight of the user-based part
  WalkConfig walk;
  SimilarityConfig similarity;
  Solver solver = Solver::kIterative;
};

void validate(const AlgorithmSpec& spec);

// Parameters the random-walk variants actually run with: pRW-IT forces α = 1
// and μ = 1, pRW-UT forces β = 1 and μ = 0, pRW-UI forces α = β = 0.
AlgorithmSpec effective_spec(const AlgorithmSpec& spec);

// Pairwise cosine similarity of the rows of `a`, zero for empty rows.
SparseMatrix cosine_rows(const SparseMatrix& a);

// Keeps, per row, the k largest off-diagonal entries (ties: lower column);
// the diagonal is always dropped. nullopt keeps every off-diagonal entry.
SparseMatrix top_k_neighbors(const SparseMatrix& sim, std::optional<std::size_t> k);

// score(u, j) = Σ_{v ∈ N(u)} cos(u, v) · train_ui[v][j].
SparseMatrix user_cf_scores(const SparseMatrix& train_ui, std::optional<std::size_t> k);
// score(u, j) = Σ_{i ∈ train(u)} cos(i, j) over item columns.
SparseMatrix item_cf_scores(const SparseMatrix& train_ui, std::optional<std::size_t> k);
// Tag-extended profiles: user rows [UI | UT], item rows [UIᵀ | IT]; the two
// CF predictions are mixed as w·user + (1-w)·item.
SparseMatrix fusion_scores(const SparseMatrix& train_ui, const SparseMatrix& ut,
                           const SparseMatrix& it, double fuse_weight,
                           std::optional<std::size_t> k = std::nullopt);

// Scores of a random-walk variant on an already-restricted training view
// (its ui is the training matrix). Random has no scores.
SparseMatrix prw_scores(const TaggingDataset& view, const AlgorithmSpec& spec);
// Same walk with both partial score matrices and convergence traces.
WalkResult prw_walk(const TaggingDataset& view, const AlgorithmSpec& spec);
SimilarityPair prw_similarities(const TaggingDataset& view, const AlgorithmSpec& spec);

RankedLists random_recommender(const Split& split, std::uint64_t seed, std::size_t top_n);
RankedLists user_cf(const Split& split, std::optional<std::size_t> k, std::size_t top_n);
RankedLists item_cf(const Split& split, std::optional<std::size_t> k, std::size_t top_n);
RankedLists fusion_cf(const Split& split, const TaggingDataset& ds, double fuse_weight,
                      std::size_t top_n, std::optional<std::size_t> k = std::nullopt);
RankedLists ablation(AlgorithmKind kind, const Split& split, const TaggingDataset& ds,
                     const AlgorithmSpec& config, std::size_t top_n);

// Scores of any non-random algorithm trained on `split`.
SparseMatrix algorithm_scores(const AlgorithmSpec& spec, const TaggingDataset& ds,
                              const Split& split);

// Dispatches on spec.kind. `seed` only drives the Random baseline; tag
// matrices are restricted to training saves before any algorithm sees them.
RankedLists run_algorithm(const AlgorithmSpec& spec, const TaggingDataset& ds, const Split& split,
                          std::uint64_t seed, std::size_t top_n);

}  // namespace folkwalk
