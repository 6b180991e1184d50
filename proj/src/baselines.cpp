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
#include "folkwalk/baselines.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>

#include <fmt/core.h>

#include "folkwalk/error.hpp"
#include "folkwalk/random.hpp"

namespace folkwalk {

namespace {

struct KindNames {
  AlgorithmKind kind;
  std::string_view display;
  std::string_view cli;
};

constexpr std::array<KindNames, 8> kNames = {{
    {AlgorithmKind::kRandom, "Random", "random"},
    {AlgorithmKind::kUserCF, "User based", "user-cf"},
    {AlgorithmKind::kItemCF, "Item based", "item-cf"},
    {AlgorithmKind::kFusion, "Fusion", "fusion"},
    {AlgorithmKind::kPrwIT, "pRW-IT", "prw-it"},
    {AlgorithmKind::kPrwUT, "pRW-UT", "prw-ut"},
    {AlgorithmKind::kPrwUI, "pRW-UI", "prw-ui"},
    {AlgorithmKind::kPrw, "pRW", "prw"},
}};

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool is_walk(AlgorithmKind kind) {
  return kind == AlgorithmKind::kPrwIT || kind == AlgorithmKind::kPrwUT ||
         kind == AlgorithmKind::kPrwUI || kind == AlgorithmKind::kPrw;
}

SparseMatrix drop_diagonal(const SparseMatrix& m) {
  auto entries = m.entries();
  std::erase_if(entries, [](const auto& e) { return e.row == e.col; });
  return SparseMatrix::from_entries(m.rows(), m.cols(), std::move(entries));
}

}  // namespace

std::string_view display_name(AlgorithmKind kind) {
  for (const auto& n : kNames)
    if (n.kind == kind) return n.display;
  return "?";
}

std::string_view cli_name(AlgorithmKind kind) {
  for (const auto& n : kNames)
    if (n.kind == kind) return n.cli;
  return "?";
}

std::optional<AlgorithmKind> parse_algorithm(std::string_view name) {
  const std::string key = lowercase(name);
  for (const auto& n : kNames)
    if (key == n.cli || key == lowercase(n.display)) return n.kind;
  return std::nullopt;
}

void validate(const AlgorithmSpec& spec) {
  if (spec.neighbors && *spec.neighbors == 0)
    throw DomainError("neighborhood size must be at least 1");
  if (!(spec.fuse_weight >= 0.0 && spec.fuse_weight <= 1.0))
    throw DomainError(fmt::format("fuse weight {} not in [0, 1]", spec.fuse_weight));
  for (const auto& [name, w] : {std::pair{"alpha", spec.similarity.alpha},
                                std::pair{"beta", spec.similarity.beta}})
    if (!(w >= 0.0 && w <= 1.0)) throw DomainError(fmt::format("{} = {} not in [0, 1]", name, w));
  validate(spec.walk);
}

AlgorithmSpec effective_spec(const AlgorithmSpec& spec) {
  AlgorithmSpec eff = spec;
  switch (spec.kind) {
    case AlgorithmKind::kPrwIT:
      eff.similarity.alpha = 1.0;
      eff.walk.mu = 1.0;
      break;
    case AlgorithmKind::kPrwUT:
      eff.similarity.beta = 1.0;
      eff.walk.mu = 0.0;
      break;
    case AlgorithmKind::kPrwUI:
      eff.similarity.alpha = 0.0;
      eff.similarity.beta = 0.0;
      break;
    default:
      break;
  }
  return eff;
}

SparseMatrix cosine_rows(const SparseMatrix& a) {
  auto entries = a.entries();
  std::vector<double> norm(a.rows(), 0.0);
  for (const auto& e : entries) norm[e.row] += e.value * e.value;
  for (auto& v : norm) v = std::sqrt(v);
  for (auto& e : entries) e.value /= norm[e.row];
  const SparseMatrix unit = SparseMatrix::from_entries(a.rows(), a.cols(), std::move(entries));
  return matmul(unit, transpose(unit));
}

SparseMatrix top_k_neighbors(const SparseMatrix& sim, std::optional<std::size_t> k) {
  if (!k) return drop_diagonal(sim);
  std::vector<SparseMatrix::Entry> kept;
  std::vector<std::pair<std::size_t, double>> row;
  for (std::size_t i = 0; i < sim.rows(); ++i) {
    row.clear();
    const auto cols = sim.row_cols(i);
    const auto vals = sim.row_values(i);
    for (std::size_t q = 0; q < cols.size(); ++q)
      if (cols[q] != i && vals[q] > 0.0) row.emplace_back(cols[q], vals[q]);
    const std::size_t keep = std::min(*k, row.size());
    std::partial_sort(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(keep), row.end(),
                      [](const auto& a, const auto& b) {
                        return a.second != b.second ? a.second > b.second : a.first < b.first;
                      });
    for (std::size_t q = 0; q < keep; ++q) kept.push_back({i, row[q].first, row[q].second});
  }
  return SparseMatrix::from_entries(sim.rows(), sim.cols(), std::move(kept));
}

SparseMatrix user_cf_scores(const SparseMatrix& train_ui, std::optional<std::size_t> k) {
  return matmul(top_k_neighbors(cosine_rows(train_ui), k), train_ui);
}

SparseMatrix item_cf_scores(const SparseMatrix& train_ui, std::optional<std::size_t> k) {
  return matmul(train_ui, top_k_neighbors(cosine_rows(transpose(train_ui)), k));
}

SparseMatrix fusion_scores(const SparseMatrix& train_ui, const SparseMatrix& ut,
                           const SparseMatrix& it, double fuse_weight,
                           std::optional<std::size_t> k) {
  if (!(fuse_weight >= 0.0 && fuse_weight <= 1.0))
    throw DomainError(fmt::format("fuse weight {} not in [0, 1]", fuse_weight));
  if (ut.rows() != train_ui.rows() || it.rows() != train_ui.cols() || ut.cols() != it.cols())
    throw DimensionError(fmt::format("fusion: UI {}, UT {}, IT {}", train_ui.shape(),
                                     ut.shape(), it.shape()));
  const SparseMatrix user_sim = top_k_neighbors(cosine_rows(hstack(train_ui, ut)), k);
  const SparseMatrix item_sim =
      top_k_neighbors(cosine_rows(hstack(transpose(train_ui), it)), k);
  return linear_combination(fuse_weight, matmul(user_sim, train_ui), 1.0 - fuse_weight,
                            matmul(train_ui, item_sim));
}

SimilarityPair prw_similarities(const TaggingDataset& view, const AlgorithmSpec& spec) {
  if (!is_walk(spec.kind))
    throw InvalidInputError(
        fmt::format("{} is not a random-walk algorithm", display_name(spec.kind)));
  const AlgorithmSpec eff = effective_spec(spec);
  validate(eff);
  // Only build the similarity a walk actually uses.
  SimilarityPair sims;
  sims.s_item = eff.walk.mu > 0.0 ? item_similarity(view, eff.similarity.alpha)
                                  : SparseMatrix(view.num_items(), view.num_items());
  sims.s_user = eff.walk.mu < 1.0 ? user_similarity(view, eff.similarity.beta)
                                  : SparseMatrix(view.num_users(), view.num_users());
  return sims;
}

WalkResult prw_walk(const TaggingDataset& view, const AlgorithmSpec& spec) {
  const AlgorithmSpec eff = effective_spec(spec);
  return run_walks(view.ui, prw_similarities(view, spec), eff.walk, eff.solver);
}

SparseMatrix prw_scores(const TaggingDataset& view, const AlgorithmSpec& spec) {
  return prw_walk(view, spec).ui_final;
}

RankedLists random_recommender(const Split& split, std::uint64_t seed, std::size_t top_n) {
  const SparseMatrix& train = split.train_ui;
  Engine rng(mix_seed(seed ^ 0x52414e444f4dULL));
  RankedLists lists(train.rows());
  std::vector<std::size_t> candidates;
  std::vector<char> excluded(train.cols());
  for (std::size_t u = 0; u < train.rows(); ++u) {
    std::fill(excluded.begin(), excluded.end(), 0);
    for (std::size_t j : train.row_cols(u)) excluded[j] = 1;
    candidates.clear();
    for (std::size_t j = 0; j < train.cols(); ++j)
      if (!excluded[j]) candidates.push_back(j);
    const std::size_t keep = std::min(top_n, candidates.size());
    partial_shuffle(std::span<std::size_t>(candidates), keep, rng);
    for (std::size_t r = 0; r < keep; ++r) lists[u].push_back({candidates[r], 0.0});
  }
  return lists;
}

RankedLists user_cf(const Split& split, std::optional<std::size_t> k, std::size_t top_n) {
  return recommend_all(user_cf_scores(split.train_ui, k), split.train_ui, top_n);
}

RankedLists item_cf(const Split& split, std::optional<std::size_t> k, std::size_t top_n) {
  return recommend_all(item_cf_scores(split.train_ui, k), split.train_ui, top_n);
}

RankedLists fusion_cf(const Split& split, const TaggingDataset& ds, double fuse_weight,
                      std::size_t top_n, std::optional<std::size_t> k) {
  const TaggingDataset view = training_view(ds, split);
  return recommend_all(fusion_scores(view.ui, view.ut, view.it, fuse_weight, k), view.ui, top_n);
}

RankedLists ablation(AlgorithmKind kind, const Split& split, const TaggingDataset& ds,
                     const AlgorithmSpec& config, std::size_t top_n) {
  AlgorithmSpec spec = config;
  spec.kind = kind;
  const TaggingDataset view = training_view(ds, split);
  return recommend_all(prw_scores(view, spec), view.ui, top_n);
}

SparseMatrix algorithm_scores(const AlgorithmSpec& spec, const TaggingDataset& ds,
                              const Split& split) {
  validate(spec);
  switch (spec.kind) {
    case AlgorithmKind::kRandom:
      throw InvalidInputError("the random baseline has no scores");
    case AlgorithmKind::kUserCF:
      return user_cf_scores(split.train_ui, spec.neighbors);
    case AlgorithmKind::kItemCF:
      return item_cf_scores(split.train_ui, spec.neighbors);
    case AlgorithmKind::kFusion: {
      const TaggingDataset view = training_view(ds, split);
      return fusion_scores(view.ui, view.ut, view.it, spec.fuse_weight, spec.neighbors);
    }
    default:
      return prw_scores(training_view(ds, split), spec);
  }
}

RankedLists run_algorithm(const AlgorithmSpec& spec, const TaggingDataset& ds, const Split& split,
                          std::uint64_t seed, std::size_t top_n) {
  validate(spec);
  if (spec.kind == AlgorithmKind::kRandom) return random_recommender(split, seed, top_n);
  return recommend_all(algorithm_scores(spec, ds, split), split.train_ui, top_n);
}

}  // namespace folkwalk
