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
#include "folkwalk/ranking.hpp"

#include <algorithm>

#include <fmt/core.h>

#include "folkwalk/error.hpp"

namespace folkwalk {

RankedList recommend(const SparseMatrix& scores, const SparseMatrix& train_ui, std::size_t user,
                     std::size_t top_n) {
  if (scores.rows() != train_ui.rows() || scores.cols() != train_ui.cols())
    throw DimensionError(fmt::format("recommend: scores {} vs training matrix {}",
                                     scores.shape(), train_ui.shape()));
  if (user >= scores.rows())
    throw InvalidInputError(
        fmt::format("recommend: user index {} out of range ({} users)", user, scores.rows()));

  std::vector<double> row(scores.cols(), 0.0);
  const auto cols = scores.row_cols(user);
  const auto vals = scores.row_values(user);
  for (std::size_t k = 0; k < cols.size(); ++k) row[cols[k]] = vals[k];

  std::vector<char> excluded(scores.cols(), 0);
  for (std::size_t j : train_ui.row_cols(user)) excluded[j] = 1;

  RankedList candidates;
  candidates.reserve(scores.cols());
  for (std::size_t j = 0; j < row.size(); ++j)
    if (!excluded[j]) candidates.push_back({j, row[j]});

  const auto better = [](const ScoredItem& a, const ScoredItem& b) {
    return a.score != b.score ? a.score > b.score : a.item < b.item;
  };
  const std::size_t keep = std::min(top_n, candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep),
                    candidates.end(), better);
  candidates.resize(keep);
  return candidates;
}

RankedLists recommend_all(const SparseMatrix& scores, const SparseMatrix& train_ui,
                          std::size_t top_n) {
  RankedLists lists(scores.rows());
  for (std::size_t u = 0; u < scores.rows(); ++u) lists[u] = recommend(scores, train_ui, u, top_n);
  return lists;
}

std::vector<std::size_t> item_ids(const RankedList& list) {
  std::vector<std::size_t> ids;
  ids.reserve(list.size());
  for (const auto& s : list) ids.push_back(s.item);
  return ids;
}

}  // namespace folkwalk
