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
#include <vector>

#include "folkwalk/sparse_matrix.hpp"

namespace folkwalk {

struct ScoredItem {
  std::size_t item;
  double score;

  friend bool operator==(const ScoredItem&, const ScoredItem&) = default;
};

using RankedList = std::vector<ScoredItem>;
// Indexed by user.
using RankedLists = std::vector<RankedList>;

// The user's non-training items by descending score, ties by ascending item
// index, truncated to top_n. Items absent from `scores` score zero.
RankedList recommend(const SparseMatrix& scores, const SparseMatrix& train_ui, std::size_t user,
                     std::size_t top_n);

RankedLists recommend_all(const SparseMatrix& scores, const SparseMatrix& train_ui,
                          std::size_t top_n);

std::vector<std::size_t> item_ids(const RankedList& list);

}  // namespace folkwalk
