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

#include <ostream>

#include "folkwalk/dataset.hpp"
#include "folkwalk/sparse_matrix.hpp"

namespace folkwalk {

struct SimilarityConfig {
  double alpha = 0.5;  // weight of the item→tag→item chain in S_item
  double beta = 0.5;   // weight of the user→tag→user chain in S_user
};

struct SimilarityPair {
  SparseMatrix s_item;  // n×n
  SparseMatrix s_user;  // m×m
};

// Probability of reaching row j from row i through one hop across the
// columns of `a` and back: rownorm(a) · rownorm(aᵀ). Row i sums to 1 when
// row i of `a` is nonempty.
SparseMatrix two_hop(const SparseMatrix& a);

// S_item = α·rownorm(IT)·rownorm(ITᵀ) + (1-α)·rownorm(UIᵀ)·rownorm(UI).
// A chain whose source matrix is entirely empty (e.g. an untagged corpus)
// carries no information, and its weight moves to the other chain.
SparseMatrix item_similarity(const TaggingDataset& ds, double alpha);

// S_user = β·rownorm(UT)·rownorm(UTᵀ) + (1-β)·rownorm(UI)·rownorm(UIᵀ).
SparseMatrix user_similarity(const TaggingDataset& ds, double beta);

SimilarityPair build_similarities(const TaggingDataset& ds, const SimilarityConfig& config);

// "row col value" per line, zero-based, values at 17 significant digits.
void write_coordinate(const SparseMatrix& m, std::ostream& out);

}  // namespace folkwalk
