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
#include "folkwalk/similarity.hpp"

#include <fmt/core.h>

#include "folkwalk/error.hpp"

namespace folkwalk {

namespace {

void check_weight(const char* name, double w) {
  if (!(w >= 0.0 && w <= 1.0)) throw DomainError(fmt::format("{} = {} not in [0, 1]", name, w));
}

SparseMatrix mix(double weight, const SparseMatrix& tag_side, const SparseMatrix& ui_side,
                 std::size_t dim) {
  if (tag_side.nnz() == 0) weight = 0.0;
  if (ui_side.nnz() == 0 && tag_side.nnz() != 0) weight = 1.0;
  if (weight == 1.0) return two_hop(tag_side);
  if (weight == 0.0) {
    if (ui_side.nnz() == 0) return SparseMatrix(dim, dim);
    return two_hop(ui_side);
  }
  return linear_combination(weight, two_hop(tag_side), 1.0 - weight, two_hop(ui_side));
}

}  // namespace

SparseMatrix two_hop(const SparseMatrix& a) {
  return matmul(row_normalize(a), row_normalize(transpose(a)));
}

SparseMatrix item_similarity(const TaggingDataset& ds, double alpha) {
  check_weight("alpha", alpha);
  return mix(alpha, ds.it, transpose(ds.ui), ds.num_items());
}

SparseMatrix user_similarity(const TaggingDataset& ds, double beta) {
  check_weight("beta", beta);
  return mix(beta, ds.ut, ds.ui, ds.num_users());
}

SimilarityPair build_similarities(const TaggingDataset& ds, const SimilarityConfig& config) {
  return {item_similarity(ds, config.alpha), user_similarity(ds, config.beta)};
}

void write_coordinate(const SparseMatrix& m, std::ostream& out) {
  for (const auto& e : m.entries()) out << fmt::format("{} {} {:.17g}\n", e.row, e.col, e.value);
}

}  // namespace folkwalk
