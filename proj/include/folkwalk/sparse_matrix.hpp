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
#include <span>
#include <string>
#include <vector>

#include "folkwalk/dense_matrix.hpp"

namespace folkwalk {

// Compressed sparse row matrix of finite doubles. Column indices are sorted
// and unique within each row. Immutable after construction.
class SparseMatrix {
 public:
  struct Entry {
    std::size_t row;
    std::size_t col;
    double value;
  };

  enum class Duplicates { kReject, kSum };

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols);

  // Entries may arrive in any order. Duplicate coordinates are an error
  // unless policy is kSum. Out-of-range indices and non-finite values throw.
  static SparseMatrix from_entries(std::size_t rows, std::size_t cols,
                                   std::vector<Entry> entries,
                                   Duplicates policy = Duplicates::kReject);
  // Stores every nonzero of `dense`.
  static SparseMatrix from_dense(const DenseMatrix& dense);
  static SparseMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return values_.size(); }

  std::span<const std::size_t> row_cols(std::size_t i) const {
    return {col_idx_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
  }
  std::span<const double> row_values(std::size_t i) const {
    return {values_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
  }

  // Zero when (i, j) is not stored.
  double at(std::size_t i, std::size_t j) const;
  double row_sum(std::size_t i) const;

  std::vector<Entry> entries() const;
  DenseMatrix to_dense() const;
  std::string shape() const;

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> col_idx_;
  std::vector<double> values_;
};

// Scales each row to unit sum; all-zero rows stay zero and the sparsity
// pattern is kept. Throws DomainError on a negative entry.
SparseMatrix row_normalize(const SparseMatrix& m);

SparseMatrix transpose(const SparseMatrix& m);

// C = A·B. With drop_tol > 0, entries with |value| < drop_tol are pruned;
// the default keeps every structurally produced entry.
SparseMatrix matmul(const SparseMatrix& a, const SparseMatrix& b, double drop_tol = 0.0);

// wa·A + wb·B over the union pattern; a zero-weight operand is skipped.
SparseMatrix linear_combination(double wa, const SparseMatrix& a, double wb,
                                const SparseMatrix& b);
SparseMatrix scale(const SparseMatrix& m, double factor);

// [A | B]; row counts must match.
SparseMatrix hstack(const SparseMatrix& a, const SparseMatrix& b);

// Max |A - B| over the union pattern; shapes must match.
double max_abs_diff(const SparseMatrix& a, const SparseMatrix& b);

// Dense X times sparse S, and sparse S times dense X. These drive the walk
// iterates, which fill in after the first step.
DenseMatrix multiply(const DenseMatrix& x, const SparseMatrix& s);
DenseMatrix multiply(const SparseMatrix& s, const DenseMatrix& x);

}  // namespace folkwalk
