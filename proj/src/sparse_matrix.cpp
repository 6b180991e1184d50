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
#include "folkwalk/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

#include "folkwalk/error.hpp"

namespace folkwalk {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), row_ptr_(rows + 1, 0) {}

SparseMatrix SparseMatrix::from_entries(std::size_t rows, std::size_t cols,
                                        std::vector<Entry> entries, Duplicates policy) {
  for (const auto& e : entries) {
    if (e.row >= rows || e.col >= cols)
      throw DimensionError(fmt::format("entry ({}, {}) outside {}x{} matrix", e.row, e.col,
                                       rows, cols));
    if (!std::isfinite(e.value))
      throw DomainError(fmt::format("non-finite value at ({}, {})", e.row, e.col));
  }
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  SparseMatrix m(rows, cols);
  m.col_idx_.reserve(entries.size());
  m.values_.reserve(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& e = entries[k];
    if (k > 0 && entries[k - 1].row == e.row && entries[k - 1].col == e.col) {
      if (policy == Duplicates::kReject)
        throw InvalidInputError(fmt::format("duplicate entry at ({}, {})", e.row, e.col));
      m.values_.back() += e.value;
      continue;
    }
    m.col_idx_.push_back(e.col);
    m.values_.push_back(e.value);
    ++m.row_ptr_[e.row + 1];
  }
  for (std::size_t i = 0; i < rows; ++i) m.row_ptr_[i + 1] += m.row_ptr_[i];
  return m;
}

SparseMatrix SparseMatrix::from_dense(const DenseMatrix& dense) {
  SparseMatrix m(dense.rows(), dense.cols());
  for (std::size_t i = 0; i < dense.rows(); ++i) {
    const auto r = dense.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (r[j] == 0.0) continue;
      if (!std::isfinite(r[j]))
        throw DomainError(fmt::format("non-finite value at ({}, {})", i, j));
      m.col_idx_.push_back(j);
      m.values_.push_back(r[j]);
    }
    m.row_ptr_[i + 1] = m.values_.size();
  }
  return m;
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  SparseMatrix m(n, n);
  m.col_idx_.resize(n);
  m.values_.assign(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    m.col_idx_[i] = i;
    m.row_ptr_[i + 1] = i + 1;
  }
  return m;
}

double SparseMatrix::at(std::size_t i, std::size_t j) const {
  const auto cols = row_cols(i);
  const auto it = std::lower_bound(cols.begin(), cols.end(), j);
  if (it == cols.end() || *it != j) return 0.0;
  return row_values(i)[static_cast<std::size_t>(it - cols.begin())];
}

double SparseMatrix::row_sum(std::size_t i) const {
  double s = 0.0;
  for (double v : row_values(i)) s += v;
  return s;
}

std::vector<SparseMatrix::Entry> SparseMatrix::entries() const {
  std::vector<Entry> out;
  out.reserve(nnz());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      out.push_back({i, col_idx_[k], values_[k]});
  return out;
}

DenseMatrix SparseMatrix::to_dense() const {
  DenseMatrix d(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) d(i, col_idx_[k]) = values_[k];
  return d;
}

std::string SparseMatrix::shape() const { return fmt::format("{}x{}", rows_, cols_); }

SparseMatrix row_normalize(const SparseMatrix& m) {
  std::vector<SparseMatrix::Entry> out;
  out.reserve(m.nnz());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto cols = m.row_cols(i);
    const auto vals = m.row_values(i);
    double sum = 0.0;
    for (std::size_t k = 0; k < vals.size(); ++k) {
      if (vals[k] < 0.0)
        throw DomainError(fmt::format("row_normalize: negative entry {} at ({}, {})", vals[k],
                                      i, cols[k]));
      sum += vals[k];
    }
    for (std::size_t k = 0; k < vals.size(); ++k)
      out.push_back({i, cols[k], sum > 0.0 ? vals[k] / sum : 0.0});
  }
  return SparseMatrix::from_entries(m.rows(), m.cols(), std::move(out));
}

SparseMatrix transpose(const SparseMatrix& m) {
  std::vector<SparseMatrix::Entry> out;
  out.reserve(m.nnz());
  for (const auto& e : m.entries()) out.push_back({e.col, e.row, e.value});
  return SparseMatrix::from_entries(m.cols(), m.rows(), std::move(out));
}

SparseMatrix matmul(const SparseMatrix& a, const SparseMatrix& b, double drop_tol) {
  if (a.cols() != b.rows())
    throw DimensionError(fmt::format("matmul: {} times {}", a.shape(), b.shape()));
  // Row-by-row accumulation into a dense scratch row (Gustavson).
  std::vector<double> acc(b.cols(), 0.0);
  std::vector<char> touched(b.cols(), 0);
  std::vector<std::size_t> pattern;
  std::vector<SparseMatrix::Entry> out;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto acols = a.row_cols(i);
    const auto avals = a.row_values(i);
    for (std::size_t p = 0; p < acols.size(); ++p) {
      const std::size_t k = acols[p];
      const double aik = avals[p];
      const auto bcols = b.row_cols(k);
      const auto bvals = b.row_values(k);
      for (std::size_t q = 0; q < bcols.size(); ++q) {
        const std::size_t j = bcols[q];
        if (!touched[j]) {
          touched[j] = 1;
          pattern.push_back(j);
        }
        acc[j] += aik * bvals[q];
      }
    }
    std::sort(pattern.begin(), pattern.end());
    for (std::size_t j : pattern) {
      if (drop_tol <= 0.0 || std::abs(acc[j]) >= drop_tol) out.push_back({i, j, acc[j]});
      acc[j] = 0.0;
      touched[j] = 0;
    }
    pattern.clear();
  }
  return SparseMatrix::from_entries(a.rows(), b.cols(), std::move(out));
}

SparseMatrix linear_combination(double wa, const SparseMatrix& a, double wb,
                                const SparseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError(
        fmt::format("linear_combination: {} vs {}", a.shape(), b.shape()));
  std::vector<SparseMatrix::Entry> out;
  out.reserve(a.nnz() + b.nnz());
  // A zero-weight operand contributes neither values nor pattern.
  if (wa != 0.0)
    for (const auto& e : a.entries()) out.push_back({e.row, e.col, wa * e.value});
  if (wb != 0.0)
    for (const auto& e : b.entries()) out.push_back({e.row, e.col, wb * e.value});
  return SparseMatrix::from_entries(a.rows(), a.cols(), std::move(out),
                                    SparseMatrix::Duplicates::kSum);
}

SparseMatrix scale(const SparseMatrix& m, double factor) {
  auto entries = m.entries();
  for (auto& e : entries) e.value *= factor;
  return SparseMatrix::from_entries(m.rows(), m.cols(), std::move(entries));
}

SparseMatrix hstack(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows())
    throw DimensionError(fmt::format("hstack: {} beside {}", a.shape(), b.shape()));
  auto entries = a.entries();
  for (const auto& e : b.entries()) entries.push_back({e.row, a.cols() + e.col, e.value});
  return SparseMatrix::from_entries(a.rows(), a.cols() + b.cols(), std::move(entries));
}

double max_abs_diff(const SparseMatrix& a, const SparseMatrix& b) {
  const SparseMatrix d = linear_combination(1.0, a, -1.0, b);
  double worst = 0.0;
  for (const auto& e : d.entries()) worst = std::max(worst, std::abs(e.value));
  return worst;
}

DenseMatrix multiply(const DenseMatrix& x, const SparseMatrix& s) {
  if (x.cols() != s.rows())
    throw DimensionError(fmt::format("multiply: {} times {}", x.shape(), s.shape()));
  DenseMatrix y(x.rows(), s.cols());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const auto xi = x.row(i);
    auto yi = y.row(i);
    for (std::size_t k = 0; k < xi.size(); ++k) {
      if (xi[k] == 0.0) continue;
      const auto cols = s.row_cols(k);
      const auto vals = s.row_values(k);
      for (std::size_t q = 0; q < cols.size(); ++q) yi[cols[q]] += xi[k] * vals[q];
    }
  }
  return y;
}

DenseMatrix multiply(const SparseMatrix& s, const DenseMatrix& x) {
  if (s.cols() != x.rows())
    throw DimensionError(fmt::format("multiply: {} times {}", s.shape(), x.shape()));
  DenseMatrix y(s.rows(), x.cols());
  for (std::size_t i = 0; i < s.rows(); ++i) {
    auto yi = y.row(i);
    const auto cols = s.row_cols(i);
    const auto vals = s.row_values(i);
    for (std::size_t q = 0; q < cols.size(); ++q) {
      const auto xk = x.row(cols[q]);
      for (std::size_t j = 0; j < xk.size(); ++j) yi[j] += vals[q] * xk[j];
    }
  }
  return y;
}

}  // namespace folkwalk
