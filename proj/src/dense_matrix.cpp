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
#include "folkwalk/dense_matrix.hpp"

#include <cmath>
#include <utility>

#include <fmt/core.h>

#include "folkwalk/error.hpp"

namespace folkwalk {

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged initializer for DenseMatrix");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix id(n, n);
  for (std::size_t i = 0; i < n; ++i) id(i, i) = 1.0;
  return id;
}

std::string DenseMatrix::shape() const { return fmt::format("{}x{}", rows_, cols_); }

DenseMatrix transpose(const DenseMatrix& m) {
  DenseMatrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows())
    throw DimensionError(fmt::format("matmul: {} times {}", a.shape(), b.shape()));
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      const auto brow = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) out[j] += aik * brow[j];
    }
  }
  return c;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError(fmt::format("max_abs_diff: {} vs {}", a.shape(), b.shape()));
  double worst = 0.0;
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t k = 0; k < da.size(); ++k) worst = std::max(worst, std::abs(da[k] - db[k]));
  return worst;
}

namespace {

// In-place LU with row pivoting; lu holds L (unit diagonal, below) and U.
struct LuFactors {
  DenseMatrix lu;
  std::vector<std::size_t> perm;
};

LuFactors factorize(const DenseMatrix& a) {
  if (a.rows() != a.cols())
    throw DimensionError(fmt::format("solve: coefficient matrix {} is not square", a.shape()));
  const std::size_t n = a.rows();
  LuFactors f{a, std::vector<std::size_t>(n)};
  for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;
  auto& lu = f.lu;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > std::abs(lu(pivot, k))) pivot = i;
    if (std::abs(lu(pivot, k)) < kSingularPivot)
      throw SingularMatrixError(
          fmt::format("singular system: pivot {:.3e} at column {}", lu(pivot, k), k));
    if (pivot != k) {
      std::swap_ranges(lu.row(k).begin(), lu.row(k).end(), lu.row(pivot).begin());
      std::swap(f.perm[k], f.perm[pivot]);
    }
    const double diag = lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double factor = lu(i, k) / diag;
      lu(i, k) = factor;
      if (factor == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= factor * lu(k, j);
    }
  }
  return f;
}

}  // namespace

DenseMatrix solve_left(const DenseMatrix& a, const DenseMatrix& b) {
  if (b.rows() != a.rows())
    throw DimensionError(fmt::format("solve_left: A is {}, B is {}", a.shape(), b.shape()));
  const LuFactors f = factorize(a);
  const std::size_t n = a.rows();
  const std::size_t rhs = b.cols();
  DenseMatrix x(n, rhs);
  for (std::size_t i = 0; i < n; ++i) {
    const auto src = b.row(f.perm[i]);
    std::copy(src.begin(), src.end(), x.row(i).begin());
  }
  // Forward substitution with unit-lower L.
  for (std::size_t i = 0; i < n; ++i) {
    auto xi = x.row(i);
    for (std::size_t k = 0; k < i; ++k) {
      const double l = f.lu(i, k);
      if (l == 0.0) continue;
      const auto xk = x.row(k);
      for (std::size_t j = 0; j < rhs; ++j) xi[j] -= l * xk[j];
    }
  }
  // Back substitution with U.
  for (std::size_t ii = n; ii-- > 0;) {
    auto xi = x.row(ii);
    for (std::size_t k = ii + 1; k < n; ++k) {
      const double u = f.lu(ii, k);
      if (u == 0.0) continue;
      const auto xk = x.row(k);
      for (std::size_t j = 0; j < rhs; ++j) xi[j] -= u * xk[j];
    }
    const double diag = f.lu(ii, ii);
    for (std::size_t j = 0; j < rhs; ++j) xi[j] /= diag;
  }
  return x;
}

DenseMatrix solve_right(const DenseMatrix& a, const DenseMatrix& b) {
  if (b.cols() != a.rows())
    throw DimensionError(fmt::format("solve_right: A is {}, B is {}", a.shape(), b.shape()));
  return transpose(solve_left(transpose(a), transpose(b)));
}

}  // namespace folkwalk
