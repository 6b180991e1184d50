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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "folkwalk/dense_matrix.hpp"
#include "folkwalk/error.hpp"
#include "folkwalk/sparse_matrix.hpp"
#include "oracles.hpp"

using namespace folkwalk;

namespace {

SparseMatrix sparse(std::initializer_list<std::initializer_list<double>> rows) {
  return SparseMatrix::from_dense(DenseMatrix(rows));
}

}  // namespace

TEST_CASE("from_entries enforces the storage invariants") {
  using E = SparseMatrix::Entry;
  CHECK_THROWS_AS(SparseMatrix::from_entries(2, 2, {E{0, 0, 1.0}, E{0, 0, 2.0}}),
                  InvalidInputError);
  CHECK_THROWS_AS(SparseMatrix::from_entries(2, 2, {E{2, 0, 1.0}}), DimensionError);
  CHECK_THROWS_AS(SparseMatrix::from_entries(2, 2, {E{0, 1, std::nan("")}}), DomainError);
  CHECK_THROWS_AS(
      SparseMatrix::from_entries(2, 2, {E{0, 1, std::numeric_limits<double>::infinity()}}),
      DomainError);

  const auto summed = SparseMatrix::from_entries(2, 3, {E{1, 2, 1.5}, E{0, 1, 1.0}, E{1, 2, 2.0}},
                                                 SparseMatrix::Duplicates::kSum);
  CHECK(summed.nnz() == 2);
  CHECK(summed.at(1, 2) == 3.5);
  CHECK(summed.at(0, 1) == 1.0);
  CHECK(summed.at(0, 0) == 0.0);
}

TEST_CASE("row_normalize") {
  SUBCASE("hand examples") {
    CHECK(row_normalize(sparse({{1, 1}, {0, 2}})).to_dense() == DenseMatrix({{0.5, 0.5}, {0, 1}}));
    CHECK(row_normalize(sparse({{0, 0}, {3, 1}})).to_dense() ==
          DenseMatrix({{0, 0}, {0.75, 0.25}}));
  }
  SUBCASE("random 20x15 against per-row division") {
    std::mt19937_64 rng(11);
    const auto g = oracle::random_grid(rng, 20, 15, 0.3);
    const auto got = row_normalize(oracle::to_sparse(g));
    CHECK(oracle::max_abs_diff(oracle::to_grid(got), oracle::divide_rows(g)) < 1e-15);
    for (std::size_t i = 0; i < got.rows(); ++i)
      if (got.row_cols(i).size() > 0) CHECK(std::abs(got.row_sum(i) - 1.0) < 1e-12);
  }
  SUBCASE("pattern and zero rows are kept, normalization is idempotent") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
      const auto m = oracle::to_sparse(oracle::random_grid(rng, 9, 7, 0.25));
      const auto once = row_normalize(m);
      CHECK(once.nnz() == m.nnz());
      for (std::size_t i = 0; i < m.rows(); ++i)
        CHECK(std::equal(once.row_cols(i).begin(), once.row_cols(i).end(),
                         m.row_cols(i).begin(), m.row_cols(i).end()));
      CHECK(max_abs_diff(row_normalize(once), once) <= 1e-12);
    }
  }
  SUBCASE("negative entry names its coordinate") {
    try {
      row_normalize(sparse({{1, 0}, {0, -2}}));
      FAIL("expected DomainError");
    } catch (const DomainError& e) {
      CHECK(std::string(e.what()).find("(1, 1)") != std::string::npos);
    }
  }
}

TEST_CASE("matmul") {
  SUBCASE("identity law") {
    const auto m = sparse({{1, 0, 2}, {0, 3, 0}, {4, 0, 5}});
    CHECK(matmul(SparseMatrix::identity(3), m) == m);
  }
  SUBCASE("2x2 by 2x1") {
    CHECK(matmul(sparse({{1, 2}, {0, 1}}), sparse({{1}, {1}})).to_dense() == DenseMatrix({{3}, {1}}));
  }
  SUBCASE("random 10x12 by 12x8 against triple loop") {
    std::mt19937_64 rng(21);
    const auto a = oracle::random_grid(rng, 10, 12, 0.4);
    const auto b = oracle::random_grid(rng, 12, 8, 0.4);
    const auto c = matmul(oracle::to_sparse(a), oracle::to_sparse(b));
    CHECK(oracle::max_abs_diff(oracle::to_grid(c), oracle::multiply(a, b)) < 1e-12);
  }
  SUBCASE("dimension mismatch names both shapes") {
    try {
      matmul(SparseMatrix(2, 3), SparseMatrix(4, 2));
      FAIL("expected DimensionError");
    } catch (const DimensionError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("2x3") != std::string::npos);
      CHECK(msg.find("4x2") != std::string::npos);
    }
  }
  SUBCASE("drop tolerance prunes only when positive") {
    const auto a = sparse({{1e-9, 1.0}});
    const auto b = sparse({{1.0}, {0.0}});
    const auto b2 = SparseMatrix::from_entries(2, 1, {{0, 0, 1.0}, {1, 0, 1e-9}});
    CHECK(matmul(a, b).nnz() == 1);
    CHECK(matmul(a, b2).at(0, 0) == doctest::Approx(2e-9).epsilon(1e-12));
    CHECK(matmul(a, b, 1e-6).nnz() == 0);
  }
  SUBCASE("associativity on random non-negative triples") {
    std::mt19937_64 rng(22);
    for (int t = 0; t < 25; ++t) {
      const std::size_t p = 2 + rng() % 10, q = 2 + rng() % 10, r = 2 + rng() % 10,
                        s = 2 + rng() % 10;
      const auto a = oracle::to_sparse(oracle::random_grid(rng, p, q, 0.4));
      const auto b = oracle::to_sparse(oracle::random_grid(rng, q, r, 0.4));
      const auto c = oracle::to_sparse(oracle::random_grid(rng, r, s, 0.4));
      CHECK(max_abs_diff(matmul(matmul(a, b), c), matmul(a, matmul(b, c))) < 1e-10);
    }
  }
  SUBCASE("product of row-stochastic matrices is row-stochastic") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 25; ++t) {
      auto ga = oracle::random_grid(rng, 8, 9, 0.35);
      auto gb = oracle::random_grid(rng, 9, 7, 0.35);
      for (std::size_t i = 0; i < ga.size(); ++i) ga[i][i % 9] += 1.0;
      for (std::size_t i = 0; i < gb.size(); ++i) gb[i][i % 7] += 1.0;
      const auto c = matmul(row_normalize(oracle::to_sparse(ga)), row_normalize(oracle::to_sparse(gb)));
      for (std::size_t i = 0; i < c.rows(); ++i) CHECK(std::abs(c.row_sum(i) - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("transpose") {
  CHECK(transpose(sparse({{1, 2}, {3, 4}})).to_dense() == DenseMatrix({{1, 3}, {2, 4}}));
  std::mt19937_64 rng(31);
  const auto g = oracle::random_grid(rng, 30, 7, 0.3);
  const auto m = oracle::to_sparse(g);
  CHECK(oracle::to_grid(transpose(m)) == oracle::transpose(g));
  for (int t = 0; t < 20; ++t) {
    const auto r = oracle::to_sparse(oracle::random_grid(rng, 1 + rng() % 12, 1 + rng() % 12, 0.3));
    CHECK(transpose(transpose(r)) == r);
  }
}

TEST_CASE("dense solves") {
  SUBCASE("identity coefficient returns B") {
    const DenseMatrix b{{1, -2, 3}, {4, 5, 6}};
    CHECK(solve_left(DenseMatrix::identity(2), b) == b);
    CHECK(solve_right(DenseMatrix::identity(3), b) == b);
  }
  SUBCASE("diagonal right solve") {
    CHECK(solve_right(DenseMatrix{{2, 0}, {0, 4}}, DenseMatrix{{2, 4}}) == DenseMatrix{{1, 1}});
  }
  SUBCASE("random well-conditioned 15x15 residuals") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 10; ++t) {
      DenseMatrix a(15, 15), b(15, 4), c(4, 15);
      for (std::size_t i = 0; i < 15; ++i) {
        for (std::size_t j = 0; j < 15; ++j) a(i, j) = u(rng);
        a(i, i) += 16.0;
        for (std::size_t j = 0; j < 4; ++j) b(i, j) = u(rng), c(j, i) = u(rng);
      }
      CHECK(max_abs_diff(matmul(a, solve_left(a, b)), b) < 1e-9);
      CHECK(max_abs_diff(matmul(solve_right(a, c), a), c) < 1e-9);
    }
  }
  SUBCASE("pivoting handles a zero leading entry") {
    const DenseMatrix a{{0, 1}, {1, 0}};
    CHECK(solve_left(a, DenseMatrix{{3}, {5}}) == DenseMatrix{{5}, {3}});
  }
  SUBCASE("singular systems are reported") {
    CHECK_THROWS_AS(solve_left(DenseMatrix{{1, 2}, {2, 4}}, DenseMatrix{{1}, {1}}),
                    SingularMatrixError);
    CHECK_THROWS_AS(solve_right(DenseMatrix{{1e-13, 0}, {0, 1}}, DenseMatrix{{1, 1}}),
                    SingularMatrixError);
    CHECK_THROWS_AS(solve_left(DenseMatrix(2, 3), DenseMatrix(2, 1)), DimensionError);
  }
}

TEST_CASE("dense-sparse products agree with the oracle") {
  std::mt19937_64 rng(51);
  const auto x = oracle::random_grid(rng, 6, 9, 0.5);
  const auto s = oracle::random_grid(rng, 9, 9, 0.3);
  const auto left = oracle::random_grid(rng, 6, 6, 0.3);
  CHECK(oracle::max_abs_diff(oracle::to_grid(multiply(oracle::to_dense(x), oracle::to_sparse(s))),
                             oracle::multiply(x, s)) < 1e-12);
  CHECK(oracle::max_abs_diff(oracle::to_grid(multiply(oracle::to_sparse(left), oracle::to_dense(x))),
                             oracle::multiply(left, x)) < 1e-12);
}
