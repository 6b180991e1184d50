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

#include <algorithm>
#include <random>
#include <sstream>

#include "folkwalk/dataset.hpp"
#include "folkwalk/error.hpp"
#include "folkwalk/ranking.hpp"
#include "folkwalk/similarity.hpp"
#include "folkwalk/walker.hpp"
#include "oracles.hpp"

using namespace folkwalk;
using oracle::Grid;

namespace {

struct Instance {
  SparseMatrix ui;
  SparseMatrix ui_norm;
  SimilarityPair sims;
};

Instance random_instance(std::mt19937_64& rng, std::size_t m, std::size_t n, double alpha,
                         double beta) {
  const auto ds = build_matrices(oracle::random_posts(rng, m, n, 5, 0.25));
  return {ds.ui, row_normalize(ds.ui), build_similarities(ds, {alpha, beta})};
}

// (1-η)·X0·Σ_{k≤terms}(ηS)^k, summed term by term.
Grid neumann_right(const Grid& x0, const Grid& s, double eta, int terms) {
  Grid term = x0, sum = x0;
  for (int k = 1; k <= terms; ++k) {
    term = oracle::multiply(term, s);
    for (auto& row : term)
      for (double& x : row) x *= eta;
    sum = oracle::add(sum, term);
  }
  for (auto& row : sum)
    for (double& x : row) x *= 1 - eta;
  return sum;
}

Grid neumann_left(const Grid& x0, const Grid& s, double lambda, int terms) {
  return oracle::transpose(neumann_right(oracle::transpose(x0), oracle::transpose(s), lambda, terms));
}

}  // namespace

TEST_CASE("degenerate walks") {
  std::mt19937_64 rng(1);
  const auto inst = random_instance(rng, 8, 8, 0.5, 0.5);
  const auto x0 = inst.ui_norm.to_dense();
  SUBCASE("zero damping is pure restart") {
    const auto a = walk_item(inst.ui_norm, inst.sims.s_item, 0.0, 1e-9, 100);
    CHECK(a.scores == x0);
    CHECK(a.iterations == 1);
    CHECK(walk_user(inst.ui_norm, inst.sims.s_user, 0.0, 1e-9, 100).scores == x0);
    CHECK(closed_form_item(inst.ui_norm, inst.sims.s_item, 0.0) == x0);
    CHECK(closed_form_user(inst.ui_norm, inst.sims.s_user, 0.0) == x0);
  }
  SUBCASE("identity similarity is stationary") {
    for (double d : {0.3, 0.5, 0.9}) {
      CHECK(max_abs_diff(walk_item(inst.ui_norm, SparseMatrix::identity(8), d, 1e-9, 100).scores, x0) < 1e-15);
      CHECK(max_abs_diff(walk_user(inst.ui_norm, SparseMatrix::identity(8), d, 1e-9, 100).scores, x0) < 1e-15);
      CHECK(max_abs_diff(closed_form_item(inst.ui_norm, SparseMatrix::identity(8), d), x0) < 1e-12);
      CHECK(max_abs_diff(closed_form_user(inst.ui_norm, SparseMatrix::identity(8), d), x0) < 1e-12);
    }
  }
  SUBCASE("parameter and shape errors") {
    CHECK_THROWS_AS(walk_item(inst.ui_norm, inst.sims.s_item, 1.0, 1e-6, 10), DomainError);
    CHECK_THROWS_AS(walk_user(inst.ui_norm, inst.sims.s_user, -0.1, 1e-6, 10), DomainError);
    CHECK_THROWS_AS(walk_item(inst.ui_norm, SparseMatrix::identity(3), 0.5, 1e-6, 10), DimensionError);
    CHECK_THROWS_AS(closed_form_user(inst.ui_norm, SparseMatrix::identity(3), 0.5), DimensionError);
    CHECK_THROWS_AS(validate(WalkConfig{0.5, 0.5, 0.5, 0.0, 10}), DomainError);
    CHECK_THROWS_AS(validate(WalkConfig{0.5, 0.5, 1.5, 1e-6, 10}), DomainError);
  }
}

TEST_CASE("iterative walks converge to the closed forms") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 10; ++trial) {
    const auto inst = random_instance(rng, 8, 8, 0.3 + 0.05 * trial, 0.7 - 0.05 * trial);
    const auto a = walk_item(inst.ui_norm, inst.sims.s_item, 0.8, 1e-12, 1000);
    CHECK(a.converged);
    CHECK(max_abs_diff(a.scores, closed_form_item(inst.ui_norm, inst.sims.s_item, 0.8)) < 1e-8);
    const auto b = walk_user(inst.ui_norm, inst.sims.s_user, 0.8, 1e-12, 1000);
    CHECK(b.converged);
    CHECK(max_abs_diff(b.scores, closed_form_user(inst.ui_norm, inst.sims.s_user, 0.8)) < 1e-8);
  }
}

TEST_CASE("closed forms equal the truncated Neumann series") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const auto inst = random_instance(rng, 8, 8, 0.5, 0.5);
    const Grid x0 = oracle::to_grid(inst.ui_norm);
    const double eta = 0.6 + 0.03 * trial;
    CHECK(oracle::max_abs_diff(oracle::to_grid(closed_form_item(inst.ui_norm, inst.sims.s_item, eta)),
                               neumann_right(x0, oracle::to_grid(inst.sims.s_item), eta, 200)) < 1e-10);
    CHECK(oracle::max_abs_diff(oracle::to_grid(closed_form_user(inst.ui_norm, inst.sims.s_user, eta)),
                               neumann_left(x0, oracle::to_grid(inst.sims.s_user), eta, 200)) < 1e-10);
  }
}

TEST_CASE("contraction and non-negativity") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const auto inst = random_instance(rng, 5 + rng() % 20, 5 + rng() % 20, 0.5, 0.5);
    for (const auto& out : {walk_item(inst.ui_norm, inst.sims.s_item, 0.5, 1e-14, 5),
                            walk_user(inst.ui_norm, inst.sims.s_user, 0.5, 1e-14, 5)}) {
      REQUIRE(out.trace.size() == 5);
      CHECK(out.trace[4] < std::pow(0.5, 5) * out.trace[0] + 1e-300);
      for (std::size_t k = 1; k < out.trace.size(); ++k) CHECK(out.trace[k] <= 0.5 * out.trace[k - 1] + 1e-15);
      for (std::size_t r = 0; r < out.scores.rows(); ++r)
        for (double x : out.scores.row(r)) CHECK(x >= 0.0);
    }
  }
}

TEST_CASE("iteration cap is reported") {
  std::mt19937_64 rng(12);
  const auto inst = random_instance(rng, 10, 10, 0.5, 0.5);
  const auto out = walk_item(inst.ui_norm, inst.sims.s_item, 0.9, 1e-15, 3);
  CHECK(out.iterations == 3);
  CHECK_FALSE(out.converged);
}

TEST_CASE("fuse") {
  const auto a = SparseMatrix::from_dense(DenseMatrix{{2, 0}});
  const auto b = SparseMatrix::from_dense(DenseMatrix{{0, 2}});
  CHECK(fuse(a, b, 1.0) == a);
  CHECK(fuse(a, b, 0.0) == b);
  CHECK(fuse(a, b, 0.5).to_dense() == DenseMatrix{{1, 1}});
  CHECK_THROWS_AS(fuse(a, SparseMatrix::identity(2), 0.5), DimensionError);
  CHECK_THROWS_AS(fuse(a, b, 1.1), DomainError);
}

TEST_CASE("run_walks") {
  std::mt19937_64 rng(13);
  const auto inst = random_instance(rng, 12, 15, 0.5, 0.5);
  WalkConfig cfg;
  cfg.tol = 1e-12;
  cfg.max_iters = 500;
  SUBCASE("fusion of the two walks") {
    const auto r = run_walks(inst.ui, inst.sims, cfg);
    CHECK(max_abs_diff(r.ui_final, linear_combination(0.5, r.ui_item, 0.5, r.ui_user)) < 1e-12);
    for (const auto& e : r.ui_final.entries()) CHECK(e.value >= 0.0);
    const auto c = run_walks(inst.ui, inst.sims, cfg, Solver::kClosedForm);
    CHECK(max_abs_diff(r.ui_final, c.ui_final) < 1e-8);
  }
  SUBCASE("mu at its ends ranks by one walk alone") {
    cfg.mu = 1.0;
    const auto item_only = run_walks(inst.ui, inst.sims, cfg);
    CHECK(item_only.ui_user.nnz() == 0);
    CHECK(recommend_all(item_only.ui_final, inst.ui, 5) ==
          recommend_all(SparseMatrix::from_dense(walk_item(inst.ui_norm, inst.sims.s_item, cfg.eta, cfg.tol, cfg.max_iters).scores), inst.ui, 5));
    cfg.mu = 0.0;
    const auto user_only = run_walks(inst.ui, inst.sims, cfg);
    CHECK(user_only.ui_item.nnz() == 0);
    CHECK(recommend_all(user_only.ui_final, inst.ui, 5) ==
          recommend_all(SparseMatrix::from_dense(walk_user(inst.ui_norm, inst.sims.s_user, cfg.lambda, cfg.tol, cfg.max_iters).scores), inst.ui, 5));
  }
}

TEST_CASE("recommend") {
  const auto train = SparseMatrix::from_entries(1, 3, {{0, 0, 1.0}});
  SUBCASE("sort and exclusion") {
    const auto s = SparseMatrix::from_dense(DenseMatrix{{0.9, 0.1, 0.5}});
    CHECK(item_ids(recommend(s, train, 0, 2)) == std::vector<std::size_t>{2, 1});
  }
  SUBCASE("ties by index") {
    const auto s = SparseMatrix::from_dense(DenseMatrix{{0.3, 0.3, 0.3}});
    CHECK(item_ids(recommend(s, train, 0, 5)) == std::vector<std::size_t>{1, 2});
    CHECK(item_ids(recommend(SparseMatrix(1, 3), train, 0, 1)) == std::vector<std::size_t>{1});
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(recommend(SparseMatrix(1, 3), train, 1, 2), InvalidInputError);
    CHECK_THROWS_AS(recommend(SparseMatrix(1, 4), train, 0, 2), DimensionError);
  }
  SUBCASE("full-sort oracle") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t m = 6, n = 30;
      Grid scores = oracle::random_grid(rng, m, n, 0.6);
      // Quantize so ties occur.
      for (auto& row : scores)
        for (double& x : row) x = std::round(x * 2) / 2;
      const Grid tr = oracle::random_grid(rng, m, n, 0.2);
      const auto s = oracle::to_sparse(scores), t = oracle::to_sparse(tr);
      for (std::size_t u = 0; u < m; ++u) {
        std::vector<std::pair<double, long>> keyed;
        for (std::size_t j = 0; j < n; ++j)
          if (tr[u][j] == 0) keyed.push_back({scores[u][j], -static_cast<long>(j)});
        std::sort(keyed.rbegin(), keyed.rend());
        const std::size_t top = 1 + trial % 10;
        std::vector<std::size_t> expect;
        for (std::size_t k = 0; k < std::min(top, keyed.size()); ++k) expect.push_back(-keyed[k].second);
        CHECK(item_ids(recommend(s, t, u, top)) == expect);
      }
    }
  }
}

TEST_CASE("trace csv") {
  std::ostringstream out;
  write_trace_csv({0.5, 0.25}, out);
  const std::string text = out.str();
  CHECK(text.rfind("iteration,max_abs_change\n1,", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);
}
