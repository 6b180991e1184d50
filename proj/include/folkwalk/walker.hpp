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
#include <ostream>
#include <vector>

#include "folkwalk/dense_matrix.hpp"
#include "folkwalk/similarity.hpp"
#include "folkwalk/sparse_matrix.hpp"

namespace folkwalk {

struct WalkConfig {
  double eta = 0.8;     // item-walk damping, [0, 1)
  double lambda = 0.8;  // user-walk damping, [0, 1)
  double mu = 0.5;      // weight of the item-centric scores in the fusion
  double tol = 1e-6;    // max-abs entry change that ends the iteration
  std::size_t max_iters = 100;
};

// Throws DomainError on out-of-range parameters.
void validate(const WalkConfig& config);

enum class Solver { kIterative, kClosedForm };

struct WalkOutcome {
  DenseMatrix scores;  // m×n
  std::size_t iterations = 0;
  bool converged = true;
  // Max-abs change after each iteration.
  std::vector<double> trace;
};

// X(0) = ui_norm; X(t+1) = η·X(t)·S_item + (1-η)·ui_norm, until the max-abs
// change drops below tol or max_iters updates have run.
WalkOutcome walk_item(const SparseMatrix& ui_norm, const SparseMatrix& s_item, double eta,
                      double tol, std::size_t max_iters);

// X(t+1) = λ·S_user·X(t) + (1-λ)·ui_norm.
WalkOutcome walk_user(const SparseMatrix& ui_norm, const SparseMatrix& s_user, double lambda,
                      double tol, std::size_t max_iters);

// Limit of walk_item: (1-η)·ui_norm·(I - η·S_item)⁻¹, by LU solve.
DenseMatrix closed_form_item(const SparseMatrix& ui_norm, const SparseMatrix& s_item, double eta);

// Limit of walk_user: (1-λ)·(I - λ·S_user)⁻¹·ui_norm.
DenseMatrix closed_form_user(const SparseMatrix& ui_norm, const SparseMatrix& s_user,
                             double lambda);

// μ·ui_item + (1-μ)·ui_user.
SparseMatrix fuse(const SparseMatrix& ui_item, const SparseMatrix& ui_user, double mu);

struct WalkResult {
  SparseMatrix ui_item;
  SparseMatrix ui_user;
  SparseMatrix ui_final;
  std::size_t iters_item = 0;
  std::size_t iters_user = 0;
  bool converged = true;
  std::vector<double> trace_item;
  std::vector<double> trace_user;
};

// Runs both walks from rownorm(train_ui) and fuses them. A walk whose fusion
// weight is zero is skipped and contributes an all-zero matrix.
WalkResult run_walks(const SparseMatrix& train_ui, const SimilarityPair& sims,
                     const WalkConfig& config, Solver solver = Solver::kIterative);

// "iteration,max_abs_change" header plus one row per iteration.
void write_trace_csv(const std::vector<double>& trace, std::ostream& out);

}  // namespace folkwalk
