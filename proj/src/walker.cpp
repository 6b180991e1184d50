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
#include "folkwalk/walker.hpp"

#include <cmath>

#include <fmt/core.h>

#include "folkwalk/error.hpp"

namespace folkwalk {

namespace {

void check_damping(const char* name, double d) {
  if (!(d >= 0.0 && d < 1.0)) throw DomainError(fmt::format("{} = {} not in [0, 1)", name, d));
}

void check_loop(double tol, std::size_t max_iters) {
  if (!(tol > 0.0)) throw DomainError(fmt::format("tol = {} must be positive", tol));
  if (max_iters == 0) throw DomainError("max_iters must be at least 1");
}

// Shared fixed-point loop; `step` maps X(t) to η·(transition applied to X(t)).
template <typename Step>
WalkOutcome iterate(const SparseMatrix& ui_norm, double damping, double tol,
                    std::size_t max_iters, Step step) {
  const DenseMatrix restart = ui_norm.to_dense();
  const double keep = 1.0 - damping;
  WalkOutcome out{restart, 0, false, {}};
  while (out.iterations < max_iters) {
    DenseMatrix next = step(out.scores);
    double change = 0.0;
    for (std::size_t i = 0; i < next.rows(); ++i) {
      auto nrow = next.row(i);
      const auto rrow = restart.row(i);
      const auto prow = out.scores.row(i);
      for (std::size_t j = 0; j < nrow.size(); ++j) {
        nrow[j] = damping * nrow[j] + keep * rrow[j];
        change = std::max(change, std::abs(nrow[j] - prow[j]));
      }
    }
    out.scores = std::move(next);
    ++out.iterations;
    out.trace.push_back(change);
    if (change < tol) {
      out.converged = true;
      break;
    }
  }
  return out;
}

DenseMatrix shifted_identity(const SparseMatrix& s, double damping) {
  DenseMatrix a = DenseMatrix::identity(s.rows());
  for (const auto& e : s.entries()) a(e.row, e.col) -= damping * e.value;
  return a;
}

DenseMatrix scaled_dense(const SparseMatrix& m, double factor) {
  DenseMatrix d = m.to_dense();
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (double& v : d.row(i)) v *= factor;
  return d;
}

void check_item_shapes(const SparseMatrix& ui_norm, const SparseMatrix& s_item) {
  if (s_item.rows() != s_item.cols() || s_item.rows() != ui_norm.cols())
    throw DimensionError(fmt::format("item walk: UI is {}, S_item is {}", ui_norm.shape(),
                                     s_item.shape()));
}

void check_user_shapes(const SparseMatrix& ui_norm, const SparseMatrix& s_user) {
  if (s_user.rows() != s_user.cols() || s_user.rows() != ui_norm.rows())
    throw DimensionError(fmt::format("user walk: UI is {}, S_user is {}", ui_norm.shape(),
                                     s_user.shape()));
}

}  // namespace

void validate(const WalkConfig& config) {
  check_damping("eta", config.eta);
  check_damping("lambda", config.lambda);
  if (!(config.mu >= 0.0 && config.mu <= 1.0))
    throw DomainError(fmt::format("mu = {} not in [0, 1]", config.mu));
  check_loop(config.tol, config.max_iters);
}

WalkOutcome walk_item(const SparseMatrix& ui_norm, const SparseMatrix& s_item, double eta,
                      double tol, std::size_t max_iters) {
  check_damping("eta", eta);
  check_loop(tol, max_iters);
  check_item_shapes(ui_norm, s_item);
  return iterate(ui_norm, eta, tol, max_iters,
                 [&](const DenseMatrix& x) { return multiply(x, s_item); });
}

WalkOutcome walk_user(const SparseMatrix& ui_norm, const SparseMatrix& s_user, double lambda,
                      double tol, std::size_t max_iters) {
  check_damping("lambda", lambda);
  check_loop(tol, max_iters);
  check_user_shapes(ui_norm, s_user);
  return iterate(ui_norm, lambda, tol, max_iters,
                 [&](const DenseMatrix& x) { return multiply(s_user, x); });
}

DenseMatrix closed_form_item(const SparseMatrix& ui_norm, const SparseMatrix& s_item, double eta) {
  check_damping("eta", eta);
  check_item_shapes(ui_norm, s_item);
  return solve_right(shifted_identity(s_item, eta), scaled_dense(ui_norm, 1.0 - eta));
}

DenseMatrix closed_form_user(const SparseMatrix& ui_norm, const SparseMatrix& s_user,
                             double lambda) {
  check_damping("lambda", lambda);
  check_user_shapes(ui_norm, s_user);
  return solve_left(shifted_identity(s_user, lambda), scaled_dense(ui_norm, 1.0 - lambda));
}

SparseMatrix fuse(const SparseMatrix& ui_item, const SparseMatrix& ui_user, double mu) {
  if (!(mu >= 0.0 && mu <= 1.0)) throw DomainError(fmt::format("mu = {} not in [0, 1]", mu));
  return linear_combination(mu, ui_item, 1.0 - mu, ui_user);
}

WalkResult run_walks(const SparseMatrix& train_ui, const SimilarityPair& sims,
                     const WalkConfig& config, Solver solver) {
  validate(config);
  const SparseMatrix ui_norm = row_normalize(train_ui);
  WalkResult r;
  r.ui_item = SparseMatrix(train_ui.rows(), train_ui.cols());
  r.ui_user = SparseMatrix(train_ui.rows(), train_ui.cols());

  if (config.mu > 0.0) {
    if (solver == Solver::kClosedForm) {
      r.ui_item = SparseMatrix::from_dense(closed_form_item(ui_norm, sims.s_item, config.eta));
    } else {
      auto w = walk_item(ui_norm, sims.s_item, config.eta, config.tol, config.max_iters);
      r.ui_item = SparseMatrix::from_dense(w.scores);
      r.iters_item = w.iterations;
      r.converged = r.converged && w.converged;
      r.trace_item = std::move(w.trace);
    }
  }
  if (config.mu < 1.0) {
    if (solver == Solver::kClosedForm) {
      r.ui_user =
          SparseMatrix::from_dense(closed_form_user(ui_norm, sims.s_user, config.lambda));
    } else {
      auto w = walk_user(ui_norm, sims.s_user, config.lambda, config.tol, config.max_iters);
      r.ui_user = SparseMatrix::from_dense(w.scores);
      r.iters_user = w.iterations;
      r.converged = r.converged && w.converged;
      r.trace_user = std::move(w.trace);
    }
  }
  r.ui_final = fuse(r.ui_item, r.ui_user, config.mu);
  return r;
}

void write_trace_csv(const std::vector<double>& trace, std::ostream& out) {
  out << "iteration,max_abs_change\n";
  for (std::size_t t = 0; t < trace.size(); ++t)
    out << fmt::format("{},{:.17g}\n", t + 1, trace[t]);
}

}  // namespace folkwalk
