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
#include "folkwalk/report.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

namespace folkwalk {

using nlohmann::json;

namespace {

std::string percent_label(double fraction) { return fmt::format("{:g}%", 100.0 * fraction); }

// Left-aligned first column, right-aligned rest.
std::string render(const std::vector<std::vector<std::string>>& rows) {
  if (rows.empty()) return {};
  std::vector<std::size_t> width(rows.front().size(), 0);
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  std::string out;
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c == 0)
        out += fmt::format("{:<{}}", r[c], width[c]);
      else
        out += fmt::format("  {:>{}}", r[c], width[c]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace

json spec_to_json(const AlgorithmSpec& spec) {
  const AlgorithmSpec eff = effective_spec(spec);
  json params = json::object();
  switch (eff.kind) {
    case AlgorithmKind::kRandom:
      break;
    case AlgorithmKind::kUserCF:
    case AlgorithmKind::kItemCF:
      params["neighbors"] = eff.neighbors ? json(*eff.neighbors) : json("all");
      break;
    case AlgorithmKind::kFusion:
      params["neighbors"] = eff.neighbors ? json(*eff.neighbors) : json("all");
      params["fuse_weight"] = eff.fuse_weight;
      break;
    default:
      params["alpha"] = eff.similarity.alpha;
      params["beta"] = eff.similarity.beta;
      params["eta"] = eff.walk.eta;
      params["lambda"] = eff.walk.lambda;
      params["mu"] = eff.walk.mu;
      params["tol"] = eff.walk.tol;
      params["max_iters"] = eff.walk.max_iters;
      params["solver"] = eff.solver == Solver::kClosedForm ? "closed-form" : "iterative";
      break;
  }
  return {{"name", display_name(spec.kind)}, {"id", cli_name(spec.kind)}, {"params", params}};
}

json metrics_to_json(const Metrics& m) {
  return {{"precision", m.precision},
          {"recall", m.recall},
          {"f_measure", m.f_measure},
          {"rankscore", m.rankscore}};
}

json report_to_json(const EvalReport& report) {
  json runs = json::array();
  for (const auto& r : report.runs) {
    json row = metrics_to_json(r.metrics);
    row["seed"] = r.seed;
    runs.push_back(std::move(row));
  }
  return {{"algorithm", spec_to_json(report.algorithm)},
          {"top_n", report.top_n},
          {"half_life", report.half_life},
          {"train_fraction", report.train_fraction},
          {"seeds", report.seeds},
          {"runs", std::move(runs)},
          {"means", metrics_to_json(report.means)}};
}

json ttest_to_json(const TTestResult& t) {
  // JSON has no infinity; the sign survives as a string.
  json tj = std::isfinite(t.t) ? json(t.t) : json(t.t > 0 ? "+inf" : "-inf");
  return {{"t", tj}, {"p_value", t.p_value}, {"df", t.df}};
}

json sweep_to_json(const SweepTable& table) {
  json cells = json::array();
  for (const auto& row : table.cells) {
    json r = json::array();
    for (const auto& rep : row) r.push_back(report_to_json(rep));
    cells.push_back(std::move(r));
  }
  return {{"fractions", table.fractions}, {"cells", std::move(cells)}};
}

json grid_to_json(const GridResult& grid) {
  json cells = json::array();
  for (const auto& c : grid.cells)
    cells.push_back({{"algorithm", spec_to_json(c.spec)}, {"means", metrics_to_json(c.means)}});
  return {{"objective", objective_name(grid.objective)},
          {"best", grid.best},
          {"best_algorithm", spec_to_json(grid.cells.at(grid.best).spec)},
          {"cells", std::move(cells)}};
}

std::string reports_table(const std::vector<EvalReport>& reports) {
  std::vector<std::vector<std::string>> rows = {
      {"Alg.", "Precision (%)", "Recall (%)", "F-measure (%)", "Rankscore (%)"}};
  for (const auto& r : reports)
    rows.push_back({std::string(display_name(r.algorithm.kind)),
                    fmt::format("{:.2f}", r.means.precision), fmt::format("{:.2f}", r.means.recall),
                    fmt::format("{:.2f}", r.means.f_measure),
                    fmt::format("{:.2f}", r.means.rankscore)});
  return render(rows);
}

std::string reports_csv(const std::vector<EvalReport>& reports) {
  std::string out = "algorithm,run,seed,precision,recall,f_measure,rankscore\n";
  for (const auto& rep : reports)
    for (std::size_t r = 0; r < rep.runs.size(); ++r) {
      const auto& m = rep.runs[r].metrics;
      out += fmt::format("{},{},{},{:.17g},{:.17g},{:.17g},{:.17g}\n", cli_name(rep.algorithm.kind),
                         r, rep.runs[r].seed, m.precision, m.recall, m.f_measure, m.rankscore);
    }
  return out;
}

std::string sweep_table(const SweepTable& table, Objective metric) {
  std::vector<std::string> header = {"Algorithm"};
  for (double f : table.fractions) header.push_back(percent_label(f));
  std::vector<std::vector<std::string>> rows = {header};
  for (const auto& row : table.cells) {
    if (row.empty()) continue;
    std::vector<std::string> line = {std::string(display_name(row.front().algorithm.kind))};
    for (const auto& rep : row) line.push_back(fmt::format("{:.2f}", metric_value(rep.means, metric)));
    rows.push_back(std::move(line));
  }
  return fmt::format("{} of top {} recommendations by training set percentage\n",
                     objective_name(metric),
                     table.cells.empty() || table.cells.front().empty()
                         ? 0
                         : table.cells.front().front().top_n) +
         render(rows);
}

std::string sweep_csv(const SweepTable& table) {
  std::string out = "algorithm,train_fraction,precision,recall,f_measure,rankscore\n";
  for (const auto& row : table.cells)
    for (std::size_t f = 0; f < row.size(); ++f) {
      const auto& m = row[f].means;
      out += fmt::format("{},{:g},{:.17g},{:.17g},{:.17g},{:.17g}\n", cli_name(row[f].algorithm.kind),
                         table.fractions[f], m.precision, m.recall, m.f_measure, m.rankscore);
    }
  return out;
}

std::string grid_table(const GridResult& grid) {
  std::vector<std::vector<std::string>> rows = {
      {"cell", "alpha", "beta", "eta", "lambda", "mu", std::string(objective_name(grid.objective))}};
  for (std::size_t c = 0; c < grid.cells.size(); ++c) {
    const auto& s = grid.cells[c].spec;
    rows.push_back({fmt::format("{}{}", c, c == grid.best ? "*" : ""),
                    fmt::format("{:g}", s.similarity.alpha), fmt::format("{:g}", s.similarity.beta),
                    fmt::format("{:g}", s.walk.eta), fmt::format("{:g}", s.walk.lambda),
                    fmt::format("{:g}", s.walk.mu),
                    fmt::format("{:.2f}", metric_value(grid.cells[c].means, grid.objective))});
  }
  return render(rows);
}

}  // namespace folkwalk
