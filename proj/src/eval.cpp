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
#include "folkwalk/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <limits>
#include <string>
#include <thread>
#include <unordered_set>

#include <boost/math/distributions/students_t.hpp>
#include <fmt/core.h>

#include "folkwalk/error.hpp"

namespace folkwalk {

namespace {

std::size_t hits_in(const RankedList& list, std::size_t top_n,
                    const std::vector<std::size_t>& test) {
  std::size_t hits = 0;
  const std::size_t len = std::min(top_n, list.size());
  for (std::size_t r = 0; r < len; ++r)
    if (std::binary_search(test.begin(), test.end(), list[r].item)) ++hits;
  return hits;
}

void check_lengths(const RankedLists& recs, const TestSets& test_sets) {
  if (recs.size() != test_sets.size())
    throw DimensionError(fmt::format("{} ranked lists for {} test sets", recs.size(),
                                     test_sets.size()));
}

TestSets sorted_copy(const TestSets& sets) {
  TestSets out = sets;
  for (auto& s : out) std::sort(s.begin(), s.end());
  return out;
}

// Calls body(i) for i in [0, count) on up to `threads` workers.
template <typename Body>
void parallel_for(std::size_t count, std::size_t threads, Body body) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        if (failed) return;
        try {
          body(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
          return;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

Metrics mean_of(const std::vector<RunMetrics>& runs) {
  Metrics m;
  for (const auto& r : runs) {
    m.precision += r.metrics.precision;
    m.recall += r.metrics.recall;
    m.f_measure += r.metrics.f_measure;
    m.rankscore += r.metrics.rankscore;
  }
  const auto n = static_cast<double>(runs.size());
  m.precision /= n;
  m.recall /= n;
  m.f_measure /= n;
  m.rankscore /= n;
  return m;
}

}  // namespace

PrecisionRecall precision_recall(const RankedLists& recs, const TestSets& test_sets,
                                 std::size_t top_n) {
  check_lengths(recs, test_sets);
  const TestSets tests = sorted_copy(test_sets);
  double p_sum = 0.0;
  double r_sum = 0.0;
  std::size_t counted = 0;
  for (std::size_t u = 0; u < recs.size(); ++u) {
    if (tests[u].empty()) continue;
    ++counted;
    const std::size_t len = std::min(top_n, recs[u].size());
    const auto hits = static_cast<double>(hits_in(recs[u], top_n, tests[u]));
    if (len > 0) p_sum += hits / static_cast<double>(len);
    r_sum += hits / static_cast<double>(tests[u].size());
  }
  if (counted == 0) throw InvalidInputError("no user has a nonempty test set");
  const auto n = static_cast<double>(counted);
  return {100.0 * p_sum / n, 100.0 * r_sum / n};
}

double f_measure(double precision, double recall) {
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

double rankscore(const RankedLists& recs, const TestSets& test_sets, std::size_t half_life) {
  check_lengths(recs, test_sets);
  if (half_life < 2) throw DomainError("rankscore: half-life must be at least 2");
  const TestSets tests = sorted_copy(test_sets);
  const double decay = 1.0 / static_cast<double>(half_life - 1);
  double utility = 0.0;
  double best = 0.0;
  for (std::size_t u = 0; u < recs.size(); ++u) {
    if (tests[u].empty()) continue;
    const auto& list = recs[u];
    for (std::size_t r = 0; r < list.size(); ++r)
      if (std::binary_search(tests[u].begin(), tests[u].end(), list[r].item))
        utility += std::exp2(-static_cast<double>(r) * decay);
    const std::size_t reachable = std::min(tests[u].size(), list.size());
    for (std::size_t r = 0; r < reachable; ++r) best += std::exp2(-static_cast<double>(r) * decay);
  }
  return best > 0.0 ? 100.0 * utility / best : 0.0;
}

Metrics evaluate(const RankedLists& recs, const Split& split, const EvalOptions& options) {
  check_lengths(recs, split.test_sets);
  RankedLists cut = recs;
  for (std::size_t u = 0; u < cut.size(); ++u) {
    if (cut[u].size() > options.top_n) cut[u].resize(options.top_n);
    for (const auto& s : cut[u])
      if (split.train_ui.at(u, s.item) != 0.0)
        throw InvalidInputError(
            fmt::format("user {} was recommended training item {}", u, s.item));
  }
  const PrecisionRecall pr = precision_recall(cut, split.test_sets, options.top_n);
  Metrics m;
  m.precision = pr.precision;
  m.recall = pr.recall;
  m.rankscore = rankscore(cut, split.test_sets, options.half_life);
  if (options.f_mode == FMeasureMode::kFromMeans) {
    m.f_measure = f_measure(pr.precision, pr.recall);
  } else {
    double sum = 0.0;
    std::size_t counted = 0;
    for (std::size_t u = 0; u < cut.size(); ++u) {
      if (split.test_sets[u].empty()) continue;
      const PrecisionRecall one = precision_recall({cut[u]}, {split.test_sets[u]}, options.top_n);
      sum += f_measure(one.precision, one.recall);
      ++counted;
    }
    m.f_measure = sum / static_cast<double>(counted);
  }
  return m;
}

std::vector<double> EvalReport::series(std::string_view metric) const {
  const auto objective = parse_objective(metric);
  if (!objective) throw InvalidInputError(fmt::format("unknown metric '{}'", metric));
  std::vector<double> out;
  out.reserve(runs.size());
  for (const auto& r : runs) out.push_back(metric_value(r.metrics, *objective));
  return out;
}

std::vector<EvalReport> run_experiments(const TaggingDataset& ds,
                                        const std::vector<AlgorithmSpec>& algorithms,
                                        const ExperimentConfig& config) {
  if (config.n_runs == 0) throw DomainError("n_runs must be at least 1");
  if (config.top_n == 0) throw DomainError("top_n must be at least 1");
  for (const auto& a : algorithms) validate(a);

  std::vector<std::vector<RunMetrics>> per_run(config.n_runs);
  const EvalOptions options{config.top_n, config.half_life, config.f_mode};
  parallel_for(config.n_runs, config.threads, [&](std::size_t r) {
    const std::uint64_t seed = config.base_seed + r;
    const Split s = split(ds, config.train_fraction, seed);
    auto& out = per_run[r];
    for (const auto& a : algorithms)
      out.push_back({seed, evaluate(run_algorithm(a, ds, s, seed, config.top_n), s, options)});
  });

  std::vector<EvalReport> reports;
  for (std::size_t a = 0; a < algorithms.size(); ++a) {
    EvalReport rep;
    rep.algorithm = algorithms[a];
    rep.top_n = config.top_n;
    rep.half_life = config.half_life;
    rep.train_fraction = config.train_fraction;
    for (std::size_t r = 0; r < config.n_runs; ++r) {
      rep.runs.push_back(per_run[r][a]);
      rep.seeds.push_back(per_run[r][a].seed);
    }
    rep.means = mean_of(rep.runs);
    reports.push_back(std::move(rep));
  }
  return reports;
}

EvalReport run_experiment(const TaggingDataset& ds, const AlgorithmSpec& algorithm,
                          const ExperimentConfig& config) {
  return std::move(run_experiments(ds, {algorithm}, config).front());
}

SweepTable density_sweep(const TaggingDataset& ds, const std::vector<AlgorithmSpec>& algorithms,
                         const std::vector<double>& fractions, const ExperimentConfig& config) {
  for (double f : fractions)
    if (!(f > 0.0 && f < 1.0))
      throw DomainError(fmt::format("sweep fraction {} not in (0, 1)", f));
  SweepTable table;
  table.fractions = fractions;
  table.cells.resize(algorithms.size());
  for (double f : fractions) {
    ExperimentConfig cfg = config;
    cfg.train_fraction = f;
    auto reports = run_experiments(ds, algorithms, cfg);
    for (std::size_t a = 0; a < algorithms.size(); ++a)
      table.cells[a].push_back(std::move(reports[a]));
  }
  return table;
}

TTestResult paired_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw InvalidInputError(
        fmt::format("paired t-test: {} vs {} observations", a.size(), b.size()));
  if (a.size() < 2) throw InvalidInputError("paired t-test needs at least two pairs");
  const std::size_t n = a.size();
  std::vector<double> d(n);
  for (std::size_t k = 0; k < n; ++k) d[k] = a[k] - b[k];
  double mean = 0.0;
  for (double x : d) mean += x;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double x : d) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));

  TTestResult res;
  res.df = n - 1;
  if (std::all_of(d.begin(), d.end(), [](double x) { return x == 0.0; })) return res;
  if (sd == 0.0) {
    res.t = std::copysign(std::numeric_limits<double>::infinity(), mean);
    res.p_value = 0.0;
    return res;
  }
  res.t = mean / (sd / std::sqrt(static_cast<double>(n)));
  const boost::math::students_t dist(static_cast<double>(res.df));
  res.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(res.t)));
  return res;
}

std::optional<Objective> parse_objective(std::string_view raw) {
  std::string name(raw);
  for (char& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (name == "precision") return Objective::kPrecision;
  if (name == "recall") return Objective::kRecall;
  if (name == "f_measure" || name == "f-measure" || name == "f") return Objective::kFMeasure;
  if (name == "rankscore") return Objective::kRankscore;
  return std::nullopt;
}

std::string_view objective_name(Objective objective) {
  switch (objective) {
    case Objective::kPrecision: return "precision";
    case Objective::kRecall: return "recall";
    case Objective::kFMeasure: return "f_measure";
    case Objective::kRankscore: return "rankscore";
  }
  return "?";
}

double metric_value(const Metrics& m, Objective objective) {
  switch (objective) {
    case Objective::kPrecision: return m.precision;
    case Objective::kRecall: return m.recall;
    case Objective::kFMeasure: return m.f_measure;
    case Objective::kRankscore: return m.rankscore;
  }
  return 0.0;
}

GridResult grid_search(const TaggingDataset& ds, const ParamGrid& grid, Objective objective,
                       const AlgorithmSpec& base, const ExperimentConfig& validation) {
  auto axis = [](const std::vector<double>& values, double fallback) {
    return values.empty() ? std::vector<double>{fallback} : values;
  };
  const auto alphas = axis(grid.alpha, base.similarity.alpha);
  const auto betas = axis(grid.beta, base.similarity.beta);
  const auto etas = axis(grid.eta, base.walk.eta);
  const auto lambdas = axis(grid.lambda, base.walk.lambda);
  const auto mus = axis(grid.mu, base.walk.mu);

  GridResult result;
  result.objective = objective;
  for (double alpha : alphas)
    for (double beta : betas)
      for (double eta : etas)
        for (double lambda : lambdas)
          for (double mu : mus) {
            AlgorithmSpec spec = base;
            spec.similarity = {alpha, beta};
            spec.walk.eta = eta;
            spec.walk.lambda = lambda;
            spec.walk.mu = mu;
            validate(spec);
            result.cells.push_back({spec, {}});
          }
  for (auto& cell : result.cells) cell.means = run_experiment(ds, cell.spec, validation).means;
  for (std::size_t c = 1; c < result.cells.size(); ++c)
    if (metric_value(result.cells[c].means, objective) >
        metric_value(result.cells[result.best].means, objective))
      result.best = c;
  return result;
}

}  // namespace folkwalk
