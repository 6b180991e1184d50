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
#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <json.hpp>

#include "folkwalk/baselines.hpp"
#include "folkwalk/dataset.hpp"
#include "folkwalk/dataset_io.hpp"
#include "folkwalk/error.hpp"
#include "folkwalk/eval.hpp"
#include "folkwalk/ranking.hpp"
#include "folkwalk/report.hpp"
#include "folkwalk/similarity.hpp"
#include "folkwalk/synthetic.hpp"
#include "folkwalk/walker.hpp"
#include "manifest.hpp"

namespace folkwalk::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

#ifndef FOLKWALK_VERSION
#define FOLKWALK_VERSION "unknown"
#endif
constexpr const char* kVersion = FOLKWALK_VERSION;

// Input that parses but cannot be used (empty after filtering, unknown id).
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct State {
  std::string input;
  std::string dataset_path;
  IngestOptions ingest;
  bool no_filter = false;

  std::vector<std::string> algorithms;
  // Applied after parsing when --algorithm is absent; keyed by subcommand.
  std::map<const CLI::App*, std::vector<std::string>> algorithm_defaults;
  AlgorithmSpec spec;
  std::size_t neighbors = 0;
  std::string solver = "iterative";

  ExperimentConfig experiment;
  std::string f_mode = "means";
  bool t_test = false;
  std::string objective = "precision";
  std::vector<double> fractions = {0.05, 0.10, 0.20};
  ParamGrid grid;

  std::vector<std::string> users;
  bool all_users = false;
  std::string trace_dir;
  std::string similarity_dir;

  PlantedConfig planted;

  std::string format = "table";
  std::string output;
  std::string output_dir;
  std::string snapshot;
  std::string config_path;
};

// ---- validators ------------------------------------------------------------

CLI::Validator numeric_check(std::string description, bool (*ok)(double), std::string message) {
  return CLI::Validator(
      [ok, message](std::string& s) -> std::string {
        try {
          std::size_t used = 0;
          const double v = std::stod(s, &used);
          if (used != s.size()) return "not a number: " + s;
          return ok(v) ? std::string() : message + ", got " + s;
        } catch (const std::exception&) {
          return "not a number: " + s;
        }
      },
      std::move(description));
}

const CLI::Validator kUnit =
    numeric_check("[0,1]", [](double v) { return v >= 0.0 && v <= 1.0; }, "value must be in [0, 1]");
const CLI::Validator kDamping =
    numeric_check("[0,1)", [](double v) { return v >= 0.0 && v < 1.0; }, "value must be in [0, 1)");
const CLI::Validator kOpenUnit =
    numeric_check("(0,1)", [](double v) { return v > 0.0 && v < 1.0; }, "value must be in (0, 1)");
const CLI::Validator kPositiveReal =
    numeric_check("(0,inf)", [](double v) { return v > 0.0; }, "value must be positive");

const CLI::Validator kCount(
    [](std::string& s) -> std::string {
      try {
        std::size_t used = 0;
        const long long v = std::stoll(s, &used);
        if (used != s.size()) return "not an integer: " + s;
        return v >= 1 ? std::string() : "value must be at least 1, got " + s;
      } catch (const std::exception&) {
        return "not an integer: " + s;
      }
    },
    "N>=1");

const CLI::Validator kAlgorithmName(
    [](std::string& s) -> std::string {
      return parse_algorithm(s) ? std::string() : "unknown algorithm '" + s + "'";
    },
    "ALGORITHM");

const CLI::Validator kObjectiveName(
    [](std::string& s) -> std::string {
      return parse_objective(s) ? std::string() : "unknown metric '" + s + "'";
    },
    "METRIC");

// ---- option groups ---------------------------------------------------------

void add_common(CLI::App* sub, State& st, bool with_format = true) {
  sub->add_option("--config", st.config_path, "Flat key=value file; flags on the command line win")
      ->check(CLI::ExistingFile);
  if (with_format)
    sub->add_option("--format", st.format, "Standard-output format")
        ->check(CLI::IsMember({"json", "table", "csv"}))
        ->capture_default_str();
}

void add_filter(CLI::App* sub, State& st) {
  sub->add_option("--min-items-per-user", st.ingest.min_items_per_user, "Drop users with fewer saves")
      ->check(kCount)
      ->capture_default_str();
  sub->add_option("--min-users-per-item", st.ingest.min_users_per_item, "Drop items with fewer savers")
      ->check(kCount)
      ->capture_default_str();
  sub->add_option("--unqualified-threshold", st.ingest.unqualified_item_threshold,
                  "Stop filtering once fewer items than this are below threshold")
      ->check(kCount)
      ->capture_default_str();
  sub->add_option("--select-tags", st.ingest.select_tags,
                  "Keep the N most frequent tags (0 keeps all)")
      ->capture_default_str();
  sub->add_flag("--no-filter", st.no_filter, "Skip density filtering");
}

// Exactly one of --input (TSV, ingested on the fly) or --dataset (snapshot).
void add_data(CLI::App* sub, State& st) {
  auto* group = sub->add_option_group("input");
  group->add_option("--input", st.input, "Tab-separated user/item/tag triples")
      ->check(CLI::ExistingFile);
  group->add_option("--dataset", st.dataset_path, "Dataset snapshot written by 'ingest'")
      ->check(CLI::ExistingFile);
  group->require_option(1);
  add_filter(sub, st);
}

void add_algorithm(CLI::App* sub, State& st, bool many, std::vector<std::string> defaults) {
  std::string shown;
  for (const auto& d : defaults) shown += (shown.empty() ? "" : ",") + d;
  st.algorithm_defaults[sub] = std::move(defaults);
  auto* opt = sub->add_option("--algorithm", st.algorithms,
                              many ? "Comma-separated algorithms" : "Algorithm")
                  ->check(kAlgorithmName)
                  ->default_str(shown);
  if (many)
    opt->delimiter(',');
  else
    opt->expected(1);
  sub->add_option("--alpha", st.spec.similarity.alpha, "Tag weight in item similarity")
      ->check(kUnit)
      ->capture_default_str();
  sub->add_option("--beta", st.spec.similarity.beta, "Tag weight in user similarity")
      ->check(kUnit)
      ->capture_default_str();
  sub->add_option("--eta", st.spec.walk.eta, "Item-walk damping")->check(kDamping)->capture_default_str();
  sub->add_option("--lambda", st.spec.walk.lambda, "User-walk damping")
      ->check(kDamping)
      ->capture_default_str();
  sub->add_option("--mu", st.spec.walk.mu, "Weight of the item walk in the fusion")
      ->check(kUnit)
      ->capture_default_str();
  sub->add_option("--tol", st.spec.walk.tol, "Convergence tolerance (max-abs change)")
      ->check(kPositiveReal)
      ->capture_default_str();
  sub->add_option("--max-iters", st.spec.walk.max_iters, "Iteration cap per walk")
      ->check(kCount)
      ->capture_default_str();
  sub->add_option("--solver", st.solver, "Walk solver")
      ->check(CLI::IsMember({"iterative", "closed-form"}))
      ->capture_default_str();
  sub->add_option("--neighbors", st.neighbors, "CF neighbourhood size (0 = all)")->capture_default_str();
  sub->add_option("--fuse-weight", st.spec.fuse_weight, "Fusion CF weight of the user-based part")
      ->check(kUnit)
      ->capture_default_str();
}

void add_experiment(CLI::App* sub, State& st) {
  sub->add_option("--train-fraction", st.experiment.train_fraction, "Per-user training share")
      ->check(kOpenUnit)
      ->capture_default_str();
  sub->add_option("--top-n", st.experiment.top_n, "List length")
      ->check(kCount)
      ->capture_default_str();
  sub->add_option("--runs", st.experiment.n_runs, "Random splits per algorithm")
      ->check(kCount)
      ->capture_default_str();
  sub->add_option("--seed", st.experiment.base_seed, "Run r uses seed + r")->capture_default_str();
  sub->add_option("--half-life", st.experiment.half_life, "Rankscore half-life")
      ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()).description("N>=2"))
      ->capture_default_str();
  sub->add_option("--f-mode", st.f_mode, "F-measure from mean P and R, or averaged per user")
      ->check(CLI::IsMember({"means", "per-user"}))
      ->capture_default_str();
  sub->add_option("--threads", st.experiment.threads, "Worker threads")
      ->check(kCount)
      ->envname("FOLKWALK_THREADS")
      ->capture_default_str();
}

void add_output_dir(CLI::App* sub, State& st) {
  sub->add_option("--output-dir", st.output_dir,
                  "Also write report.json, report.txt, runs.csv and manifest.json here");
}

// ---- config file -----------------------------------------------------------

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot read " + path);
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--config", fmt::format("{}:{}: expected key=value", path, number));
    std::string key = trim(line.substr(0, eq));
    while (!key.empty() && key.front() == '-') key.erase(key.begin());
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
      value = value.substr(1, value.size() - 2);
    entries.emplace_back(std::move(key), std::move(value));
  }
  return entries;
}

bool on_command_line(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == flag || a.rfind(flag + "=", 0) == 0;
  });
}

// Appends config entries for options the command line leaves unset, so the
// parser sees them with the usual precedence: flag > config > default.
std::vector<std::string> inject_config(CLI::App& app, const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k] == "--config" && k + 1 < args.size()) path = args[k + 1];
    if (args[k].rfind("--config=", 0) == 0) path = args[k].substr(9);
  }
  if (path.empty() || args.empty()) return args;
  CLI::App* sub = app.get_subcommand_no_throw(args[0]);
  if (!sub) return args;
  std::vector<std::string> merged = args;
  for (const auto& [key, value] : read_config(path)) {
    const std::string flag = "--" + key;
    const CLI::Option* opt = sub->get_option_no_throw(flag);
    if (!opt || key == "config")
      throw CLI::ValidationError("--config", fmt::format("'{}' is not an option of '{}'", key, args[0]));
    if (on_command_line(args, flag)) continue;
    if (opt->get_expected_min() == 0) {
      if (value == "true" || value == "1" || value == "yes") merged.push_back(flag);
    } else {
      merged.push_back(flag);
      merged.push_back(value);
    }
  }
  return merged;
}

// ---- helpers ---------------------------------------------------------------

TaggingDataset load_input(const State& st, std::map<std::string, std::string>& digests) {
  TaggingDataset ds;
  if (!st.dataset_path.empty()) {
    std::ifstream in(st.dataset_path);
    if (!in) throw InvalidInputError(fmt::format("cannot read '{}'", st.dataset_path));
    ds = load_dataset(in);
    digests[st.dataset_path] = file_sha256(st.dataset_path);
  } else {
    std::ifstream in(st.input, std::ios::binary);
    if (!in) throw InvalidInputError(fmt::format("cannot read '{}'", st.input));
    IngestOptions opt = st.ingest;
    opt.filter = !st.no_filter;
    ds = ingest(parse_triples(in), opt);
    digests[st.input] = file_sha256(st.input);
  }
  if (ds.num_users() == 0 || ds.num_items() == 0) throw DataError("dataset empty after filtering");
  return ds;
}

AlgorithmSpec make_spec(const State& st, const std::string& name) {
  AlgorithmSpec spec = st.spec;
  spec.kind = *parse_algorithm(name);
  spec.neighbors = st.neighbors == 0 ? std::nullopt : std::optional<std::size_t>(st.neighbors);
  spec.solver = st.solver == "closed-form" ? Solver::kClosedForm : Solver::kIterative;
  return spec;
}

std::vector<AlgorithmSpec> make_specs(const State& st) {
  std::vector<AlgorithmSpec> specs;
  for (const auto& name : st.algorithms) specs.push_back(make_spec(st, name));
  return specs;
}

ExperimentConfig make_experiment(const State& st) {
  ExperimentConfig cfg = st.experiment;
  cfg.f_mode = st.f_mode == "per-user" ? FMeasureMode::kPerUser : FMeasureMode::kFromMeans;
  return cfg;
}

json experiment_json(const ExperimentConfig& cfg) {
  return {{"train_fraction", cfg.train_fraction},
          {"top_n", cfg.top_n},
          {"runs", cfg.n_runs},
          {"base_seed", cfg.base_seed},
          {"half_life", cfg.half_life},
          {"f_mode", cfg.f_mode == FMeasureMode::kPerUser ? "per-user" : "means"}};
}

json dataset_summary(const TaggingDataset& ds) {
  return {{"users", ds.num_users()},
          {"items", ds.num_items()},
          {"tags", ds.num_tags()},
          {"transactions", ds.ui.nnz()}};
}

std::vector<std::uint64_t> run_seeds(const ExperimentConfig& cfg) {
  std::vector<std::uint64_t> seeds;
  for (std::size_t r = 0; r < cfg.n_runs; ++r) seeds.push_back(cfg.base_seed + r);
  return seeds;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
  out << text;
  if (!out) throw std::runtime_error(fmt::format("write to '{}' failed", path.string()));
}

struct Outputs {
  json report;
  std::string text;
  std::string csv;
};

void emit(const State& st, const Outputs& o, std::ostream& out) {
  std::string rendered;
  if (st.format == "json")
    rendered = o.report.dump(2) + "\n";
  else if (st.format == "csv")
    rendered = o.csv;
  else
    rendered = o.text;
  if (st.output.empty())
    out << rendered;
  else
    write_file(st.output, rendered);
}

RunManifest make_manifest(const std::vector<std::string>& args, CLI::App* sub,
                          std::map<std::string, std::string> digests,
                          std::vector<std::uint64_t> seeds) {
  RunManifest m;
  m.command = "folkwalk";
  for (const auto& a : args) m.command += " " + a;
  std::istringstream lines(sub->config_to_str(true, false));
  std::string line;
  while (std::getline(lines, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos || line.front() == '#' || line.front() == '[') continue;
    const std::string value = trim(line.substr(eq + 1));
    m.config[trim(line.substr(0, eq))] = json::parse(value, nullptr, false).is_discarded()
                                             ? json(value)
                                             : json::parse(value);
  }
  m.input_digests = std::move(digests);
  m.seeds = std::move(seeds);
  m.version = kVersion;
  m.timestamp = utc_timestamp();
  return m;
}

void write_output_dir(const State& st, const Outputs& o, const RunManifest& manifest) {
  if (st.output_dir.empty()) return;
  const fs::path dir(st.output_dir);
  fs::create_directories(dir);
  write_file(dir / "report.json", o.report.dump(2) + "\n");
  write_file(dir / "report.txt", o.text);
  write_file(dir / "runs.csv", o.csv);
  write_file(dir / "manifest.json", manifest_to_json(manifest).dump(2) + "\n");
}

// ---- commands --------------------------------------------------------------

std::string stats_csv(const DatasetStats& s) {
  return fmt::format(
      "statistic,value\nusers,{}\nitems,{}\ntags_selected,{}\ntags_total,{}\ntransactions,{}\n"
      "density,{:.17g}\navg_items_per_user,{:.17g}\navg_users_per_item,{:.17g}\n",
      s.m, s.n, s.l_selected, s.l_total, s.p, s.density, s.avg_items_per_user,
      s.avg_users_per_item);
}

std::string source_name(const State& st) {
  return fs::path(st.dataset_path.empty() ? st.input : st.dataset_path).stem().string();
}

Outputs stats_outputs(const TaggingDataset& ds, const std::string& name, const std::string& digest) {
  const DatasetStats s = stats(ds);
  Outputs o;
  o.report = {{"stats", stats_to_json(s)}};
  o.text = stats_table(s, name);
  if (!digest.empty()) {
    o.report["digest"] = "sha256:" + digest;
    o.text += fmt::format("digest: sha256:{}\n", digest);
  }
  o.csv = stats_csv(s);
  return o;
}

int cmd_ingest(const State& st, const std::vector<std::string>& args, CLI::App* sub,
               std::ostream& out) {
  std::map<std::string, std::string> digests;
  const TaggingDataset ds = load_input(st, digests);
  std::ostringstream snapshot;
  save_dataset(ds, snapshot);
  const std::string digest = sha256_hex(snapshot.str());
  if (!st.snapshot.empty()) write_file(st.snapshot, snapshot.str());
  const Outputs o = stats_outputs(ds, source_name(st), digest);
  emit(st, o, out);
  write_output_dir(st, o, make_manifest(args, sub, digests, {}));
  return 0;
}

int cmd_stats(const State& st, const std::vector<std::string>& args, CLI::App* sub,
              std::ostream& out) {
  std::map<std::string, std::string> digests;
  const Outputs o = stats_outputs(load_input(st, digests), source_name(st), "");
  emit(st, o, out);
  write_output_dir(st, o, make_manifest(args, sub, digests, {}));
  return 0;
}

int cmd_generate(const State& st, std::ostream& out) {
  std::ostringstream tsv;
  for (const Post& p : planted_corpus(st.planted, st.experiment.base_seed)) {
    if (p.tags.empty()) tsv << p.user << '\t' << p.item << "\t\n";
    for (const auto& t : p.tags) tsv << p.user << '\t' << p.item << '\t' << t << '\n';
  }
  if (st.output.empty())
    out << tsv.str();
  else
    write_file(st.output, tsv.str());
  return 0;
}

bool is_walk(AlgorithmKind k) {
  return k == AlgorithmKind::kPrwIT || k == AlgorithmKind::kPrwUT || k == AlgorithmKind::kPrwUI ||
         k == AlgorithmKind::kPrw;
}

int cmd_recommend(const State& st, const std::vector<std::string>& args, CLI::App* sub,
                  std::ostream& out) {
  std::map<std::string, std::string> digests;
  const TaggingDataset ds = load_input(st, digests);
  const AlgorithmSpec spec = make_spec(st, st.algorithms.at(0));
  const std::size_t top_n = st.experiment.top_n;

  std::vector<std::size_t> users;
  if (st.all_users) {
    for (std::size_t u = 0; u < ds.num_users(); ++u) users.push_back(u);
  } else {
    for (const auto& id : st.users) {
      const auto u = ds.users.find(id);
      if (!u) throw DataError(fmt::format("unknown user '{}'", id));
      users.push_back(*u);
    }
  }

  // Trained on every save; only unseen items are ranked.
  Split full;
  full.train_ui = ds.ui;
  full.test_sets.assign(ds.num_users(), {});
  full.seed = st.experiment.base_seed;
  RankedLists lists;
  if (is_walk(spec.kind)) {
    const WalkResult walk = prw_walk(ds, spec);
    lists = recommend_all(walk.ui_final, ds.ui, top_n);
    if (!st.trace_dir.empty()) {
      fs::create_directories(st.trace_dir);
      std::ostringstream item_csv, user_csv;
      write_trace_csv(walk.trace_item, item_csv);
      write_trace_csv(walk.trace_user, user_csv);
      write_file(fs::path(st.trace_dir) / "item_walk.csv", item_csv.str());
      write_file(fs::path(st.trace_dir) / "user_walk.csv", user_csv.str());
    }
    if (!st.similarity_dir.empty()) {
      fs::create_directories(st.similarity_dir);
      const SimilarityPair sims = prw_similarities(ds, spec);
      std::ostringstream si, su;
      write_coordinate(sims.s_item, si);
      write_coordinate(sims.s_user, su);
      write_file(fs::path(st.similarity_dir) / "s_item.txt", si.str());
      write_file(fs::path(st.similarity_dir) / "s_user.txt", su.str());
    }
  } else {
    if (!st.trace_dir.empty() || !st.similarity_dir.empty())
      throw CLI::ValidationError("--trace-csv/--dump-similarity",
                                 "only random-walk algorithms have traces and similarities");
    lists = run_algorithm(spec, ds, full, st.experiment.base_seed, top_n);
  }

  Outputs o;
  json rows = json::array();
  o.text = "user\trank\titem\tscore\n";
  o.csv = "user,rank,item,score\n";
  for (std::size_t u : users) {
    json items = json::array();
    for (std::size_t r = 0; r < lists[u].size(); ++r) {
      const auto& [item, score] = lists[u][r];
      const std::string& uid = ds.users.at(u);
      const std::string& iid = ds.items.at(item);
      o.text += fmt::format("{}\t{}\t{}\t{:.6f}\n", uid, r + 1, iid, score);
      o.csv += fmt::format("{},{},{},{:.17g}\n", uid, r + 1, iid, score);
      items.push_back({{"item", iid}, {"score", score}});
    }
    rows.push_back({{"user", ds.users.at(u)}, {"items", std::move(items)}});
  }
  o.report = {{"algorithm", spec_to_json(spec)},
              {"top_n", top_n},
              {"seed", st.experiment.base_seed},
              {"recommendations", std::move(rows)}};
  emit(st, o, out);
  write_output_dir(st, o, make_manifest(args, sub, digests, {st.experiment.base_seed}));
  return 0;
}

// Paired t-test of the two best algorithms under the objective.
json best_pair_ttest(const std::vector<EvalReport>& reports, Objective objective, std::string& line) {
  if (reports.size() < 2)
    throw CLI::ValidationError("--t-test", "needs at least two algorithms");
  if (reports.front().runs.size() < 2) throw CLI::ValidationError("--t-test", "needs --runs >= 2");
  std::vector<std::size_t> order(reports.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return metric_value(reports[a].means, objective) > metric_value(reports[b].means, objective);
  });
  const EvalReport& best = reports[order[0]];
  const EvalReport& second = reports[order[1]];
  const std::string name(objective_name(objective));
  const TTestResult t = paired_t_test(best.series(name), second.series(name));
  json j = ttest_to_json(t);
  j["metric"] = name;
  j["a"] = display_name(best.algorithm.kind);
  j["b"] = display_name(second.algorithm.kind);
  line = fmt::format("paired t-test on {}: {} vs {}: t = {:.4f}, df = {}, p = {:.4g}\n", name,
                     display_name(best.algorithm.kind), display_name(second.algorithm.kind), t.t,
                     t.df, t.p_value);
  return j;
}

int cmd_evaluate(const State& st, const std::vector<std::string>& args, CLI::App* sub,
                 std::ostream& out, const std::vector<AlgorithmSpec>& specs) {
  std::map<std::string, std::string> digests;
  const TaggingDataset ds = load_input(st, digests);
  const ExperimentConfig cfg = make_experiment(st);
  const auto reports = run_experiments(ds, specs, cfg);

  Outputs o;
  json rs = json::array();
  for (const auto& r : reports) rs.push_back(report_to_json(r));
  o.report = {{"command", sub->get_name()},
              {"dataset", dataset_summary(ds)},
              {"experiment", experiment_json(cfg)},
              {"reports", std::move(rs)}};
  o.text = reports_table(reports);
  o.csv = reports_csv(reports);
  if (st.t_test) {
    std::string line;
    o.report["t_test"] = best_pair_ttest(reports, *parse_objective(st.objective), line);
    o.text += line;
  }
  emit(st, o, out);
  write_output_dir(st, o, make_manifest(args, sub, digests, run_seeds(cfg)));
  return 0;
}

int cmd_sweep(const State& st, const std::vector<std::string>& args, CLI::App* sub,
              std::ostream& out) {
  std::map<std::string, std::string> digests;
  const TaggingDataset ds = load_input(st, digests);
  const ExperimentConfig cfg = make_experiment(st);
  const Objective metric = *parse_objective(st.objective);
  const SweepTable table = density_sweep(ds, make_specs(st), st.fractions, cfg);
  Outputs o;
  o.report = {{"command", "sweep"},
              {"dataset", dataset_summary(ds)},
              {"experiment", experiment_json(cfg)},
              {"metric", objective_name(metric)},
              {"sweep", sweep_to_json(table)}};
  o.text = sweep_table(table, metric);
  o.csv = sweep_csv(table);
  emit(st, o, out);
  write_output_dir(st, o, make_manifest(args, sub, digests, run_seeds(cfg)));
  return 0;
}

std::string grid_csv(const GridResult& g) {
  std::string csv = "cell,alpha,beta,eta,lambda,mu,precision,recall,f_measure,rankscore,best\n";
  for (std::size_t k = 0; k < g.cells.size(); ++k) {
    const auto& c = g.cells[k];
    csv += fmt::format("{},{:g},{:g},{:g},{:g},{:g},{:.17g},{:.17g},{:.17g},{:.17g},{}\n", k,
                       c.spec.similarity.alpha, c.spec.similarity.beta, c.spec.walk.eta,
                       c.spec.walk.lambda, c.spec.walk.mu, c.means.precision, c.means.recall,
                       c.means.f_measure, c.means.rankscore, k == g.best ? 1 : 0);
  }
  return csv;
}

int cmd_grid(const State& st, const std::vector<std::string>& args, CLI::App* sub,
             std::ostream& out) {
  std::map<std::string, std::string> digests;
  const TaggingDataset ds = load_input(st, digests);
  const AlgorithmSpec base = make_spec(st, st.algorithms.at(0));
  if (!is_walk(base.kind))
    throw CLI::ValidationError("--algorithm", "grid search tunes random-walk algorithms only");
  const ExperimentConfig cfg = make_experiment(st);
  const GridResult g = grid_search(ds, st.grid, *parse_objective(st.objective), base, cfg);
  Outputs o;
  o.report = {{"command", "grid"},
              {"dataset", dataset_summary(ds)},
              {"experiment", experiment_json(cfg)},
              {"grid", grid_to_json(g)}};
  o.text = grid_table(g);
  o.csv = grid_csv(g);
  emit(st, o, out);
  write_output_dir(st, o, make_manifest(args, sub, digests, run_seeds(cfg)));
  return 0;
}

// ---- application -----------------------------------------------------------

struct Commands {
  CLI::App* ingest;
  CLI::App* stats;
  CLI::App* generate;
  CLI::App* recommend;
  CLI::App* evaluate;
  CLI::App* ablate;
  CLI::App* sweep;
  CLI::App* grid;
};

const std::vector<std::string> kEvaluateDefault = {"random", "user-cf", "item-cf", "fusion", "prw"};

Commands build(CLI::App& app, State& st) {
  Commands c{};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  c.ingest = app.add_subcommand("ingest", "Filter a TSV corpus and write a dataset snapshot");
  c.ingest->add_option("--input", st.input, "Tab-separated user/item/tag triples")
      ->required()
      ->check(CLI::ExistingFile);
  c.ingest->add_option("--output", st.snapshot, "Dataset snapshot (JSON) to write");
  add_filter(c.ingest, st);
  add_common(c.ingest, st);
  add_output_dir(c.ingest, st);

  c.stats = app.add_subcommand("stats", "Print dataset statistics");
  add_data(c.stats, st);
  add_common(c.stats, st);
  add_output_dir(c.stats, st);

  c.generate = app.add_subcommand("generate", "Write a planted-cluster synthetic corpus as TSV");
  c.generate->add_option("--users", st.planted.users)->check(kCount)->capture_default_str();
  c.generate->add_option("--items", st.planted.items)->check(kCount)->capture_default_str();
  c.generate->add_option("--tags", st.planted.tags)->check(kCount)->capture_default_str();
  c.generate->add_option("--clusters", st.planted.clusters)
      ->check(kCount)
      ->capture_default_str();
  c.generate->add_option("--p-in", st.planted.p_in)->check(kUnit)->capture_default_str();
  c.generate->add_option("--p-out", st.planted.p_out)->check(kUnit)->capture_default_str();
  c.generate->add_option("--min-tags", st.planted.min_tags)->capture_default_str();
  c.generate->add_option("--max-tags", st.planted.max_tags)->capture_default_str();
  c.generate->add_option("--seed", st.experiment.base_seed)->capture_default_str();
  c.generate->add_option("--output", st.output, "TSV path (default: standard output)");
  add_common(c.generate, st, false);

  c.recommend = app.add_subcommand("recommend", "Top-N lists trained on every save");
  add_data(c.recommend, st);
  add_algorithm(c.recommend, st, false, {"prw"});
  {
    auto* who = c.recommend->add_option_group("users");
    who->add_option("--user", st.users, "User id (repeatable)");
    who->add_flag("--all", st.all_users, "Every user");
    who->require_option(1);
  }
  c.recommend->add_option("--top-n", st.experiment.top_n, "List length")
      ->check(kCount)
      ->capture_default_str();
  c.recommend->add_option("--seed", st.experiment.base_seed, "Seed of the random baseline")
      ->capture_default_str();
  c.recommend->add_option("--trace-csv", st.trace_dir,
                          "Directory for per-iteration convergence traces");
  c.recommend->add_option("--dump-similarity", st.similarity_dir,
                          "Directory for coordinate dumps of the similarity matrices");
  c.recommend->add_option("--output", st.output, "Write the lists here instead of standard output");
  add_common(c.recommend, st);
  add_output_dir(c.recommend, st);

  const auto experiment_command = [&](const char* name, const char* help,
                                      std::vector<std::string> algorithms) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_data(sub, st);
    add_algorithm(sub, st, true, std::move(algorithms));
    add_experiment(sub, st);
    add_common(sub, st);
    add_output_dir(sub, st);
    sub->add_option("--output", st.output, "Write the rendered report here instead of standard output");
    sub->add_option("--objective", st.objective, "Metric for t-tests, tables and grid search")
        ->check(kObjectiveName)
        ->capture_default_str();
    return sub;
  };

  c.evaluate = experiment_command("evaluate", "Repeated random-split evaluation", kEvaluateDefault);
  c.evaluate->add_flag("--t-test", st.t_test, "Paired t-test of the two best algorithms");

  c.ablate = experiment_command("ablate", "pRW-IT, pRW-UT, pRW-UI and pRW side by side", {});
  c.ablate->add_flag("--t-test", st.t_test, "Paired t-test of the two best variants");
  // The ablation set is fixed.
  c.ablate->remove_option(c.ablate->get_option("--algorithm"));

  c.sweep = experiment_command("sweep", "Metric against training-set percentage", kEvaluateDefault);
  c.sweep->add_option("--fractions", st.fractions, "Comma-separated training fractions")
      ->delimiter(',')
      ->check(kOpenUnit)
      ->capture_default_str();

  c.grid = experiment_command("grid", "Exhaustive hyper-parameter search", {"prw"});
  c.grid->get_option("--algorithm")->expected(1);
  c.grid->add_option("--grid-alpha", st.grid.alpha, "Values of alpha")->delimiter(',')->check(kUnit);
  c.grid->add_option("--grid-beta", st.grid.beta, "Values of beta")->delimiter(',')->check(kUnit);
  c.grid->add_option("--grid-eta", st.grid.eta, "Values of eta")->delimiter(',')->check(kDamping);
  c.grid->add_option("--grid-lambda", st.grid.lambda, "Values of lambda")->delimiter(',')->check(kDamping);
  c.grid->add_option("--grid-mu", st.grid.mu, "Values of mu")->delimiter(',')->check(kUnit);
  return c;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Random-walk recommender for folksonomies", "folkwalk");
  State st;
  const Commands c = build(app, st);
  try {
    std::vector<std::string> merged = inject_config(app, args);
    // The parser consumes its vector from the back.
    std::reverse(merged.begin(), merged.end());
    app.parse(merged);
    for (const auto& [sub, defaults] : st.algorithm_defaults)
      if (sub->parsed() && sub->get_option_no_throw("--algorithm") &&
          sub->get_option("--algorithm")->count() == 0)
        st.algorithms = defaults;
    if (c.grid->parsed() && st.algorithms.size() != 1)
      throw CLI::ValidationError("--algorithm", "grid takes a single algorithm");

    if (c.ingest->parsed()) return cmd_ingest(st, args, c.ingest, out);
    if (c.stats->parsed()) return cmd_stats(st, args, c.stats, out);
    if (c.generate->parsed()) return cmd_generate(st, out);
    if (c.recommend->parsed()) return cmd_recommend(st, args, c.recommend, out);
    if (c.evaluate->parsed()) return cmd_evaluate(st, args, c.evaluate, out, make_specs(st));
    if (c.ablate->parsed()) {
      State fixed = st;
      fixed.algorithms = {"prw-it", "prw-ut", "prw-ui", "prw"};
      return cmd_evaluate(fixed, args, c.ablate, out, make_specs(fixed));
    }
    if (c.sweep->parsed()) return cmd_sweep(st, args, c.sweep, out);
    if (c.grid->parsed()) return cmd_grid(st, args, c.grid, out);
    return kExitFailure;
  } catch (const CLI::Error& e) {
    return app.exit(e, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  } catch (const InvalidInputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace folkwalk::cli
