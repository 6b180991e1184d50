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

#include <string>
#include <vector>

#include <json.hpp>

#include "folkwalk/baselines.hpp"
#include "folkwalk/eval.hpp"

namespace folkwalk {

// {"name": display name, "id": cli name, "params": {...}} with only the
// parameters the algorithm reads, after ablation overrides.
nlohmann::json spec_to_json(const AlgorithmSpec& spec);
nlohmann::json metrics_to_json(const Metrics& m);
nlohmann::json report_to_json(const EvalReport& report);
nlohmann::json ttest_to_json(const TTestResult& t);
nlohmann::json sweep_to_json(const SweepTable& table);
nlohmann::json grid_to_json(const GridResult& grid);

// One row per algorithm, mean precision / recall / F-measure / rankscore.
std::string reports_table(const std::vector<EvalReport>& reports);
// algorithm,run,seed,precision,recall,f_measure,rankscore
std::string reports_csv(const std::vector<EvalReport>& reports);
// Rows are algorithms, columns training-set percentages.
std::string sweep_table(const SweepTable& table, Objective metric = Objective::kPrecision);
std::string sweep_csv(const SweepTable& table);
std::string grid_table(const GridResult& grid);

}  // namespace folkwalk
