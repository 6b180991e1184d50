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

#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "folkwalk/dataset.hpp"

namespace folkwalk {

inline constexpr int kDatasetFormatVersion = 1;

// Snapshot layout:
//   {"format": "folkwalk-dataset", "version": 1,
//    "users": [...], "items": [...], "tags": [...], "tags_total": N,
//    "ui": [[u, i], ...], "ut": [[u, t, c], ...], "it": [[i, t, c], ...],
//    "applications": [[u, i, t, c], ...]}
// Output is canonical: identical datasets serialize to identical bytes.
nlohmann::json dataset_to_json(const TaggingDataset& ds);
TaggingDataset dataset_from_json(const nlohmann::json& j);

void save_dataset(const TaggingDataset& ds, std::ostream& out);
TaggingDataset load_dataset(std::istream& in);

nlohmann::json stats_to_json(const DatasetStats& s);
// Aligned text table with one row per statistic; percentages to 2 d.p.
std::string stats_table(const DatasetStats& s, const std::string& column = "dataset");

}  // namespace folkwalk
