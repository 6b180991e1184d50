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
#include "folkwalk/dataset_io.hpp"

#include <fmt/core.h>

#include "folkwalk/error.hpp"

namespace folkwalk {

using nlohmann::json;

json dataset_to_json(const TaggingDataset& ds) {
  json j;
  j["format"] = "folkwalk-dataset";
  j["version"] = kDatasetFormatVersion;
  j["users"] = ds.users.ids();
  j["items"] = ds.items.ids();
  j["tags"] = ds.tags.ids();
  j["tags_total"] = ds.tags_total;
  json ui = json::array();
  for (const auto& e : ds.ui.entries()) ui.push_back({e.row, e.col});
  j["ui"] = std::move(ui);
  json ut = json::array();
  for (const auto& e : ds.ut.entries()) ut.push_back({e.row, e.col, static_cast<std::uint64_t>(e.value)});
  j["ut"] = std::move(ut);
  json it = json::array();
  for (const auto& e : ds.it.entries()) it.push_back({e.row, e.col, static_cast<std::uint64_t>(e.value)});
  j["it"] = std::move(it);
  json apps = json::array();
  for (const auto& a : ds.applications) apps.push_back({a.user, a.item, a.tag, a.count});
  j["applications"] = std::move(apps);
  return j;
}

TaggingDataset dataset_from_json(const json& j) {
  if (j.value("format", "") != "folkwalk-dataset")
    throw InvalidInputError("not a folkwalk dataset snapshot");
  if (j.at("version").get<int>() != kDatasetFormatVersion)
    throw InvalidInputError(
        fmt::format("unsupported dataset version {}", j.at("version").get<int>()));

  TaggingDataset ds;
  ds.users = IdIndex(j.at("users").get<std::vector<std::string>>());
  ds.items = IdIndex(j.at("items").get<std::vector<std::string>>());
  ds.tags = IdIndex(j.at("tags").get<std::vector<std::string>>());
  ds.tags_total = j.at("tags_total").get<std::size_t>();

  std::vector<SparseMatrix::Entry> ui;
  for (const auto& e : j.at("ui"))
    ui.push_back({e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>(), 1.0});
  ds.ui = SparseMatrix::from_entries(ds.num_users(), ds.num_items(), std::move(ui));
  for (const auto& a : j.at("applications")) {
    TagApplication app{a.at(0).get<std::size_t>(), a.at(1).get<std::size_t>(),
                       a.at(2).get<std::size_t>(), a.at(3).get<std::uint32_t>()};
    if (app.user >= ds.num_users() || app.item >= ds.num_items() || app.tag >= ds.num_tags())
      throw InvalidInputError("tag application index out of range");
    ds.applications.push_back(app);
  }
  rebuild_tag_matrices(ds);

  // The stored UT/IT must agree with what the applications imply.
  auto read = [](const json& arr, std::size_t rows, std::size_t cols) {
    std::vector<SparseMatrix::Entry> entries;
    for (const auto& e : arr)
      entries.push_back({e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>(),
                         e.at(2).get<double>()});
    return SparseMatrix::from_entries(rows, cols, std::move(entries));
  };
  if (!(read(j.at("ut"), ds.num_users(), ds.num_tags()) == ds.ut) ||
      !(read(j.at("it"), ds.num_items(), ds.num_tags()) == ds.it))
    throw InvalidInputError("dataset snapshot: UT/IT inconsistent with tag applications");
  return ds;
}

void save_dataset(const TaggingDataset& ds, std::ostream& out) {
  out << dataset_to_json(ds).dump() << '\n';
}

TaggingDataset load_dataset(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInputError(fmt::format("dataset snapshot is not valid JSON: {}", e.what()));
  }
  return dataset_from_json(j);
}

json stats_to_json(const DatasetStats& s) {
  return {{"users", s.m},
          {"items", s.n},
          {"tags_selected", s.l_selected},
          {"tags_total", s.l_total},
          {"transactions", s.p},
          {"density", s.density},
          {"avg_items_per_user", s.avg_items_per_user},
          {"avg_users_per_item", s.avg_users_per_item}};
}

std::string stats_table(const DatasetStats& s, const std::string& column) {
  const std::vector<std::pair<std::string, std::string>> rows = {
      {"Number of users: m", std::to_string(s.m)},
      {"Number of items: n", std::to_string(s.n)},
      {"Number of selected/total tags: l", fmt::format("{}/{}", s.l_selected, s.l_total)},
      {"Number of total transactions: p", std::to_string(s.p)},
      {"Data density: p/(mn) (%)", fmt::format("{:.2f}", 100.0 * s.density)},
      {"Avg. number of items per user", fmt::format("{:.2f}", s.avg_items_per_user)},
      {"Avg. number of users per item", fmt::format("{:.2f}", s.avg_users_per_item)},
  };
  std::size_t label_w = 8;
  std::size_t value_w = column.size();
  for (const auto& [label, value] : rows) {
    label_w = std::max(label_w, label.size());
    value_w = std::max(value_w, value.size());
  }
  std::string out = fmt::format("{:<{}}  {:>{}}\n", "Data set", label_w, column, value_w);
  for (const auto& [label, value] : rows)
    out += fmt::format("{:<{}}  {:>{}}\n", label, label_w, value, value_w);
  return out;
}

}  // namespace folkwalk
