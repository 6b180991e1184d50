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
#include "folkwalk/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string_view>
#include <unordered_set>

#include <fmt/core.h>

#include "folkwalk/error.hpp"
#include "folkwalk/random.hpp"

namespace folkwalk {

IdIndex::IdIndex(std::vector<std::string> ids) {
  for (auto& id : ids) {
    if (lookup_.count(id)) throw InvalidInputError(fmt::format("duplicate id '{}'", id));
    lookup_.emplace(id, ids_.size());
    ids_.push_back(std::move(id));
  }
}

std::size_t IdIndex::intern(const std::string& id) {
  const auto [it, inserted] = lookup_.try_emplace(id, ids_.size());
  if (inserted) ids_.push_back(id);
  return it->second;
}

std::optional<std::size_t> IdIndex::find(const std::string& id) const {
  const auto it = lookup_.find(id);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

namespace {

bool valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xE ? 3 : (c >> 3) == 0x1E ? 4 : 0;
    if (len == 0 || i + len > s.size()) return false;
    for (std::size_t k = 1; k < len; ++k)
      if ((static_cast<unsigned char>(s[i + k]) >> 6) != 0x2) return false;
    i += len;
  }
  return true;
}

using Degree = std::unordered_map<std::string, std::unordered_set<std::string>>;

Degree items_per_user(const std::vector<Post>& posts) {
  Degree d;
  for (const auto& p : posts) d[p.user].insert(p.item);
  return d;
}

Degree users_per_item(const std::vector<Post>& posts) {
  Degree d;
  for (const auto& p : posts) d[p.item].insert(p.user);
  return d;
}

}  // namespace

std::vector<Post> parse_triples(std::istream& in, TripleFormat format) {
  std::vector<Post> posts;
  std::map<std::pair<std::string, std::string>, std::size_t> slot;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!valid_utf8(line)) throw ParseError(line_no, "invalid UTF-8");

    std::vector<std::string_view> fields;
    std::string_view rest(line);
    for (std::size_t pos; (pos = rest.find(format.delimiter)) != std::string_view::npos;) {
      fields.push_back(rest.substr(0, pos));
      rest.remove_prefix(pos + 1);
    }
    fields.push_back(rest);
    if (fields.size() != 3)
      throw ParseError(line_no, fmt::format("expected 3 fields (user, item, tag), found {}",
                                            fields.size()));
    if (fields[0].empty()) throw ParseError(line_no, "empty user id");
    if (fields[1].empty()) throw ParseError(line_no, "empty item id");

    auto key = std::make_pair(std::string(fields[0]), std::string(fields[1]));
    auto [it, inserted] = slot.try_emplace(key, posts.size());
    if (inserted) posts.push_back({key.first, key.second, {}});
    if (!fields[2].empty()) posts[it->second].tags.emplace_back(fields[2]);
  }
  return posts;
}

std::vector<Post> density_filter(std::vector<Post> posts, std::size_t min_items_per_user,
                                 std::size_t min_users_per_item,
                                 std::size_t unqualified_item_threshold) {
  if (min_items_per_user == 0 || min_users_per_item == 0 || unqualified_item_threshold == 0)
    throw DomainError("density_filter: thresholds must be >= 1");
  for (;;) {
    const Degree user_deg = items_per_user(posts);
    const auto before_users = posts.size();
    std::erase_if(posts, [&](const Post& p) {
      return user_deg.at(p.user).size() < min_items_per_user;
    });
    const bool removed_users = posts.size() != before_users;

    const Degree item_deg = users_per_item(posts);
    const auto unqualified = static_cast<std::size_t>(std::count_if(
        item_deg.begin(), item_deg.end(),
        [&](const auto& kv) { return kv.second.size() < min_users_per_item; }));
    if (unqualified < unqualified_item_threshold) break;

    const auto before_items = posts.size();
    std::erase_if(posts, [&](const Post& p) {
      return item_deg.at(p.item).size() < min_users_per_item;
    });
    if (!removed_users && posts.size() == before_items) break;
  }
  return posts;
}

std::size_t count_distinct_tags(const std::vector<Post>& posts) {
  std::unordered_set<std::string> seen;
  for (const auto& p : posts) seen.insert(p.tags.begin(), p.tags.end());
  return seen.size();
}

std::vector<Post> select_tags(std::vector<Post> posts, std::size_t keep) {
  if (keep == 0) throw DomainError("select_tags: must keep at least one tag");
  std::unordered_map<std::string, std::size_t> freq;
  for (const auto& p : posts)
    for (const auto& t : p.tags) ++freq[t];
  if (freq.size() <= keep) return posts;

  std::vector<std::pair<std::string, std::size_t>> ranked(freq.begin(), freq.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  std::unordered_set<std::string> kept;
  for (std::size_t k = 0; k < keep; ++k) kept.insert(ranked[k].first);
  for (auto& p : posts) std::erase_if(p.tags, [&](const std::string& t) { return !kept.count(t); });
  return posts;
}

namespace {

struct TagMatrices {
  SparseMatrix ut;
  SparseMatrix it;
};

TagMatrices tag_matrices(std::size_t m, std::size_t n, std::size_t l,
                         const std::vector<TagApplication>& apps) {
  std::vector<SparseMatrix::Entry> ut;
  std::vector<SparseMatrix::Entry> it;
  ut.reserve(apps.size());
  it.reserve(apps.size());
  for (const auto& a : apps) {
    ut.push_back({a.user, a.tag, static_cast<double>(a.count)});
    it.push_back({a.item, a.tag, static_cast<double>(a.count)});
  }
  using D = SparseMatrix::Duplicates;
  return {SparseMatrix::from_entries(m, l, std::move(ut), D::kSum),
          SparseMatrix::from_entries(n, l, std::move(it), D::kSum)};
}

}  // namespace

TaggingDataset build_matrices(const std::vector<Post>& posts) {
  TaggingDataset ds;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::uint32_t> counts;
  std::map<std::pair<std::size_t, std::size_t>, char> saves;
  for (const auto& p : posts) {
    if (p.user.empty() || p.item.empty()) throw InvalidInputError("post with empty user or item id");
    const std::size_t u = ds.users.intern(p.user);
    const std::size_t i = ds.items.intern(p.item);
    saves[{u, i}] = 1;
    for (const auto& t : p.tags) ++counts[{u, i, ds.tags.intern(t)}];
  }
  std::vector<SparseMatrix::Entry> ui;
  ui.reserve(saves.size());
  for (const auto& [key, _] : saves) ui.push_back({key.first, key.second, 1.0});
  ds.ui = SparseMatrix::from_entries(ds.users.size(), ds.items.size(), std::move(ui));

  ds.applications.reserve(counts.size());
  for (const auto& [key, c] : counts)
    ds.applications.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), c});
  auto tm = tag_matrices(ds.users.size(), ds.items.size(), ds.tags.size(), ds.applications);
  ds.ut = std::move(tm.ut);
  ds.it = std::move(tm.it);
  ds.tags_total = ds.tags.size();
  return ds;
}

void rebuild_tag_matrices(TaggingDataset& ds) {
  std::erase_if(ds.applications,
                [&](const TagApplication& a) { return ds.ui.at(a.user, a.item) == 0.0; });
  auto tm = tag_matrices(ds.users.size(), ds.items.size(), ds.tags.size(), ds.applications);
  ds.ut = std::move(tm.ut);
  ds.it = std::move(tm.it);
}

DatasetStats stats_from_counts(std::size_t m, std::size_t n, std::size_t p,
                               std::size_t l_selected, std::size_t l_total) {
  if (m == 0 || n == 0) throw InvalidInputError("stats: dataset has no users or no items");
  DatasetStats s;
  s.m = m;
  s.n = n;
  s.p = p;
  s.l_selected = l_selected;
  s.l_total = l_total;
  s.density = static_cast<double>(p) / (static_cast<double>(m) * static_cast<double>(n));
  s.avg_items_per_user = static_cast<double>(p) / static_cast<double>(m);
  s.avg_users_per_item = static_cast<double>(p) / static_cast<double>(n);
  return s;
}

DatasetStats stats(const TaggingDataset& ds) {
  return stats_from_counts(ds.num_users(), ds.num_items(), ds.ui.nnz(), ds.num_tags(),
                           ds.tags_total);
}

Split split(const TaggingDataset& ds, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw DomainError(fmt::format("split: train fraction {} not in (0, 1)", train_fraction));
  Split s;
  s.seed = seed;
  s.train_fraction = train_fraction;
  s.test_sets.resize(ds.num_users());

  Engine rng(mix_seed(seed));
  std::vector<SparseMatrix::Entry> train;
  std::vector<std::size_t> items;
  for (std::size_t u = 0; u < ds.num_users(); ++u) {
    const auto row = ds.ui.row_cols(u);
    if (row.empty()) continue;
    items.assign(row.begin(), row.end());
    // The epsilon keeps products like 0.1 * 30 from rounding up a whole item.
    const double want = std::ceil(train_fraction * static_cast<double>(items.size()) - 1e-9);
    const auto k = std::clamp<std::size_t>(static_cast<std::size_t>(want), 1, items.size());
    partial_shuffle(std::span<std::size_t>(items), k, rng);
    for (std::size_t t = 0; t < k; ++t) train.push_back({u, items[t], 1.0});
    auto& test = s.test_sets[u];
    test.assign(items.begin() + static_cast<std::ptrdiff_t>(k), items.end());
    std::sort(test.begin(), test.end());
  }
  s.train_ui = SparseMatrix::from_entries(ds.num_users(), ds.num_items(), std::move(train));
  return s;
}

TaggingDataset training_view(const TaggingDataset& ds, const Split& s) {
  if (s.train_ui.rows() != ds.num_users() || s.train_ui.cols() != ds.num_items())
    throw DimensionError(fmt::format("training_view: split is {}, dataset UI is {}",
                                     s.train_ui.shape(), ds.ui.shape()));
  TaggingDataset view = ds;
  view.ui = s.train_ui;
  rebuild_tag_matrices(view);
  return view;
}

TaggingDataset ingest(std::vector<Post> posts, const IngestOptions& options) {
  if (options.filter)
    posts = density_filter(std::move(posts), options.min_items_per_user,
                           options.min_users_per_item, options.unqualified_item_threshold);
  const std::size_t total = count_distinct_tags(posts);
  if (options.select_tags > 0) posts = select_tags(std::move(posts), options.select_tags);
  TaggingDataset ds = build_matrices(posts);
  ds.tags_total = total;
  return ds;
}

}  // namespace folkwalk
