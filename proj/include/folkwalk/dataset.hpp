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
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "folkwalk/sparse_matrix.hpp"

namespace folkwalk {

// One user's save of one item, with the multiset of tags applied to it.
struct Post {
  std::string user;
  std::string item;
  std::vector<std::string> tags;

  friend bool operator==(const Post&, const Post&) = default;
};

// Bijection between string ids and [0, size()), in insertion order.
class IdIndex {
 public:
  IdIndex() = default;
  explicit IdIndex(std::vector<std::string> ids);

  // Returns the existing index or appends.
  std::size_t intern(const std::string& id);
  std::optional<std::size_t> find(const std::string& id) const;
  const std::string& at(std::size_t index) const { return ids_.at(index); }
  std::size_t size() const noexcept { return ids_.size(); }
  const std::vector<std::string>& ids() const noexcept { return ids_; }

  friend bool operator==(const IdIndex& a, const IdIndex& b) { return a.ids_ == b.ids_; }

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::size_t> lookup_;
};

// Count of tag applications on a single (user, item) save.
struct TagApplication {
  std::size_t user;
  std::size_t item;
  std::size_t tag;
  std::uint32_t count;

  friend bool operator==(const TagApplication&, const TagApplication&) = default;
};

// Indexed folksonomy. ui is binary m×n, ut is m×l and it is n×l tag
// frequencies. applications holds the underlying user×item×tag counts so
// tag matrices can be rebuilt over a subset of saves.
struct TaggingDataset {
  IdIndex users;
  IdIndex items;
  IdIndex tags;
  SparseMatrix ui;
  SparseMatrix ut;
  SparseMatrix it;
  std::vector<TagApplication> applications;
  // Distinct tags before tag selection; equals tags.size() when none ran.
  std::size_t tags_total = 0;

  std::size_t num_users() const noexcept { return users.size(); }
  std::size_t num_items() const noexcept { return items.size(); }
  std::size_t num_tags() const noexcept { return tags.size(); }

  friend bool operator==(const TaggingDataset&, const TaggingDataset&) = default;
};

struct DatasetStats {
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t l_selected = 0;
  std::size_t l_total = 0;
  std::size_t p = 0;
  double density = 0.0;  // fraction, not percent
  double avg_items_per_user = 0.0;
  double avg_users_per_item = 0.0;
};

// Per-user partition of saved items into training and held-out test items.
struct Split {
  SparseMatrix train_ui;
  std::vector<std::vector<std::size_t>> test_sets;  // sorted item indices
  std::uint64_t seed = 0;
  double train_fraction = 0.0;
};

struct TripleFormat {
  char delimiter = '\t';
};

// One (user, item, tag) triple per line; the tag field may be empty and
// blank lines are skipped. Posts are merged per (user, item) in order of
// first appearance.
std::vector<Post> parse_triples(std::istream& in, TripleFormat format = {});

// Alternately drops users with fewer than min_items_per_user items and items
// with fewer than min_users_per_item users. Stops once, right after a user
// pass, fewer than unqualified_item_threshold items are below threshold
// (those items are kept), or when a pass removes nothing.
std::vector<Post> density_filter(std::vector<Post> posts, std::size_t min_items_per_user,
                                 std::size_t min_users_per_item,
                                 std::size_t unqualified_item_threshold);

// Keeps the `keep` globally most frequent tags (ties: lexicographic). Posts
// left without tags are retained.
std::vector<Post> select_tags(std::vector<Post> posts, std::size_t keep);

std::size_t count_distinct_tags(const std::vector<Post>& posts);

// Ids are assigned by first appearance.
TaggingDataset build_matrices(const std::vector<Post>& posts);

DatasetStats stats(const TaggingDataset& ds);
// Table-style statistics from raw counts; throws InvalidInputError when m or
// n is zero.
DatasetStats stats_from_counts(std::size_t m, std::size_t n, std::size_t p,
                               std::size_t l_selected, std::size_t l_total);

// For each user, ceil(train_fraction · |items|) items chosen uniformly go to
// training and the rest are held out. Deterministic in seed.
Split split(const TaggingDataset& ds, double train_fraction, std::uint64_t seed);

// The dataset as seen by a recommender trained on `s`: ui is the training
// matrix and ut/it count only tags applied on training saves.
TaggingDataset training_view(const TaggingDataset& ds, const Split& s);

// Rebuilds ui/ut/it from applications plus the set of saves in `ui`.
void rebuild_tag_matrices(TaggingDataset& ds);

struct IngestOptions {
  std::size_t min_items_per_user = 10;
  std::size_t min_users_per_item = 10;
  std::size_t unqualified_item_threshold = 20;
  // Zero disables tag selection.
  std::size_t select_tags = 0;
  // When false the density filter is skipped.
  bool filter = true;
};

// filter → select tags → build; records the pre-selection tag count.
TaggingDataset ingest(std::vector<Post> posts, const IngestOptions& options);

}  // namespace folkwalk
