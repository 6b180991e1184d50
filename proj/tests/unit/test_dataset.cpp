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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include <fmt/core.h>

#include "folkwalk/dataset.hpp"
#include "folkwalk/dataset_io.hpp"
#include "folkwalk/error.hpp"
#include "oracles.hpp"

using namespace folkwalk;

namespace {

std::vector<Post> parse(const std::string& text) {
  std::istringstream in(text);
  return parse_triples(in);
}

// Recomputes every degree by a full scan of the surviving posts.
std::vector<Post> naive_filter(std::vector<Post> posts, std::size_t ku, std::size_t ki,
                               std::size_t theta) {
  auto degree_of = [&](const std::string& id, bool by_user) {
    std::set<std::string> partners;
    for (const auto& p : posts)
      if ((by_user ? p.user : p.item) == id) partners.insert(by_user ? p.item : p.user);
    return partners.size();
  };
  for (;;) {
    std::vector<Post> kept;
    for (const auto& p : posts)
      if (degree_of(p.user, true) >= ku) kept.push_back(p);
    const bool users_removed = kept.size() != posts.size();
    posts = kept;

    std::set<std::string> bad_items;
    for (const auto& p : posts)
      if (degree_of(p.item, false) < ki) bad_items.insert(p.item);
    if (bad_items.size() < theta) break;
    kept.clear();
    for (const auto& p : posts)
      if (!bad_items.count(p.item)) kept.push_back(p);
    const bool items_removed = kept.size() != posts.size();
    posts = kept;
    if (!users_removed && !items_removed) break;
  }
  return posts;
}

std::vector<Post> uneven_corpus(std::uint64_t seed, std::size_t users, std::size_t items) {
  std::mt19937_64 rng(seed);
  std::vector<Post> posts;
  for (std::size_t u = 0; u < users; ++u) {
    // Users range from very light to heavy so the filter has work to do.
    const double activity = 0.02 + 0.25 * static_cast<double>(rng() % 100) / 100.0;
    for (std::size_t i = 0; i < items; ++i)
      if (static_cast<double>(rng() % 10000) / 10000.0 < activity)
        posts.push_back({fmt::format("u{}", u), fmt::format("i{}", i), {fmt::format("t{}", rng() % 7)}});
  }
  return posts;
}

}  // namespace

TEST_CASE("parse_triples") {
  SUBCASE("tags of one save merge into a multiset") {
    const auto posts = parse("u1\ti1\tml\nu1\ti1\tweb\n");
    REQUIRE(posts.size() == 1);
    CHECK(posts[0] == Post{"u1", "i1", {"ml", "web"}});
  }
  SUBCASE("empty tag field is a tagless save") {
    const auto posts = parse("u1\ti1\t\n");
    REQUIRE(posts.size() == 1);
    CHECK(posts[0] == Post{"u1", "i1", {}});
  }
  SUBCASE("malformed line reports its number") {
    try {
      parse("u1,i1\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 1);
    }
    try {
      parse("u1\ti1\tx\n\nu2\t\tx\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
  }
  SUBCASE("empty stream") { CHECK(parse("").empty()); }
  SUBCASE("CRLF, blank lines, repeated tags and first-appearance order") {
    const auto posts = parse("b\tx\tt\r\n\r\na\ty\tt\nb\tx\tt\n");
    REQUIRE(posts.size() == 2);
    CHECK(posts[0] == Post{"b", "x", {"t", "t"}});
    CHECK(posts[1] == Post{"a", "y", {"t"}});
  }
  SUBCASE("custom delimiter and invalid UTF-8") {
    std::istringstream in("u,i,t\n");
    CHECK(parse_triples(in, TripleFormat{','}).size() == 1);
    CHECK_THROWS_AS(parse("u\t\xff\tt\n"), ParseError);
  }
}

TEST_CASE("density_filter") {
  SUBCASE("qualified corpus is a fixed point") {
    std::vector<Post> posts;
    for (int u = 0; u < 3; ++u)
      for (int i = 0; i < 3; ++i) posts.push_back({fmt::format("u{}", u), fmt::format("i{}", i), {}});
    CHECK(density_filter(posts, 3, 3, 1) == posts);
  }
  SUBCASE("single save cascades to empty") {
    CHECK(density_filter({{"u", "i", {}}}, 2, 2, 1).empty());
  }
  SUBCASE("zero thresholds are rejected") {
    CHECK_THROWS_AS(density_filter({}, 0, 1, 1), DomainError);
  }
  SUBCASE("matches the naive repeated-scan filter on synthetic corpora") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
      const auto posts = uneven_corpus(seed, 50, 60);
      for (auto [ku, ki, theta] : {std::tuple<std::size_t, std::size_t, std::size_t>{5, 4, 1},
                                   {6, 5, 3}, {8, 6, 10}, {3, 3, 20}}) {
        const auto got = density_filter(posts, ku, ki, theta);
        CHECK(got == naive_filter(posts, ku, ki, theta));
        CHECK(got.size() <= posts.size());

        // Surviving users all qualify, and fewer than theta items do not.
        std::map<std::string, std::set<std::string>> per_user, per_item;
        for (const auto& p : got) {
          per_user[p.user].insert(p.item);
          per_item[p.item].insert(p.user);
        }
        for (const auto& [u, its] : per_user) CHECK(its.size() >= ku);
        std::size_t unqualified = 0;
        for (const auto& [i, us] : per_item) unqualified += us.size() < ki;
        CHECK(unqualified < theta);
      }
    }
  }
}

TEST_CASE("select_tags") {
  const std::vector<Post> posts = {{"u1", "i1", {"a", "a", "b"}},
                                   {"u2", "i1", {"a", "c", "b"}},
                                   {"u2", "i2", {"a", "a", "b"}},
                                   {"u3", "i3", {"c"}}};
  SUBCASE("keep at least the distinct count: unchanged") {
    CHECK(select_tags(posts, 3) == posts);
    CHECK(select_tags(posts, 10) == posts);
  }
  SUBCASE("top-2 of {a:5, b:3, c:2}") {
    const auto got = select_tags(posts, 2);
    CHECK(count_distinct_tags(got) == 2);
    CHECK(got[1].tags == std::vector<std::string>{"a", "b"});
    CHECK(got[3].tags.empty());
    CHECK(got.size() == posts.size());
  }
  SUBCASE("ties break lexicographically") {
    const auto got = select_tags({{"u", "i", {"z", "y", "x"}}}, 2);
    CHECK(got[0].tags == std::vector<std::string>{"y", "x"});
  }
  SUBCASE("random corpus against a sorted histogram") {
    std::mt19937_64 rng(5);
    const auto corpus = oracle::random_posts(rng, 30, 40, 25, 0.1);
    std::map<std::string, int> hist;
    for (const auto& p : corpus)
      for (const auto& t : p.tags) ++hist[t];
    std::vector<std::pair<int, std::string>> order;
    for (const auto& [t, c] : hist) order.push_back({-c, t});
    std::sort(order.begin(), order.end());
    for (std::size_t keep : {1u, 5u, 12u}) {
      std::set<std::string> expected;
      for (std::size_t k = 0; k < keep; ++k) expected.insert(order[k].second);
      std::set<std::string> seen;
      for (const auto& p : select_tags(corpus, keep)) seen.insert(p.tags.begin(), p.tags.end());
      CHECK(seen == expected);
    }
  }
}

TEST_CASE("build_matrices") {
  SUBCASE("repeated tag counts twice") {
    const auto ds = build_matrices({{"u1", "i1", {"t1", "t1"}}});
    CHECK(ds.ui.to_dense() == DenseMatrix{{1}});
    CHECK(ds.ut.to_dense() == DenseMatrix{{2}});
    CHECK(ds.it.to_dense() == DenseMatrix{{2}});
  }
  SUBCASE("disjoint posts give block-diagonal matrices") {
    const auto ds = build_matrices({{"u1", "i1", {"t1"}}, {"u2", "i2", {"t2"}}});
    CHECK(ds.ui.to_dense() == DenseMatrix{{1, 0}, {0, 1}});
    CHECK(ds.ut.to_dense() == DenseMatrix{{1, 0}, {0, 1}});
    CHECK(ds.it.to_dense() == DenseMatrix{{1, 0}, {0, 1}});
  }
  SUBCASE("tagless saves still count as interactions") {
    const auto ds = build_matrices({{"u1", "i1", {}}, {"u1", "i2", {"t"}}});
    CHECK(ds.ui.nnz() == 2);
    CHECK(ds.it.row_cols(0).empty());
  }
  SUBCASE("random corpus against hash-map counts") {
    std::mt19937_64 rng(9);
    const auto corpus = oracle::random_posts(rng, 25, 30, 12, 0.15);
    const auto ds = build_matrices(corpus);
    std::map<std::pair<std::string, std::string>, double> ui, ut, it;
    for (const auto& p : corpus) {
      ui[{p.user, p.item}] = 1.0;
      for (const auto& t : p.tags) {
        ut[{p.user, t}] += 1.0;
        it[{p.item, t}] += 1.0;
      }
    }
    auto check = [](const SparseMatrix& m, const IdIndex& rows, const IdIndex& cols,
                    const std::map<std::pair<std::string, std::string>, double>& expect) {
      CHECK(m.nnz() == expect.size());
      for (const auto& [key, v] : expect) CHECK(m.at(*rows.find(key.first), *cols.find(key.second)) == v);
    };
    check(ds.ui, ds.users, ds.items, ui);
    check(ds.ut, ds.users, ds.tags, ut);
    check(ds.it, ds.items, ds.tags, it);

    // Row sums of UT are per-user tag totals; UI column sums are popularity.
    for (std::size_t u = 0; u < ds.num_users(); ++u) {
      double total = 0;
      for (const auto& p : corpus)
        if (p.user == ds.users.at(u)) total += static_cast<double>(p.tags.size());
      CHECK(ds.ut.row_sum(u) == total);
    }
    const auto uit = transpose(ds.ui);
    for (std::size_t i = 0; i < ds.num_items(); ++i) {
      double pop = 0;
      for (const auto& p : corpus) pop += p.item == ds.items.at(i);
      CHECK(uit.row_sum(i) == pop);
    }
    CHECK(stats(ds).p == ds.ui.nnz());
  }
}

TEST_CASE("stats") {
  SUBCASE("density of the CiteULike and Delicious columns") {
    CHECK(fmt::format("{:.2f}", 100.0 * stats_from_counts(338, 392, 6031, 24, 2822).density) == "4.55");
    CHECK(fmt::format("{:.2f}", 100.0 * stats_from_counts(177, 210, 4093, 68, 2251).density) == "11.01");
  }
  SUBCASE("all-ones 3x4") {
    std::vector<Post> posts;
    for (int u = 0; u < 3; ++u)
      for (int i = 0; i < 4; ++i) posts.push_back({fmt::format("u{}", u), fmt::format("i{}", i), {}});
    const auto s = stats(build_matrices(posts));
    CHECK(s.density == 1.0);
    CHECK(s.avg_items_per_user == 4.0);
    CHECK(s.avg_users_per_item == 3.0);
  }
  SUBCASE("empty dataset") { CHECK_THROWS_AS(stats(build_matrices({})), InvalidInputError); }
  SUBCASE("table rows") {
    const std::string table = stats_table(stats_from_counts(338, 392, 6031, 24, 2822), "CiteULike");
    CHECK(table.find("24/2822") != std::string::npos);
    CHECK(table.find("4.55") != std::string::npos);
    CHECK(table.find("17.84") != std::string::npos);
    CHECK(table.find("15.39") != std::string::npos);
  }
}

TEST_CASE("split") {
  SUBCASE("ten items at 20% give 2 train and 8 test") {
    std::vector<Post> posts;
    for (int i = 0; i < 10; ++i) posts.push_back({"u", fmt::format("i{}", i), {}});
    const auto s = split(build_matrices(posts), 0.2, 3);
    CHECK(s.train_ui.row_cols(0).size() == 2);
    CHECK(s.test_sets[0].size() == 8);
  }
  SUBCASE("determinism and seed sensitivity") {
    std::mt19937_64 rng(4);
    const auto ds = build_matrices(oracle::random_posts(rng, 40, 50, 5, 0.3));
    const auto a = split(ds, 0.2, 17);
    const auto b = split(ds, 0.2, 17);
    const auto c = split(ds, 0.2, 18);
    CHECK(a.train_ui == b.train_ui);
    CHECK(a.test_sets == b.test_sets);
    CHECK_FALSE(a.train_ui == c.train_ui);
  }
  SUBCASE("1000 users x 10 items: exactly 20% training") {
    std::vector<Post> posts;
    for (int u = 0; u < 1000; ++u)
      for (int i = 0; i < 10; ++i) posts.push_back({fmt::format("u{}", u), fmt::format("i{}", i), {}});
    const auto s = split(build_matrices(posts), 0.2, 1);
    CHECK(s.train_ui.nnz() == 2000);
  }
  SUBCASE("training and test partition each user's items") {
    std::mt19937_64 rng(6);
    const auto ds = build_matrices(oracle::random_posts(rng, 30, 40, 5, 0.2));
    for (double f : {0.05, 0.1, 0.2, 0.5, 0.9}) {
      const auto s = split(ds, f, 99);
      for (std::size_t u = 0; u < ds.num_users(); ++u) {
        std::set<std::size_t> train(s.train_ui.row_cols(u).begin(), s.train_ui.row_cols(u).end());
        std::set<std::size_t> all(ds.ui.row_cols(u).begin(), ds.ui.row_cols(u).end());
        std::set<std::size_t> joined = train;
        for (std::size_t j : s.test_sets[u]) {
          CHECK_FALSE(train.count(j));
          joined.insert(j);
        }
        CHECK(joined == all);
        CHECK(train.size() ==
              std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(f * all.size() - 1e-9))));
      }
    }
  }
  SUBCASE("fraction outside (0, 1)") {
    const auto ds = build_matrices({{"u", "i", {}}});
    CHECK_THROWS_AS(split(ds, 0.0, 1), DomainError);
    CHECK_THROWS_AS(split(ds, 1.0, 1), DomainError);
  }
}

TEST_CASE("training_view restricts tag counts to training saves") {
  const auto ds = build_matrices({{"u1", "i1", {"a"}}, {"u1", "i2", {"b", "b"}}, {"u2", "i2", {"a"}}});
  Split s;
  s.train_ui = SparseMatrix::from_entries(2, 2, {{0, 0, 1.0}, {1, 1, 1.0}});
  s.test_sets = {{1}, {}};
  const auto view = training_view(ds, s);
  const std::size_t a = *ds.tags.find("a"), b = *ds.tags.find("b");
  CHECK(view.ut.at(0, a) == 1.0);
  CHECK(view.ut.at(0, b) == 0.0);
  CHECK(view.it.at(1, b) == 0.0);
  CHECK(view.it.at(1, a) == 1.0);
  CHECK(view.ui == s.train_ui);
}

TEST_CASE("ingest pipeline and snapshot") {
  std::mt19937_64 rng(8);
  const auto corpus = oracle::random_posts(rng, 40, 40, 30, 0.3);
  IngestOptions opt;
  opt.min_items_per_user = 5;
  opt.min_users_per_item = 5;
  opt.unqualified_item_threshold = 1;
  opt.select_tags = 10;
  const auto ds = ingest(corpus, opt);
  CHECK(ds.num_tags() == 10);
  CHECK(ds.tags_total == count_distinct_tags(density_filter(corpus, 5, 5, 1)));

  std::ostringstream first;
  save_dataset(ds, first);
  std::istringstream in(first.str());
  const auto loaded = load_dataset(in);
  CHECK(loaded == ds);
  std::ostringstream second;
  save_dataset(loaded, second);
  CHECK(second.str() == first.str());

  auto j = dataset_to_json(ds);
  j["ut"][0][2] = 999;
  CHECK_THROWS_AS(dataset_from_json(j), InvalidInputError);
}
