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
#include "folkwalk/synthetic.hpp"

#include <fmt/core.h>

#include "folkwalk/error.hpp"
#include "folkwalk/random.hpp"

namespace folkwalk {

std::vector<Post> planted_corpus(const PlantedConfig& config, std::uint64_t seed) {
  if (config.clusters == 0 || config.tags < config.clusters)
    throw DomainError("planted corpus needs at least one tag per cluster");
  if (config.min_tags > config.max_tags) throw DomainError("min_tags exceeds max_tags");
  const std::size_t group = config.tags / config.clusters;
  Engine rng(mix_seed(seed));
  std::vector<Post> posts;
  for (std::size_t u = 0; u < config.users; ++u) {
    for (std::size_t j = 0; j < config.items; ++j) {
      const std::size_t cluster = j % config.clusters;
      const double p = u % config.clusters == cluster ? config.p_in : config.p_out;
      if (uniform_unit(rng) >= p) continue;
      Post post{fmt::format("u{:04}", u), fmt::format("i{:04}", j), {}};
      const std::size_t count =
          config.min_tags + uniform_below(rng, config.max_tags - config.min_tags + 1);
      for (std::size_t t = 0; t < count; ++t)
        post.tags.push_back(fmt::format("t{:03}", cluster * group + uniform_below(rng, group)));
      posts.push_back(std::move(post));
    }
  }
  return posts;
}

}  // namespace folkwalk
