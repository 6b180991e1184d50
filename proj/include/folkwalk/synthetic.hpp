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

#include <cstdint>
#include <vector>

#include "folkwalk/dataset.hpp"

namespace folkwalk {

// Block-structured folksonomy: user u belongs to cluster u % clusters, item
// j to j % clusters, and tags are split into `clusters` contiguous groups.
// A user saves each item of its own cluster with probability p_in and any
// other item with p_out; every save carries between min_tags and max_tags
// tags drawn (with replacement) from the item's tag group.
struct PlantedConfig {
  std::size_t users = 200;
  std::size_t items = 250;
  std::size_t tags = 40;
  std::size_t clusters = 5;
  double p_in = 0.3;
  double p_out = 0.01;
  std::size_t min_tags = 1;
  std::size_t max_tags = 3;
};

std::vector<Post> planted_corpus(const PlantedConfig& config, std::uint64_t seed);

}  // namespace folkwalk
