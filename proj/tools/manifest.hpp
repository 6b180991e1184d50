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
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace folkwalk::cli {

// Lower-case hex SHA-256.
std::string sha256_hex(std::string_view bytes);
// Throws InvalidInputError when the file cannot be read.
std::string file_sha256(const std::string& path);

struct RunManifest {
  std::string command;
  nlohmann::json config = nlohmann::json::object();
  std::map<std::string, std::string> input_digests;  // path -> sha256
  std::vector<std::uint64_t> seeds;
  std::string version;
  std::string timestamp;  // ISO-8601 UTC
};

nlohmann::json manifest_to_json(const RunManifest& m);

// Honours SOURCE_DATE_EPOCH so that manifests can be made reproducible.
std::string utc_timestamp();

}  // namespace folkwalk::cli
