// Copyright 2026 The TGIN Authors.
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
#ifndef TGIN_CORE_INDEX_IO_HPP_
#define TGIN_CORE_INDEX_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tgin {

struct IndexRow {
  std::string node_a;
  std::string node_b;
  std::string node_c;
  float relevance = 0.0f;
  uint32_t rank = 0;
  bool padded = false;

  bool operator==(const IndexRow&) const = default;
};

// Per (item, order), exactly n ranked rows.
struct TriangleIndex {
  using Key = std::pair<std::string, uint32_t>;

  uint32_t n = 0;
  std::vector<uint32_t> orders;
  std::map<Key, std::vector<IndexRow>> entries;

  bool operator==(const TriangleIndex&) const = default;
};

// Throws kIntegrity naming the first offending entry.
void ValidateIndex(const TriangleIndex& index);

// Header "#tgin-index v1 n=<n> orders=<k,...>", then
// item<TAB>k<TAB>rank<TAB>a<TAB>b<TAB>c<TAB>relevance<TAB>padded
// sorted by item, order, rank. Relevance uses 9 significant digits.
void WriteIndex(const TriangleIndex& index, std::ostream& out);
uint64_t WriteIndexFile(const TriangleIndex& index, const std::filesystem::path& path,
                        bool gzip = false);

TriangleIndex ParseIndex(std::string_view text, std::string_view source);
// Accepts plain or gzip-compressed files.
TriangleIndex ReadIndexFile(const std::filesystem::path& path);

}  // namespace tgin

#endif  // TGIN_CORE_INDEX_IO_HPP_
