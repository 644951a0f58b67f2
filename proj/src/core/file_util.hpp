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
#ifndef TGIN_CORE_FILE_UTIL_HPP_
#define TGIN_CORE_FILE_UTIL_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace tgin {

// Writes to a sibling temp file and renames it over path, so readers only
// ever observe complete files. Returns the number of bytes written
// (compressed size when gzip is set).
uint64_t WriteFileAtomically(const std::filesystem::path& path,
                             const std::function<void(std::ostream&)>& body,
                             bool gzip = false);

// Reads a whole file, transparently inflating gzip content.
std::string ReadFileContents(const std::filesystem::path& path);

// Splits on a single-character delimiter; empty fields are kept.
std::vector<std::string_view> SplitFields(std::string_view line, char delim);

std::optional<int64_t> ParseInt(std::string_view text);
std::optional<double> ParseDouble(std::string_view text);

// Iterates lines of a buffer. The last line is reported with
// terminated=false when the buffer does not end in a newline.
struct LineCursor {
  explicit LineCursor(std::string_view buffer) : rest(buffer) {}
  bool Next(std::string_view* line, bool* terminated);

  std::string_view rest;
  uint64_t line_number = 0;
};

}  // namespace tgin

#endif  // TGIN_CORE_FILE_UTIL_HPP_
