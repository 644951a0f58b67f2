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
#include "core/file_util.hpp"

#include <zlib.h>

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "core/error.hpp"

namespace tgin {

uint64_t WriteFileAtomically(const std::filesystem::path& path,
                             const std::function<void(std::ostream&)>& body,
                             bool gzip) {
  std::ostringstream buffer;
  body(buffer);
  const std::string data = std::move(buffer).str();

  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  uint64_t bytes = 0;
  if (gzip) {
    gzFile out = gzopen(tmp.c_str(), "wb9");
    if (out == nullptr) {
      Fail(ErrorCode::kIo, "cannot open " + tmp.string() + " for writing");
    }
    size_t offset = 0;
    while (offset < data.size()) {
      const unsigned chunk =
          static_cast<unsigned>(std::min<size_t>(data.size() - offset, 1u << 30));
      if (gzwrite(out, data.data() + offset, chunk) != static_cast<int>(chunk)) {
        gzclose(out);
        std::filesystem::remove(tmp);
        Fail(ErrorCode::kIo, "write failed for " + tmp.string());
      }
      offset += chunk;
    }
    if (gzclose(out) != Z_OK) {
      std::filesystem::remove(tmp);
      Fail(ErrorCode::kIo, "close failed for " + tmp.string());
    }
    bytes = std::filesystem::file_size(tmp);
  } else {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) Fail(ErrorCode::kIo, "cannot open " + tmp.string() + " for writing");
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    out.close();
    if (!out) {
      std::filesystem::remove(tmp);
      Fail(ErrorCode::kIo, "write failed for " + tmp.string());
    }
    bytes = data.size();
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    Fail(ErrorCode::kIo, "cannot rename into " + path.string() + ": " + ec.message());
  }
  return bytes;
}

std::string ReadFileContents(const std::filesystem::path& path) {
  gzFile in = gzopen(path.c_str(), "rb");
  if (in == nullptr) Fail(ErrorCode::kIo, "cannot open " + path.string());
  std::string data;
  char chunk[1 << 16];
  for (;;) {
    const int got = gzread(in, chunk, sizeof(chunk));
    if (got < 0) {
      gzclose(in);
      Fail(ErrorCode::kIo, "read failed for " + path.string());
    }
    if (got == 0) break;
    data.append(chunk, static_cast<size_t>(got));
  }
  gzclose(in);
  return data;
}

std::vector<std::string_view> SplitFields(std::string_view line, char delim) {
  std::vector<std::string_view> fields;
  size_t start = 0;
  for (;;) {
    const size_t pos = line.find(delim, start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::optional<int64_t> ParseInt(std::string_view text) {
  int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    return std::nullopt;
  }
  return value;
}

std::optional<double> ParseDouble(std::string_view text) {
  double value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    return std::nullopt;
  }
  return value;
}

bool LineCursor::Next(std::string_view* line, bool* terminated) {
  if (rest.empty()) return false;
  ++line_number;
  const size_t pos = rest.find('\n');
  if (pos == std::string_view::npos) {
    *line = rest;
    *terminated = false;
    rest = {};
  } else {
    *line = rest.substr(0, pos);
    *terminated = true;
    rest.remove_prefix(pos + 1);
  }
  if (!line->empty() && line->back() == '\r') line->remove_suffix(1);
  return true;
}

}  // namespace tgin
