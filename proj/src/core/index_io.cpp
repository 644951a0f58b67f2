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
#include "core/index_io.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <set>

#include "core/error.hpp"
#include "core/file_util.hpp"

namespace tgin {
namespace {

std::string EntryName(const TriangleIndex::Key& key) {
  return "entry (" + key.first + ", k=" + std::to_string(key.second) + ")";
}

bool ValidId(std::string_view id) {
  return !id.empty() && id.find_first_of("\t\n\r") == std::string_view::npos;
}

}  // namespace

void ValidateIndex(const TriangleIndex& index) {
  if (index.n < 1) Fail(ErrorCode::kIntegrity, "index n must be >= 1");
  std::set<uint32_t> orders;
  for (uint32_t k : index.orders) {
    if (!orders.insert(k).second) {
      Fail(ErrorCode::kIntegrity, "order " + std::to_string(k) + " listed twice");
    }
  }
  for (const auto& [key, rows] : index.entries) {
    const std::string name = EntryName(key);
    if (!ValidId(key.first)) Fail(ErrorCode::kIntegrity, name + ": invalid item id");
    if (!orders.contains(key.second)) {
      Fail(ErrorCode::kIntegrity, name + ": order not declared in header");
    }
    if (rows.size() != index.n) {
      Fail(ErrorCode::kIntegrity, name + ": has " + std::to_string(rows.size()) +
                                      " rows, expected " + std::to_string(index.n));
    }
    std::vector<uint8_t> seen(index.n, 0);
    for (const auto& row : rows) {
      if (row.rank >= index.n) {
        Fail(ErrorCode::kIntegrity, name + ": rank " + std::to_string(row.rank) + " out of range");
      }
      if (seen[row.rank]++) {
        Fail(ErrorCode::kIntegrity, name + ": duplicate rank " + std::to_string(row.rank));
      }
      if (!ValidId(row.node_a) || !ValidId(row.node_b) || !ValidId(row.node_c)) {
        Fail(ErrorCode::kIntegrity, name + ": invalid node id");
      }
      const bool pseudo = row.node_a == row.node_b && row.node_b == row.node_c;
      if (pseudo) {
        if (!row.padded || row.relevance != 0.0f || row.node_a != key.first) {
          Fail(ErrorCode::kIntegrity,
               name + ": pseudo-triangle must repeat the item, be padded and have relevance 0");
        }
      } else if (!(row.node_a < row.node_b && row.node_b < row.node_c)) {
        Fail(ErrorCode::kIntegrity, name + ": triangle nodes not in canonical order");
      }
      if (!(row.relevance >= 0.0f)) Fail(ErrorCode::kIntegrity, name + ": negative relevance");
    }
  }
}

void WriteIndex(const TriangleIndex& index, std::ostream& out) {
  out << "#tgin-index v1 n=" << index.n << " orders=";
  std::vector<uint32_t> orders = index.orders;
  std::sort(orders.begin(), orders.end());
  for (size_t i = 0; i < orders.size(); ++i) out << (i ? "," : "") << orders[i];
  out << '\n';
  char buf[32];
  std::vector<const IndexRow*> ranked;
  for (const auto& [key, rows] : index.entries) {
    ranked.clear();
    for (const auto& row : rows) ranked.push_back(&row);
    std::sort(ranked.begin(), ranked.end(),
              [](const IndexRow* x, const IndexRow* y) { return x->rank < y->rank; });
    for (const IndexRow* row : ranked) {
      std::snprintf(buf, sizeof(buf), "%.9g", static_cast<double>(row->relevance));
      out << key.first << '\t' << key.second << '\t' << row->rank << '\t' << row->node_a
          << '\t' << row->node_b << '\t' << row->node_c << '\t' << buf << '\t'
          << (row->padded ? 1 : 0) << '\n';
    }
  }
}

uint64_t WriteIndexFile(const TriangleIndex& index, const std::filesystem::path& path,
                        bool gzip) {
  ValidateIndex(index);
  return WriteFileAtomically(path, [&](std::ostream& out) { WriteIndex(index, out); }, gzip);
}

TriangleIndex ParseIndex(std::string_view text, std::string_view source) {
  auto where = [&](uint64_t line) { return std::string(source) + ":" + std::to_string(line) + ": "; };
  LineCursor cursor(text);
  std::string_view line;
  bool terminated = true;
  if (!cursor.Next(&line, &terminated) || !terminated) {
    Fail(ErrorCode::kParse, where(1) + "missing index header");
  }
  const auto header = SplitFields(line, ' ');
  if (header.size() != 4 || header[0] != "#tgin-index" || header[1] != "v1" ||
      !header[2].starts_with("n=") || !header[3].starts_with("orders=")) {
    Fail(ErrorCode::kParse, where(1) + "bad index header");
  }
  TriangleIndex index;
  const auto n = ParseInt(header[2].substr(2));
  if (!n || *n < 1 || *n > UINT32_MAX) Fail(ErrorCode::kParse, where(1) + "bad n");
  index.n = static_cast<uint32_t>(*n);
  const auto order_list = header[3].substr(7);
  if (!order_list.empty()) {
    for (auto token : SplitFields(order_list, ',')) {
      const auto k = ParseInt(token);
      if (!k || *k < 0 || *k > UINT32_MAX) Fail(ErrorCode::kParse, where(1) + "bad order list");
      index.orders.push_back(static_cast<uint32_t>(*k));
    }
  }

  while (cursor.Next(&line, &terminated)) {
    const std::string at = where(cursor.line_number);
    if (!terminated) Fail(ErrorCode::kParse, at + "truncated line");
    const auto f = SplitFields(line, '\t');
    if (f.size() != 8) {
      Fail(ErrorCode::kParse, at + "expected 8 fields, got " + std::to_string(f.size()));
    }
    const auto k = ParseInt(f[1]);
    const auto rank = ParseInt(f[2]);
    const auto relevance = ParseDouble(f[6]);
    if (!k || *k < 0 || *k > UINT32_MAX) Fail(ErrorCode::kParse, at + "bad order");
    if (!rank || *rank < 0 || *rank > UINT32_MAX) Fail(ErrorCode::kParse, at + "bad rank");
    if (!relevance) Fail(ErrorCode::kParse, at + "bad relevance");
    if (f[7] != "0" && f[7] != "1") Fail(ErrorCode::kParse, at + "padded must be 0 or 1");
    if (f[0].empty() || f[3].empty() || f[4].empty() || f[5].empty()) {
      Fail(ErrorCode::kParse, at + "empty item id");
    }
    IndexRow row{std::string(f[3]), std::string(f[4]), std::string(f[5]),
                 static_cast<float>(*relevance), static_cast<uint32_t>(*rank), f[7] == "1"};
    index.entries[{std::string(f[0]), static_cast<uint32_t>(*k)}].push_back(std::move(row));
  }
  ValidateIndex(index);
  return index;
}

TriangleIndex ReadIndexFile(const std::filesystem::path& path) {
  return ParseIndex(ReadFileContents(path), path.string());
}

}  // namespace tgin
