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
#include "core/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>

#include "absl/container/flat_hash_map.h"
#include "core/error.hpp"
#include "core/file_util.hpp"

namespace tgin {

ItemCatalog ItemCatalog::FromRecords(std::vector<Record> records) {
  ItemCatalog c;
  std::map<std::string, size_t> attr_index;
  for (const auto& r : records) {
    for (const auto& [name, value] : r.attributes) attr_index.emplace(name, 0);
    if (!r.features.empty()) {
      if (c.feature_dim_ == 0) {
        c.feature_dim_ = r.features.size();
      } else if (r.features.size() != c.feature_dim_) {
        Fail(ErrorCode::kInvalidInput, "item '" + r.item_id + "' has " +
                                           std::to_string(r.features.size()) +
                                           " features, expected " +
                                           std::to_string(c.feature_dim_));
      }
    }
  }
  for (auto& [name, index] : attr_index) {
    index = c.attribute_names_.size();
    c.attribute_names_.push_back(name);
  }
  const size_t rows = records.size();
  const size_t attrs = c.attribute_names_.size();

  c.raw_values_.assign(rows * attrs, std::nullopt);
  c.features_.assign(rows * c.feature_dim_, 0.0);
  c.has_features_.assign(rows, 0);
  for (size_t row = 0; row < rows; ++row) {
    auto& r = records[row];
    for (auto& [name, value] : r.attributes) {
      auto& slot = c.raw_values_[row * attrs + attr_index[name]];
      if (slot) Fail(ErrorCode::kInvalidInput, "item '" + r.item_id + "' repeats attribute '" + name + "'");
      if (value && !value->empty() && *value != "\\N") slot = std::move(*value);
    }
    if (!r.features.empty()) {
      std::copy(r.features.begin(), r.features.end(),
                c.features_.begin() + static_cast<std::ptrdiff_t>(row * c.feature_dim_));
      c.has_features_[row] = 1;
    }
    c.item_ids_.push_back(std::move(r.item_id));
  }

  c.sorted_rows_.resize(rows);
  std::iota(c.sorted_rows_.begin(), c.sorted_rows_.end(), 0);
  std::sort(c.sorted_rows_.begin(), c.sorted_rows_.end(),
            [&](size_t x, size_t y) { return c.item_ids_[x] < c.item_ids_[y]; });
  for (size_t i = 1; i < rows; ++i) {
    if (c.item_ids_[c.sorted_rows_[i]] == c.item_ids_[c.sorted_rows_[i - 1]]) {
      Fail(ErrorCode::kInvalidInput, "duplicate catalog item '" + c.item_ids_[c.sorted_rows_[i]] + "'");
    }
  }

  c.codes_.assign(rows * attrs, kNull);
  c.labels_.assign(attrs, {});
  c.bucketed_.assign(attrs, 0);
  for (size_t a = 0; a < attrs; ++a) {
    std::vector<double> numeric;
    bool all_numeric = true;
    for (size_t row = 0; row < rows && all_numeric; ++row) {
      const auto& v = c.raw_values_[row * attrs + a];
      if (!v) continue;
      const auto d = ParseDouble(*v);
      if (!d || !std::isfinite(*d)) {
        all_numeric = false;
      } else {
        numeric.push_back(*d);
      }
    }
    std::vector<double> sorted = numeric;
    std::sort(sorted.begin(), sorted.end());
    const size_t distinct =
        static_cast<size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
    if (all_numeric && distinct > kBucketThreshold) {
      c.bucketed_[a] = 1;
      std::sort(numeric.begin(), numeric.end());
      for (int d = 0; d < 10; ++d) c.labels_[a].push_back("decile" + std::to_string(d));
      for (size_t row = 0; row < rows; ++row) {
        const auto& v = c.raw_values_[row * attrs + a];
        if (!v) continue;
        const double x = *ParseDouble(*v);
        const auto rank = static_cast<size_t>(
            std::lower_bound(numeric.begin(), numeric.end(), x) - numeric.begin());
        c.codes_[row * attrs + a] = static_cast<int32_t>(10 * rank / numeric.size());
      }
      continue;
    }
    absl::flat_hash_map<std::string, int32_t> interned;
    for (size_t row = 0; row < rows; ++row) {
      const auto& v = c.raw_values_[row * attrs + a];
      if (!v) continue;
      auto [it, added] = interned.try_emplace(*v, static_cast<int32_t>(c.labels_[a].size()));
      if (added) c.labels_[a].push_back(*v);
      c.codes_[row * attrs + a] = it->second;
    }
  }
  return c;
}

ItemCatalog ItemCatalog::Parse(std::string_view text, std::string_view source) {
  std::vector<Record> records;
  LineCursor cursor(text);
  std::string_view line;
  bool terminated = true;
  while (cursor.Next(&line, &terminated)) {
    if (line.empty()) continue;
    const std::string where =
        std::string(source) + ":" + std::to_string(cursor.line_number) + ": ";
    const auto fields = SplitFields(line, '\t');
    if (fields.size() != 3 || fields[0].empty()) {
      Fail(ErrorCode::kParse, where + "expected item_id<TAB>attributes<TAB>features");
    }
    Record r;
    r.item_id = std::string(fields[0]);
    if (!fields[1].empty()) {
      for (auto pair : SplitFields(fields[1], ';')) {
        if (pair.empty()) continue;
        const size_t eq = pair.find('=');
        if (eq == std::string_view::npos || eq == 0) {
          Fail(ErrorCode::kParse, where + "attribute '" + std::string(pair) + "' is not name=value");
        }
        r.attributes.emplace_back(std::string(pair.substr(0, eq)),
                                  std::string(pair.substr(eq + 1)));
      }
    }
    if (!fields[2].empty()) {
      for (auto token : SplitFields(fields[2], ',')) {
        const auto value = ParseDouble(token);
        if (!value || !std::isfinite(*value)) {
          Fail(ErrorCode::kParse, where + "bad feature value '" + std::string(token) + "'");
        }
        r.features.push_back(*value);
      }
    }
    records.push_back(std::move(r));
  }
  try {
    return FromRecords(std::move(records));
  } catch (const Error& e) {
    Fail(ErrorCode::kParse, std::string(source) + ": " + e.what());
  }
}

ItemCatalog ItemCatalog::Load(const std::filesystem::path& path) {
  return Parse(ReadFileContents(path), path.string());
}

void ItemCatalog::Write(std::ostream& out) const {
  const size_t attrs = attribute_names_.size();
  char buf[32];
  for (size_t row : sorted_rows_) {
    out << item_ids_[row] << '\t';
    bool first = true;
    for (size_t a = 0; a < attrs; ++a) {
      const auto& v = raw_values_[row * attrs + a];
      if (!v) continue;
      if (!first) out << ';';
      out << attribute_names_[a] << '=' << *v;
      first = false;
    }
    out << '\t';
    if (has_features_[row]) {
      const auto f = features(row);
      for (size_t i = 0; i < f.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.9g", f[i]);
        if (i) out << ',';
        out << buf;
      }
    }
    out << '\n';
  }
}

std::optional<size_t> ItemCatalog::Find(std::string_view item_id) const {
  const auto it = std::lower_bound(
      sorted_rows_.begin(), sorted_rows_.end(), item_id,
      [&](size_t row, std::string_view key) { return item_ids_[row] < key; });
  if (it == sorted_rows_.end() || item_ids_[*it] != item_id) return std::nullopt;
  return *it;
}

std::optional<size_t> ItemCatalog::AttributeIndex(std::string_view name) const {
  const auto it = std::lower_bound(attribute_names_.begin(), attribute_names_.end(), name);
  if (it == attribute_names_.end() || *it != name) return std::nullopt;
  return static_cast<size_t>(it - attribute_names_.begin());
}

}  // namespace tgin
