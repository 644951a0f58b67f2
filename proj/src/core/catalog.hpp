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
#ifndef TGIN_CORE_CATALOG_HPP_
#define TGIN_CORE_CATALOG_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tgin {

// Item attributes (categorical codes) and dense feature vectors.
//
// Attribute values are interned per attribute; kNull marks a missing value.
// An attribute whose non-null values are all numeric with more than
// kBucketThreshold distinct values is treated as continuous and replaced by
// its decile (codes 0..9, labels "decile0".."decile9").
class ItemCatalog {
 public:
  static constexpr int32_t kNull = -1;
  static constexpr size_t kBucketThreshold = 10;

  struct Record {
    std::string item_id;
    std::vector<std::pair<std::string, std::optional<std::string>>> attributes;
    std::vector<double> features;  // empty = no features
  };

  ItemCatalog() = default;
  static ItemCatalog FromRecords(std::vector<Record> records);
  // item_id<TAB>name=value;name=value<TAB>f1,f2,...  An empty value or \N is null.
  static ItemCatalog Parse(std::string_view text, std::string_view source);
  static ItemCatalog Load(const std::filesystem::path& path);
  void Write(std::ostream& out) const;

  size_t size() const { return item_ids_.size(); }
  size_t feature_dim() const { return feature_dim_; }
  std::optional<size_t> Find(std::string_view item_id) const;
  const std::string& item_id(size_t row) const { return item_ids_[row]; }

  // Sorted.
  const std::vector<std::string>& attribute_names() const { return attribute_names_; }
  std::optional<size_t> AttributeIndex(std::string_view name) const;
  int32_t Value(size_t row, size_t attr) const {
    return codes_[row * attribute_names_.size() + attr];
  }
  const std::string& ValueLabel(size_t attr, int32_t code) const {
    return labels_[attr][static_cast<size_t>(code)];
  }
  bool is_bucketed(size_t attr) const { return bucketed_[attr] != 0; }

  bool has_features(size_t row) const { return has_features_[row] != 0; }
  std::span<const double> features(size_t row) const {
    return {features_.data() + row * feature_dim_, feature_dim_};
  }

 private:
  std::vector<std::string> item_ids_;
  std::vector<size_t> sorted_rows_;
  std::vector<std::string> attribute_names_;
  std::vector<int32_t> codes_;
  std::vector<std::vector<std::string>> labels_;
  std::vector<uint8_t> bucketed_;
  std::vector<std::optional<std::string>> raw_values_;
  size_t feature_dim_ = 0;
  std::vector<double> features_;
  std::vector<uint8_t> has_features_;
};

}  // namespace tgin

#endif  // TGIN_CORE_CATALOG_HPP_
