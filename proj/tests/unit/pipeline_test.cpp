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


#include "core/pipeline.hpp"

#include <sstream>

#include "core/error.hpp"
#include "core/synthetic.hpp"
#include "gtest/gtest.h"
#include "test_util.hpp"

namespace tgin {
namespace {

using testing::CompleteGraph;
using testing::MakeGraph;

ItemCatalog FeatureCatalog(const std::vector<std::string>& ids, size_t dim) {
  std::vector<ItemCatalog::Record> records;
  for (size_t i = 0; i < ids.size(); ++i) {
    ItemCatalog::Record r;
    r.item_id = ids[i];
    r.attributes = {{"category", "c"}};
    r.features.assign(dim, 0.0);
    r.features[i % dim] = 1.0;
    records.push_back(std::move(r));
  }
  return ItemCatalog::FromRecords(std::move(records));
}

PipelineConfig Config(uint32_t n, uint32_t max_order) {
  PipelineConfig c;
  c.triangles_per_item = n;
  c.max_order = max_order;
  c.workers = 1;
  return c;
}

TEST(BuildTriangleIndexTest, CompleteGraphOnFour) {
  const std::vector<std::string> ids = {"a", "b", "c", "d"};
  const auto g = CompleteGraph(ids, 2);
  IndexBuildSummary summary;
  const auto index = BuildTriangleIndex(g, FeatureCatalog(ids, 4), Config(2, 1), &summary);
  ValidateIndex(index);
  EXPECT_EQ(index.n, 2u);
  EXPECT_EQ(index.orders, (std::vector<uint32_t>{0, 1}));
  ASSERT_EQ(index.entries.size(), 8u);
  for (const auto& [key, rows] : index.entries) {
    ASSERT_EQ(rows.size(), 2u);
    if (key.second == 0) {
      // Three triangles contain the center; two are kept.
      for (const auto& row : rows) {
        EXPECT_FALSE(row.padded);
        EXPECT_TRUE(row.node_a == key.first || row.node_b == key.first ||
                    row.node_c == key.first);
      }
    } else {
      // The single triangle avoiding the center, then a pseudo row.
      EXPECT_FALSE(rows[0].padded);
      EXPECT_NE(rows[0].node_a, key.first);
      EXPECT_NE(rows[0].node_b, key.first);
      EXPECT_NE(rows[0].node_c, key.first);
      EXPECT_TRUE(rows[1].padded);
      EXPECT_EQ(rows[1].node_a, key.first);
    }
  }
  EXPECT_EQ(summary.entries, 8u);
  EXPECT_EQ(summary.padded_entries, 4u);
  EXPECT_EQ(summary.padded_rows, 4u);
  EXPECT_EQ(summary.padded_items, ids);
  EXPECT_TRUE(summary.missing_feature_items.empty());
}

TEST(BuildTriangleIndexTest, IsolatedNodeIsFullyPadded) {
  const std::vector<std::string> ids = {"a", "b", "c", "z"};
  const auto g = MakeGraph(ids, {{"a", "b", 1}, {"b", "c", 1}, {"a", "c", 1}});
  IndexBuildSummary summary;
  const auto index = BuildTriangleIndex(g, FeatureCatalog(ids, 3), Config(3, 2), &summary);
  for (uint32_t k = 0; k <= 2; ++k) {
    const auto& rows = index.entries.at({"z", k});
    ASSERT_EQ(rows.size(), 3u);
    for (const auto& row : rows) {
      EXPECT_TRUE(row.padded);
      EXPECT_EQ(row.node_a, "z");
      EXPECT_EQ(row.relevance, 0.0f);
    }
  }
  EXPECT_NE(std::find(summary.padded_items.begin(), summary.padded_items.end(), "z"),
            summary.padded_items.end());
}

TEST(BuildTriangleIndexTest, LargeNPadsEveryEntry) {
  const std::vector<std::string> ids = {"a", "b", "c", "d"};
  const auto g = CompleteGraph(ids);
  const auto index = BuildTriangleIndex(g, FeatureCatalog(ids, 4), Config(10, 1));
  ValidateIndex(index);
  for (const auto& [key, rows] : index.entries) {
    ASSERT_EQ(rows.size(), 10u);
    const size_t real = key.second == 0 ? 3 : 1;
    for (size_t r = 0; r < rows.size(); ++r) EXPECT_EQ(rows[r].padded, r >= real) << r;
  }
}

TEST(BuildTriangleIndexTest, MissingFeaturesAreListed) {
  const std::vector<std::string> ids = {"a", "b", "c", "d"};
  const auto g = CompleteGraph(ids);
  const std::vector<std::string> known = {"a", "c"};
  IndexBuildSummary summary;
  const auto index = BuildTriangleIndex(g, FeatureCatalog(known, 2), Config(2, 1), &summary);
  EXPECT_EQ(summary.missing_feature_items, (std::vector<std::string>{"b", "d"}));
  EXPECT_EQ(index.entries.size(), 8u);
}

TEST(BuildTriangleIndexTest, WorkerCountDoesNotChangeOutput) {
  auto fixture = synthetic::PlantedClusterGraph({.clusters = 6, .cluster_size = 10});
  PipelineConfig one = Config(5, 2);
  PipelineConfig four = one;
  four.workers = 4;
  const auto a = BuildTriangleIndex(fixture.graph, fixture.catalog, one);
  const auto b = BuildTriangleIndex(fixture.graph, fixture.catalog, four);
  EXPECT_EQ(a, b);
  std::ostringstream sa, sb;
  WriteIndex(a, sa);
  WriteIndex(b, sb);
  EXPECT_EQ(sa.str(), sb.str());
}

TEST(BuildTriangleIndexTest, EveryEntryHasExactlyNRows) {
  const auto g = synthetic::RandomGraph(80, 0.08, 4);
  std::vector<std::string> ids;
  for (NodeId v = 0; v < g.node_count(); ++v) ids.push_back(g.name(v));
  const auto index = BuildTriangleIndex(g, FeatureCatalog(ids, 8), Config(7, 2));
  EXPECT_EQ(index.entries.size(), 3 * g.node_count());
  for (const auto& [key, rows] : index.entries) EXPECT_EQ(rows.size(), 7u);
  EXPECT_NO_THROW(ValidateIndex(index));
}

TEST(PipelineConfigTest, Validation) {
  auto expect_invalid = [](PipelineConfig c) {
    try {
      c.Validate();
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidParameter);
    }
  };
  PipelineConfig c;
  EXPECT_NO_THROW(c.Validate());
  c.window = 1;
  expect_invalid(c);
  c = {};
  c.theta = 1.0;
  expect_invalid(c);
  c.theta = 0.0;
  expect_invalid(c);
  c = {};
  c.triangles_per_item = 0;
  expect_invalid(c);
  c = {};
  c.bloom_hashes = 0;
  expect_invalid(c);
  c.bloom_bits_per_edge = 0;
  EXPECT_NO_THROW(c.Validate());
  c = {};
  c.workers = 0;
  EXPECT_GE(c.EffectiveWorkers(), 1u);
}

}  // namespace
}  // namespace tgin
