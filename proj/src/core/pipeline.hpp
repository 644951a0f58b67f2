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
#ifndef TGIN_CORE_PIPELINE_HPP_
#define TGIN_CORE_PIPELINE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "core/catalog.hpp"
#include "core/graph.hpp"
#include "core/index_io.hpp"
#include "core/triangle.hpp"

namespace tgin {

struct PipelineConfig {
  uint32_t window = 3;
  uint32_t max_order = 2;
  uint32_t triangles_per_item = 10;
  double theta = 0.5;
  uint32_t neighbor_cap = 200;
  uint32_t bloom_bits_per_edge = 10;
  uint32_t bloom_hashes = 7;
  uint64_t seed = 1;
  unsigned workers = 0;  // 0 = hardware concurrency

  void Validate() const;
  unsigned EffectiveWorkers() const;
  MinerOptions miner() const { return {max_order, neighbor_cap}; }
  MembershipOptions membership() const { return {bloom_bits_per_edge, bloom_hashes}; }
  GraphBuildOptions graph_build() const { return {window, membership(), EffectiveWorkers()}; }
};

struct IndexBuildSummary {
  size_t entries = 0;
  size_t padded_entries = 0;
  size_t padded_rows = 0;
  std::vector<std::string> padded_items;           // items with any padded entry
  std::vector<std::string> missing_feature_items;  // zero features substituted
};

// For every graph node and every order 0..max_order: extract, score, attach
// features, select, and record exactly triangles_per_item rows.
TriangleIndex BuildTriangleIndex(const CooccurrenceGraph& g, const ItemCatalog& catalog,
                                 const PipelineConfig& config,
                                 IndexBuildSummary* summary = nullptr);

}  // namespace tgin

#endif  // TGIN_CORE_PIPELINE_HPP_
