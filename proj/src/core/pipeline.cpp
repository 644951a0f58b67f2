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

#include <algorithm>
#include <atomic>
#include <thread>

#include "core/dpp.hpp"
#include "core/error.hpp"
#include "core/log.hpp"

namespace tgin {

void PipelineConfig::Validate() const {
  if (window < 2) Fail(ErrorCode::kInvalidParameter, "window must be >= 2");
  if (!(theta > 0.0 && theta < 1.0)) Fail(ErrorCode::kInvalidParameter, "theta must lie in (0, 1)");
  if (triangles_per_item < 1) Fail(ErrorCode::kInvalidParameter, "n must be >= 1");
  if (bloom_bits_per_edge > 0 && bloom_hashes < 1) {
    Fail(ErrorCode::kInvalidParameter, "bloom filter needs at least one hash");
  }
}

unsigned PipelineConfig::EffectiveWorkers() const {
  if (workers > 0) return workers;
  return std::max(1u, std::thread::hardware_concurrency());
}

TriangleIndex BuildTriangleIndex(const CooccurrenceGraph& g, const ItemCatalog& catalog,
                                 const PipelineConfig& config, IndexBuildSummary* summary) {
  config.Validate();
  const NodeCatalog nodes(g, catalog);
  const TriangleMiner miner(g, config.miner());
  const SelectionOptions selection{config.theta, config.triangles_per_item};
  const uint32_t orders = config.max_order + 1;
  const size_t n = g.node_count();

  if (!nodes.missing_features().empty()) {
    Log("build-index: " + std::to_string(nodes.missing_features().size()) +
        " items lack catalog features; using zero features");
  }

  std::vector<std::vector<std::vector<IndexRow>>> results(n);
  std::atomic<size_t> next{0};
  std::atomic<size_t> done{0};
  auto work = [&]() {
    TriangleMiner::Workspace ws;
    for (size_t v = next++; v < n; v = next++) {
      const auto center = static_cast<NodeId>(v);
      miner.Explore(center, ws);
      auto& entries = results[v];
      entries.resize(orders);
      for (uint32_t k = 0; k < orders; ++k) {
        TriangleSet set = miner.Extract(ws, k);
        const FeatureMatrix features = TriangleFeatureMatrix(set.triangles, nodes);
        for (const auto& sel : SelectTriangles(set.triangles, features, center, k, selection)) {
          const auto& t = sel.triangle;
          entries[k].push_back({g.name(t.nodes[0]), g.name(t.nodes[1]), g.name(t.nodes[2]),
                                static_cast<float>(t.relevance), sel.rank, sel.padded});
        }
      }
      const size_t finished = ++done;
      if (n >= 20 && finished % (n / 10) == 0) {
        Log("build-index: " + std::to_string(finished) + "/" + std::to_string(n) + " items");
      }
    }
  };
  const unsigned workers = std::min<size_t>(config.EffectiveWorkers(), std::max<size_t>(n, 1));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work);
  }

  TriangleIndex index;
  index.n = config.triangles_per_item;
  for (uint32_t k = 0; k < orders; ++k) index.orders.push_back(k);
  IndexBuildSummary local;
  for (size_t v = 0; v < n; ++v) {
    bool item_padded = false;
    for (uint32_t k = 0; k < orders; ++k) {
      auto& rows = results[v][k];
      const auto padded = static_cast<size_t>(
          std::count_if(rows.begin(), rows.end(), [](const IndexRow& r) { return r.padded; }));
      local.padded_rows += padded;
      local.padded_entries += padded > 0 ? 1 : 0;
      item_padded |= padded > 0;
      index.entries.emplace_hint(index.entries.end(),
                                 TriangleIndex::Key{g.name(static_cast<NodeId>(v)), k},
                                 std::move(rows));
    }
    if (item_padded) local.padded_items.push_back(g.name(static_cast<NodeId>(v)));
  }
  local.entries = index.entries.size();
  for (NodeId v : nodes.missing_features()) local.missing_feature_items.push_back(g.name(v));
  Log("build-index: " + std::to_string(local.entries) + " entries, " +
      std::to_string(local.padded_entries) + " with padding (" +
      std::to_string(local.padded_items.size()) + " items)");
  if (summary != nullptr) *summary = std::move(local);
  return index;
}

}  // namespace tgin
