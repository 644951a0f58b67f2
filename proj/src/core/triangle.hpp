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
#ifndef TGIN_CORE_TRIANGLE_HPP_
#define TGIN_CORE_TRIANGLE_HPP_

#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "core/catalog.hpp"
#include "core/graph.hpp"

namespace tgin {

using NodeTriple = std::array<NodeId, 3>;

struct Triangle {
  NodeTriple nodes{};  // ascending; a pseudo-triangle repeats the center
  uint32_t order = 0;
  double inner_weight = 0.0;
  double outer_weight = 0.0;
  double relevance = 0.0;  // sqrt(inner_weight * outer_weight)
  std::vector<double> feature;
  bool zero_feature = false;
  bool pseudo = false;
};

struct TriangleSet {
  NodeId center = 0;
  uint32_t order = 0;
  std::vector<Triangle> triangles;  // sorted by nodes, no duplicates
};

struct MinerOptions {
  uint32_t max_order = 2;       // neighborhood radius K
  uint32_t neighbor_cap = 200;  // top-weight neighbors kept per node, 0 = all
};

// Enumerates k-order triangles around a center. A triangle belongs to order
// k when all three nodes lie within max_order hops of the center and the
// smallest of their distances is k; order 0 triangles contain the center.
//
// With a neighbor cap, both the breadth-first search and candidate pairs use
// each node's top-weight neighbor list; pair closure is still checked
// against the full graph.
class TriangleMiner {
 public:
  static constexpr uint32_t kUnreached = std::numeric_limits<uint32_t>::max();

  // Scratch state for one thread; reusable across centers.
  class Workspace {
   public:
    NodeId center() const { return center_; }
    uint32_t Distance(NodeId v) const { return dist_[v]; }
    // Weight of the full-graph edge (v, center), 0 if absent.
    uint32_t CenterWeight(NodeId v) const { return center_weight_[v]; }
    // Nodes at exactly d hops, ascending.
    const std::vector<NodeId>& Layer(uint32_t d) const { return layers_[d]; }

   private:
    friend class TriangleMiner;
    NodeId center_ = 0;
    std::vector<uint32_t> dist_;
    std::vector<uint32_t> center_weight_;
    std::vector<std::vector<NodeId>> layers_;
    mutable std::vector<Neighbor> candidates_;
    mutable std::vector<uint32_t> slot_;  // candidate index + 1, 0 = none
    bool initialized_ = false;
  };

  TriangleMiner(const CooccurrenceGraph& g, const MinerOptions& options);

  const CooccurrenceGraph& graph() const { return graph_; }
  const MinerOptions& options() const { return options_; }
  std::span<const Neighbor> Neighbors(NodeId v) const;

  // Breadth-first search to max_order hops.
  void Explore(NodeId center, Workspace& ws) const;

  // Scored triangles of the given order; Explore must have run for the same
  // center. Features are left empty.
  TriangleSet Extract(const Workspace& ws, uint32_t order) const;

 private:
  const CooccurrenceGraph& graph_;
  MinerOptions options_;
  std::vector<uint64_t> capped_offsets_;
  std::vector<Neighbor> capped_;
};

// One-shot extraction for a single center and order.
TriangleSet ExtractTriangles(const CooccurrenceGraph& g, NodeId center, uint32_t order,
                             const MinerOptions& options);

// Inner weight is the mean of the three edge weights. Outer weight is the sum
// of edge weights from each node to the center (0 for the center itself or a
// missing edge) divided by the sum of their hop distances.
// distances must include every node of the triple; the center may be absent
// and is taken as distance 0.
Triangle ScoreTriangle(const CooccurrenceGraph& g, const NodeTriple& nodes, NodeId center,
                       const std::map<NodeId, uint32_t>& distances);

// Averaged features with a smaller norm are treated as zero.
inline constexpr double kMinFeatureNorm = 1e-12;

struct TriangleFeatureResult {
  std::vector<double> feature;
  bool zero_norm = false;
};

// Mean of the three item feature vectors, L2-normalized. A (near) zero mean
// is returned unnormalized with zero_norm set.
TriangleFeatureResult TriangleFeature(std::span<const double> a, std::span<const double> b,
                                      std::span<const double> c);
TriangleFeatureResult TriangleFeature(const ItemCatalog& catalog,
                                      const std::array<std::string_view, 3>& items);

// Graph nodes resolved against a catalog once. Nodes missing from the
// catalog (or without features) read as zero features and null attributes.
class NodeCatalog {
 public:
  NodeCatalog(const CooccurrenceGraph& g, const ItemCatalog& catalog);

  const ItemCatalog& catalog() const { return catalog_; }
  size_t feature_dim() const { return catalog_.feature_dim(); }
  std::optional<size_t> Row(NodeId v) const {
    return rows_[v] < 0 ? std::nullopt : std::optional<size_t>(static_cast<size_t>(rows_[v]));
  }
  bool has_features(NodeId v) const { return rows_[v] >= 0 && catalog_.has_features(static_cast<size_t>(rows_[v])); }
  std::span<const double> Features(NodeId v) const;
  int32_t Value(NodeId v, size_t attr) const {
    return rows_[v] < 0 ? ItemCatalog::kNull : catalog_.Value(static_cast<size_t>(rows_[v]), attr);
  }
  // Nodes without catalog features, ascending.
  const std::vector<NodeId>& missing_features() const { return missing_; }

 private:
  const ItemCatalog& catalog_;
  std::vector<int64_t> rows_;
  std::vector<NodeId> missing_;
  std::vector<double> zeros_;
};

void AttachFeatures(std::span<Triangle> triangles, const NodeCatalog& nodes);

// True when all given nodes carry the same non-null value for some attribute.
bool SharesAnyAttribute(const NodeCatalog& nodes, std::span<const NodeId> group);
bool SharesAttribute(const NodeCatalog& nodes, std::span<const NodeId> group, size_t attr);

}  // namespace tgin

#endif  // TGIN_CORE_TRIANGLE_HPP_
