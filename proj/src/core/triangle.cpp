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
#include "core/triangle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/error.hpp"

namespace tgin {
namespace {

void FinishScore(Triangle& t, double edge_weight_sum, double outer_numerator,
                 double distance_sum) {
  if (distance_sum <= 0.0) {
    Fail(ErrorCode::kInternal, "triangle distance sum is zero");
  }
  t.inner_weight = edge_weight_sum / 3.0;
  t.outer_weight = outer_numerator / distance_sum;
  t.relevance = std::sqrt(t.inner_weight * t.outer_weight);
}

NodeTriple Sorted(NodeTriple nodes) {
  std::sort(nodes.begin(), nodes.end());
  return nodes;
}

}  // namespace

TriangleMiner::TriangleMiner(const CooccurrenceGraph& g, const MinerOptions& options)
    : graph_(g), options_(options) {
  const uint32_t cap = options.neighbor_cap;
  if (cap == 0) return;
  bool needed = false;
  for (NodeId v = 0; v < g.node_count() && !needed; ++v) needed = g.degree(v) > cap;
  if (!needed) return;

  capped_offsets_.assign(g.node_count() + 1, 0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    capped_offsets_[v + 1] = capped_offsets_[v] + std::min<size_t>(g.degree(v), cap);
  }
  capped_.resize(capped_offsets_.back());
  std::vector<Neighbor> scratch;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto all = g.neighbors(v);
    auto out = capped_.begin() + static_cast<std::ptrdiff_t>(capped_offsets_[v]);
    if (all.size() <= cap) {
      std::copy(all.begin(), all.end(), out);
      continue;
    }
    scratch.assign(all.begin(), all.end());
    std::partial_sort(scratch.begin(), scratch.begin() + cap, scratch.end(),
                      [](const Neighbor& x, const Neighbor& y) {
                        return x.weight != y.weight ? x.weight > y.weight : x.node < y.node;
                      });
    std::sort(scratch.begin(), scratch.begin() + cap,
              [](const Neighbor& x, const Neighbor& y) { return x.node < y.node; });
    std::copy(scratch.begin(), scratch.begin() + cap, out);
  }
}

std::span<const Neighbor> TriangleMiner::Neighbors(NodeId v) const {
  if (capped_offsets_.empty()) return graph_.neighbors(v);
  return {capped_.data() + capped_offsets_[v], capped_.data() + capped_offsets_[v + 1]};
}

void TriangleMiner::Explore(NodeId center, Workspace& ws) const {
  if (center >= graph_.node_count()) Fail(ErrorCode::kUnknownItem, "center node out of range");
  const uint32_t max_order = options_.max_order;
  if (ws.dist_.size() != graph_.node_count()) {
    ws.dist_.assign(graph_.node_count(), kUnreached);
    ws.center_weight_.assign(graph_.node_count(), 0);
    ws.layers_.clear();
    ws.initialized_ = false;
  }
  if (ws.initialized_) {
    for (const auto& layer : ws.layers_) {
      for (NodeId v : layer) ws.dist_[v] = kUnreached;
    }
    for (const auto& nb : graph_.neighbors(ws.center_)) ws.center_weight_[nb.node] = 0;
  }
  ws.initialized_ = true;
  ws.center_ = center;
  ws.layers_.resize(max_order + 1);
  for (auto& layer : ws.layers_) layer.clear();

  ws.dist_[center] = 0;
  ws.layers_[0].push_back(center);
  for (uint32_t d = 0; d < max_order; ++d) {
    auto& next = ws.layers_[d + 1];
    for (NodeId u : ws.layers_[d]) {
      for (const auto& nb : Neighbors(u)) {
        if (ws.dist_[nb.node] != kUnreached) continue;
        ws.dist_[nb.node] = d + 1;
        next.push_back(nb.node);
      }
    }
    std::sort(next.begin(), next.end());
  }
  for (const auto& nb : graph_.neighbors(center)) ws.center_weight_[nb.node] = nb.weight;
}

TriangleSet TriangleMiner::Extract(const Workspace& ws, uint32_t order) const {
  const uint32_t max_order = options_.max_order;
  if (order > max_order) {
    Fail(ErrorCode::kInvalidParameter, "triangle order " + std::to_string(order) +
                                           " exceeds neighborhood radius " +
                                           std::to_string(max_order));
  }
  if (!ws.initialized_) Fail(ErrorCode::kInternal, "Extract before Explore");
  TriangleSet set;
  set.center = ws.center_;
  set.order = order;

  // Each triangle is generated once, from its smallest node at distance
  // exactly order; the other two nodes sit at distance order or order + 1.
  // Candidate pairs are closed by scanning full-graph neighbor lists against
  // a slot table, which avoids a hash probe per pair.
  auto& candidates = ws.candidates_;
  auto& slot = ws.slot_;
  if (slot.size() != graph_.node_count()) slot.assign(graph_.node_count(), 0);
  for (NodeId u : ws.layers_[order]) {
    candidates.clear();
    for (const auto& nb : Neighbors(u)) {
      const uint32_t d = ws.dist_[nb.node];
      if (d == kUnreached || d > max_order || d < order) continue;
      if (d == order && nb.node <= u) continue;
      candidates.push_back(nb);
      slot[nb.node] = static_cast<uint32_t>(candidates.size());
    }
    const double du = order;
    const double cu = ws.center_weight_[u];
    for (size_t i = 0; i < candidates.size(); ++i) {
      const Neighbor& v = candidates[i];
      for (const auto& nb : graph_.neighbors(v.node)) {
        const uint32_t s = slot[nb.node];
        if (s <= i + 1) continue;
        const Neighbor& w = candidates[s - 1];
        Triangle t;
        t.nodes = Sorted({u, v.node, w.node});
        t.order = order;
        FinishScore(t, static_cast<double>(v.weight) + w.weight + nb.weight,
                    cu + ws.center_weight_[v.node] + ws.center_weight_[w.node],
                    du + ws.dist_[v.node] + ws.dist_[w.node]);
        set.triangles.push_back(std::move(t));
      }
    }
    for (const auto& c : candidates) slot[c.node] = 0;
  }
  std::sort(set.triangles.begin(), set.triangles.end(),
            [](const Triangle& x, const Triangle& y) { return x.nodes < y.nodes; });
  return set;
}

TriangleSet ExtractTriangles(const CooccurrenceGraph& g, NodeId center, uint32_t order,
                             const MinerOptions& options) {
  if (center >= g.node_count()) Fail(ErrorCode::kUnknownItem, "center node out of range");
  if (order > options.max_order) {
    Fail(ErrorCode::kInvalidParameter, "triangle order exceeds neighborhood radius");
  }
  TriangleMiner miner(g, options);
  TriangleMiner::Workspace ws;
  miner.Explore(center, ws);
  return miner.Extract(ws, order);
}

Triangle ScoreTriangle(const CooccurrenceGraph& g, const NodeTriple& nodes, NodeId center,
                       const std::map<NodeId, uint32_t>& distances) {
  Triangle t;
  t.nodes = Sorted(nodes);
  if (t.nodes[0] == t.nodes[1] || t.nodes[1] == t.nodes[2]) {
    Fail(ErrorCode::kInvalidInput, "triangle nodes must be distinct");
  }
  const uint32_t ab = g.Weight(t.nodes[0], t.nodes[1]);
  const uint32_t ac = g.Weight(t.nodes[0], t.nodes[2]);
  const uint32_t bc = g.Weight(t.nodes[1], t.nodes[2]);
  if (ab == 0 || ac == 0 || bc == 0) {
    Fail(ErrorCode::kInvalidInput, "triple is not pairwise connected");
  }
  double outer_numerator = 0.0;
  double distance_sum = 0.0;
  uint32_t min_dist = TriangleMiner::kUnreached;
  for (NodeId v : t.nodes) {
    uint32_t d = 0;
    if (v != center) {
      const auto it = distances.find(v);
      if (it == distances.end()) {
        Fail(ErrorCode::kInvalidInput, "distance map misses a triangle node");
      }
      d = it->second;
      outer_numerator += g.Weight(v, center);
    }
    distance_sum += d;
    min_dist = std::min(min_dist, d);
  }
  t.order = min_dist;
  FinishScore(t, static_cast<double>(ab) + ac + bc, outer_numerator, distance_sum);
  return t;
}

TriangleFeatureResult TriangleFeature(std::span<const double> a, std::span<const double> b,
                                      std::span<const double> c) {
  if (a.size() != b.size() || a.size() != c.size()) {
    Fail(ErrorCode::kInvalidInput, "feature dimensions differ");
  }
  TriangleFeatureResult result;
  result.feature.resize(a.size());
  double norm2 = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double m = (a[i] + b[i] + c[i]) / 3.0;
    result.feature[i] = m;
    norm2 += m * m;
  }
  const double norm = std::sqrt(norm2);
  if (norm < kMinFeatureNorm) {
    result.zero_norm = true;
    return result;
  }
  for (double& x : result.feature) x /= norm;
  return result;
}

TriangleFeatureResult TriangleFeature(const ItemCatalog& catalog,
                                      const std::array<std::string_view, 3>& items) {
  std::array<std::span<const double>, 3> f;
  for (size_t i = 0; i < 3; ++i) {
    const auto row = catalog.Find(items[i]);
    if (!row || !catalog.has_features(*row)) {
      Fail(ErrorCode::kUnknownItem, "no features for item '" + std::string(items[i]) + "'");
    }
    f[i] = catalog.features(*row);
  }
  return TriangleFeature(f[0], f[1], f[2]);
}

NodeCatalog::NodeCatalog(const CooccurrenceGraph& g, const ItemCatalog& catalog)
    : catalog_(catalog), rows_(g.node_count(), -1), zeros_(catalog.feature_dim(), 0.0) {
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto row = catalog.Find(g.name(v));
    if (row) rows_[v] = static_cast<int64_t>(*row);
    if (!has_features(v)) missing_.push_back(v);
  }
}

std::span<const double> NodeCatalog::Features(NodeId v) const {
  if (!has_features(v)) return zeros_;
  return catalog_.features(static_cast<size_t>(rows_[v]));
}

void AttachFeatures(std::span<Triangle> triangles, const NodeCatalog& nodes) {
  for (auto& t : triangles) {
    auto result = TriangleFeature(nodes.Features(t.nodes[0]), nodes.Features(t.nodes[1]),
                                  nodes.Features(t.nodes[2]));
    t.feature = std::move(result.feature);
    t.zero_feature = result.zero_norm;
  }
}

bool SharesAttribute(const NodeCatalog& nodes, std::span<const NodeId> group, size_t attr) {
  if (group.empty()) return false;
  const int32_t first = nodes.Value(group[0], attr);
  if (first == ItemCatalog::kNull) return false;
  for (size_t i = 1; i < group.size(); ++i) {
    if (nodes.Value(group[i], attr) != first) return false;
  }
  return true;
}

bool SharesAnyAttribute(const NodeCatalog& nodes, std::span<const NodeId> group) {
  const size_t attrs = nodes.catalog().attribute_names().size();
  for (size_t a = 0; a < attrs; ++a) {
    if (SharesAttribute(nodes, group, a)) return true;
  }
  return false;
}

}  // namespace tgin
