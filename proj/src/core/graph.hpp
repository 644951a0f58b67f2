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
#ifndef TGIN_CORE_GRAPH_HPP_
#define TGIN_CORE_GRAPH_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "core/bloom_filter.hpp"

namespace tgin {

using NodeId = uint32_t;

// Packs an unordered node pair into one key, smaller id in the high word.
inline uint64_t EdgeKey(NodeId a, NodeId b) {
  if (a > b) std::swap(a, b);
  return (uint64_t{a} << 32) | b;
}

struct BehaviorRecord {
  std::string user_id;
  std::string item_id;
  int64_t timestamp = 0;
  bool train = true;
};

struct BehaviorLog {
  std::vector<BehaviorRecord> records;
};

// Tab-separated: user_id, item_id, timestamp, split in {train,test}.
BehaviorLog ParseBehaviorLog(std::string_view text, std::string_view source);
BehaviorLog ReadBehaviorLog(const std::filesystem::path& path);
void WriteBehaviorLog(const BehaviorLog& log, std::ostream& out);

struct Neighbor {
  NodeId node;
  uint32_t weight;
};

struct WeightedEdge {
  NodeId a;
  NodeId b;
  uint32_t weight;
};

// bloom_bits_per_edge == 0 disables the prefilter.
struct MembershipOptions {
  uint32_t bloom_bits_per_edge = 10;
  uint32_t bloom_hashes = 7;
};

struct GraphBuildOptions {
  uint32_t window = 3;
  MembershipOptions membership;
  unsigned workers = 1;
};

// Immutable weighted undirected item graph. Node ids follow the
// lexicographic order of item names, so ascending ids are the canonical
// ordering everywhere.
class CooccurrenceGraph {
 public:
  CooccurrenceGraph() = default;

  // Edges index into names; duplicate pairs are summed. Self-loops and zero
  // weights are rejected. names need not be sorted but must be unique.
  static CooccurrenceGraph Build(std::vector<std::string> names,
                                 std::span<const WeightedEdge> edges,
                                 uint32_t window,
                                 const MembershipOptions& membership = {});

  size_t node_count() const { return names_.size(); }
  size_t edge_count() const { return weights_.size(); }
  uint32_t window() const { return window_; }
  uint64_t total_weight() const { return total_weight_; }

  const std::string& name(NodeId v) const { return names_[v]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<NodeId> Find(std::string_view name) const;

  // Sorted by neighbor id.
  std::span<const Neighbor> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

  // The Bloom prefilter is consulted first; a negative answer skips the
  // hash lookup.
  bool HasEdge(NodeId a, NodeId b) const;
  bool HasEdge(std::string_view a, std::string_view b) const;
  // 0 when the pair is not an edge.
  uint32_t Weight(NodeId a, NodeId b) const;

  const BloomFilter& membership_filter() const { return bloom_; }
  bool has_membership_filter() const { return !bloom_.empty(); }

  // All edges with a < b, sorted by (a, b).
  std::vector<WeightedEdge> SortedEdges() const;

 private:
  std::vector<std::string> names_;
  std::vector<uint64_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
  absl::flat_hash_map<uint64_t, uint32_t> weights_;
  BloomFilter bloom_;
  uint32_t window_ = 0;
  uint64_t total_weight_ = 0;
};

// Sliding-window co-occurrence counting over training records. Each index
// pair (i, j) with 0 < j - i < window in a user's time-ordered sequence adds
// one to the weight of the item pair, unless both indices hold the same item.
CooccurrenceGraph BuildGraph(const BehaviorLog& log, const GraphBuildOptions& options);

// Unweighted shortest-path distances 1..max_hops from v; v itself is omitted.
std::map<NodeId, uint32_t> NeighborsWithin(const CooccurrenceGraph& g, NodeId v,
                                           uint32_t max_hops);
std::map<NodeId, uint32_t> NeighborsWithin(const CooccurrenceGraph& g,
                                           std::string_view v, uint32_t max_hops);

// Header "#nodes N #edges M window W", then "#isolated\titem" for nodes
// without edges, then "a\tb\tweight" lines with a < b, all sorted.
void WriteGraph(const CooccurrenceGraph& g, std::ostream& out);
uint64_t WriteGraphFile(const CooccurrenceGraph& g, const std::filesystem::path& path);
CooccurrenceGraph ParseGraph(std::string_view text, std::string_view source,
                             const MembershipOptions& membership = {});
CooccurrenceGraph ReadGraphFile(const std::filesystem::path& path,
                                const MembershipOptions& membership = {});

}  // namespace tgin

#endif  // TGIN_CORE_GRAPH_HPP_
