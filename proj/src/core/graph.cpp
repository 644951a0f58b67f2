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
#include "core/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <ostream>
#include <thread>

#include "core/error.hpp"
#include "core/file_util.hpp"

namespace tgin {
namespace {

std::string LineContext(std::string_view source, uint64_t line) {
  return std::string(source) + ":" + std::to_string(line) + ": ";
}

using WeightMap = absl::flat_hash_map<uint64_t, uint32_t>;

}  // namespace

BehaviorLog ParseBehaviorLog(std::string_view text, std::string_view source) {
  BehaviorLog log;
  LineCursor cursor(text);
  std::string_view line;
  bool terminated = true;
  while (cursor.Next(&line, &terminated)) {
    if (line.empty()) continue;
    const auto fields = SplitFields(line, '\t');
    const std::string where = LineContext(source, cursor.line_number);
    if (fields.size() != 4) {
      Fail(ErrorCode::kParse, where + "expected 4 tab-separated fields, got " +
                                  std::to_string(fields.size()));
    }
    if (fields[0].empty() || fields[1].empty()) {
      Fail(ErrorCode::kParse, where + "empty user or item id");
    }
    const auto ts = ParseInt(fields[2]);
    if (!ts) Fail(ErrorCode::kParse, where + "bad timestamp '" + std::string(fields[2]) + "'");
    bool train;
    if (fields[3] == "train") {
      train = true;
    } else if (fields[3] == "test") {
      train = false;
    } else {
      Fail(ErrorCode::kParse, where + "split must be train or test");
    }
    log.records.push_back({std::string(fields[0]), std::string(fields[1]), *ts, train});
  }
  return log;
}

BehaviorLog ReadBehaviorLog(const std::filesystem::path& path) {
  return ParseBehaviorLog(ReadFileContents(path), path.string());
}

void WriteBehaviorLog(const BehaviorLog& log, std::ostream& out) {
  for (const auto& r : log.records) {
    out << r.user_id << '\t' << r.item_id << '\t' << r.timestamp << '\t'
        << (r.train ? "train" : "test") << '\n';
  }
}

CooccurrenceGraph CooccurrenceGraph::Build(std::vector<std::string> names,
                                           std::span<const WeightedEdge> edges,
                                           uint32_t window,
                                           const MembershipOptions& membership) {
  const size_t n = names.size();
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](NodeId x, NodeId y) { return names[x] < names[y]; });
  std::vector<NodeId> relabel(n);
  for (size_t i = 0; i < n; ++i) relabel[order[i]] = static_cast<NodeId>(i);

  CooccurrenceGraph g;
  g.window_ = window;
  g.names_.reserve(n);
  for (NodeId old : order) g.names_.push_back(std::move(names[old]));
  for (size_t i = 1; i < n; ++i) {
    if (g.names_[i] == g.names_[i - 1]) {
      Fail(ErrorCode::kInvalidInput, "duplicate node name '" + g.names_[i] + "'");
    }
  }

  g.weights_.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.a >= n || e.b >= n) Fail(ErrorCode::kInvalidInput, "edge endpoint out of range");
    if (e.a == e.b) Fail(ErrorCode::kInvalidInput, "self-loop on '" + g.names_[relabel[e.a]] + "'");
    if (e.weight == 0) Fail(ErrorCode::kInvalidInput, "edge weight must be >= 1");
    g.weights_[EdgeKey(relabel[e.a], relabel[e.b])] += e.weight;
    g.total_weight_ += e.weight;
  }

  std::vector<uint64_t> degree(n + 1, 0);
  for (const auto& [key, w] : g.weights_) {
    ++degree[key >> 32];
    ++degree[key & 0xffffffffu];
  }
  g.offsets_.assign(n + 1, 0);
  for (size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];
  g.adjacency_.resize(g.offsets_[n]);
  std::vector<uint64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [key, w] : g.weights_) {
    const auto a = static_cast<NodeId>(key >> 32);
    const auto b = static_cast<NodeId>(key & 0xffffffffu);
    g.adjacency_[cursor[a]++] = {b, w};
    g.adjacency_[cursor[b]++] = {a, w};
  }
  for (size_t v = 0; v < n; ++v) {
    std::sort(g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
              g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]),
              [](const Neighbor& x, const Neighbor& y) { return x.node < y.node; });
  }

  if (membership.bloom_bits_per_edge > 0) {
    g.bloom_ = BloomFilter(g.weights_.size(), membership.bloom_bits_per_edge,
                           membership.bloom_hashes);
    for (const auto& [key, w] : g.weights_) g.bloom_.Insert(key);
  }
  return g;
}

std::optional<NodeId> CooccurrenceGraph::Find(std::string_view name) const {
  const auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) return std::nullopt;
  return static_cast<NodeId>(it - names_.begin());
}

bool CooccurrenceGraph::HasEdge(NodeId a, NodeId b) const {
  if (a == b) return false;
  const uint64_t key = EdgeKey(a, b);
  if (!bloom_.empty() && !bloom_.MayContain(key)) return false;
  return weights_.contains(key);
}

bool CooccurrenceGraph::HasEdge(std::string_view a, std::string_view b) const {
  const auto ia = Find(a);
  const auto ib = Find(b);
  return ia && ib && HasEdge(*ia, *ib);
}

uint32_t CooccurrenceGraph::Weight(NodeId a, NodeId b) const {
  if (a == b) return 0;
  const uint64_t key = EdgeKey(a, b);
  if (!bloom_.empty() && !bloom_.MayContain(key)) return 0;
  const auto it = weights_.find(key);
  return it == weights_.end() ? 0 : it->second;
}

std::vector<WeightedEdge> CooccurrenceGraph::SortedEdges() const {
  std::vector<WeightedEdge> edges;
  edges.reserve(weights_.size());
  for (NodeId a = 0; a < names_.size(); ++a) {
    for (const auto& nb : neighbors(a)) {
      if (nb.node > a) edges.push_back({a, nb.node, nb.weight});
    }
  }
  return edges;
}

CooccurrenceGraph BuildGraph(const BehaviorLog& log, const GraphBuildOptions& options) {
  if (options.window < 2) {
    Fail(ErrorCode::kInvalidParameter, "window must be >= 2, got " +
                                           std::to_string(options.window));
  }
  if (log.records.empty()) Fail(ErrorCode::kInvalidInput, "empty behavior log");

  absl::flat_hash_map<std::string_view, NodeId> item_ids;
  absl::flat_hash_map<std::string_view, uint32_t> user_ids;
  std::vector<std::string> item_names;
  struct Event {
    int64_t timestamp;
    uint64_t seq;
    NodeId item;
  };
  std::vector<std::vector<Event>> sequences;
  uint64_t seq = 0;
  for (const auto& r : log.records) {
    ++seq;
    if (!r.train) continue;
    auto [iit, new_item] = item_ids.try_emplace(r.item_id, static_cast<NodeId>(item_names.size()));
    if (new_item) item_names.push_back(r.item_id);
    auto [uit, new_user] = user_ids.try_emplace(r.user_id, static_cast<uint32_t>(sequences.size()));
    if (new_user) sequences.emplace_back();
    sequences[uit->second].push_back({r.timestamp, seq, iit->second});
  }
  if (item_names.empty()) Fail(ErrorCode::kInvalidInput, "no training records");

  const size_t workers = std::max<size_t>(1, std::min<size_t>(options.workers, sequences.size()));
  std::vector<WeightMap> partial(workers);
  auto count_range = [&](size_t worker) {
    WeightMap& local = partial[worker];
    for (size_t u = worker; u < sequences.size(); u += workers) {
      auto& events = sequences[u];
      std::sort(events.begin(), events.end(), [](const Event& x, const Event& y) {
        return x.timestamp != y.timestamp ? x.timestamp < y.timestamp : x.seq < y.seq;
      });
      for (size_t i = 0; i < events.size(); ++i) {
        const size_t end = std::min(events.size(), i + options.window);
        for (size_t j = i + 1; j < end; ++j) {
          if (events[i].item != events[j].item) {
            ++local[EdgeKey(events[i].item, events[j].item)];
          }
        }
      }
    }
  };
  if (workers == 1) {
    count_range(0);
  } else {
    std::vector<std::jthread> threads;
    for (size_t w = 0; w < workers; ++w) threads.emplace_back(count_range, w);
  }
  for (size_t w = 1; w < workers; ++w) {
    for (const auto& [key, count] : partial[w]) partial[0][key] += count;
    WeightMap().swap(partial[w]);
  }

  std::vector<WeightedEdge> edges;
  edges.reserve(partial[0].size());
  for (const auto& [key, count] : partial[0]) {
    edges.push_back({static_cast<NodeId>(key >> 32), static_cast<NodeId>(key & 0xffffffffu), count});
  }
  WeightMap().swap(partial[0]);
  return CooccurrenceGraph::Build(std::move(item_names), edges, options.window,
                                  options.membership);
}

std::map<NodeId, uint32_t> NeighborsWithin(const CooccurrenceGraph& g, NodeId v,
                                           uint32_t max_hops) {
  if (v >= g.node_count()) Fail(ErrorCode::kUnknownItem, "node id out of range");
  if (max_hops < 1) Fail(ErrorCode::kInvalidParameter, "neighborhood radius must be >= 1");
  std::map<NodeId, uint32_t> dist;
  std::deque<NodeId> frontier{v};
  std::vector<uint8_t> seen(g.node_count(), 0);
  seen[v] = 1;
  std::vector<uint32_t> hops(g.node_count(), 0);
  while (!frontier.empty()) {
    const NodeId u = frontier.front();
    frontier.pop_front();
    if (hops[u] == max_hops) continue;
    for (const auto& nb : g.neighbors(u)) {
      if (seen[nb.node]) continue;
      seen[nb.node] = 1;
      hops[nb.node] = hops[u] + 1;
      dist.emplace(nb.node, hops[nb.node]);
      frontier.push_back(nb.node);
    }
  }
  return dist;
}

std::map<NodeId, uint32_t> NeighborsWithin(const CooccurrenceGraph& g,
                                           std::string_view v, uint32_t max_hops) {
  const auto id = g.Find(v);
  if (!id) Fail(ErrorCode::kUnknownItem, "unknown item '" + std::string(v) + "'");
  return NeighborsWithin(g, *id, max_hops);
}

void WriteGraph(const CooccurrenceGraph& g, std::ostream& out) {
  out << "#nodes " << g.node_count() << " #edges " << g.edge_count() << " window "
      << g.window() << '\n';
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (g.degree(v) == 0) out << "#isolated\t" << g.name(v) << '\n';
  }
  for (const auto& e : g.SortedEdges()) {
    out << g.name(e.a) << '\t' << g.name(e.b) << '\t' << e.weight << '\n';
  }
}

uint64_t WriteGraphFile(const CooccurrenceGraph& g, const std::filesystem::path& path) {
  return WriteFileAtomically(path, [&](std::ostream& out) { WriteGraph(g, out); });
}

CooccurrenceGraph ParseGraph(std::string_view text, std::string_view source,
                             const MembershipOptions& membership) {
  LineCursor cursor(text);
  std::string_view line;
  bool terminated = true;
  if (!cursor.Next(&line, &terminated)) {
    Fail(ErrorCode::kParse, std::string(source) + ": empty graph file");
  }
  const auto header = SplitFields(line, ' ');
  if (header.size() != 6 || header[0] != "#nodes" || header[2] != "#edges" ||
      header[4] != "window") {
    Fail(ErrorCode::kParse, LineContext(source, 1) + "bad graph header");
  }
  const auto nodes = ParseInt(header[1]);
  const auto edge_total = ParseInt(header[3]);
  const auto window = ParseInt(header[5]);
  if (!nodes || !edge_total || !window || *nodes < 0 || *edge_total < 0 || *window < 0) {
    Fail(ErrorCode::kParse, LineContext(source, 1) + "bad graph header counts");
  }

  std::vector<std::string> names;
  absl::flat_hash_map<std::string, NodeId> ids;
  auto intern = [&](std::string_view name) {
    auto [it, added] = ids.try_emplace(std::string(name), static_cast<NodeId>(names.size()));
    if (added) names.emplace_back(name);
    return it->second;
  };
  std::vector<WeightedEdge> edges;
  std::string prev_a, prev_b;
  while (cursor.Next(&line, &terminated)) {
    const std::string where = LineContext(source, cursor.line_number);
    if (!terminated) Fail(ErrorCode::kParse, where + "truncated line");
    const auto fields = SplitFields(line, '\t');
    if (fields.size() == 2 && fields[0] == "#isolated") {
      if (fields[1].empty()) Fail(ErrorCode::kParse, where + "empty item id");
      if (ids.contains(std::string(fields[1]))) {
        Fail(ErrorCode::kParse, where + "duplicate node '" + std::string(fields[1]) + "'");
      }
      intern(fields[1]);
      continue;
    }
    if (fields.size() != 3 || fields[0].empty() || fields[1].empty()) {
      Fail(ErrorCode::kParse, where + "expected item_a<TAB>item_b<TAB>weight");
    }
    if (!(fields[0] < fields[1])) {
      Fail(ErrorCode::kParse, where + "edge endpoints must satisfy item_a < item_b");
    }
    if (!edges.empty() && !(std::pair<std::string_view, std::string_view>(prev_a, prev_b) <
                            std::pair(fields[0], fields[1]))) {
      Fail(ErrorCode::kParse, where + "edge lines must be sorted and unique");
    }
    const auto w = ParseInt(fields[2]);
    if (!w || *w < 1 || *w > UINT32_MAX) Fail(ErrorCode::kParse, where + "bad edge weight");
    prev_a = fields[0];
    prev_b = fields[1];
    edges.push_back({intern(fields[0]), intern(fields[1]), static_cast<uint32_t>(*w)});
  }
  if (names.size() != static_cast<size_t>(*nodes) ||
      edges.size() != static_cast<size_t>(*edge_total)) {
    Fail(ErrorCode::kIntegrity, std::string(source) + ": header declares " +
                                    std::to_string(*nodes) + " nodes / " +
                                    std::to_string(*edge_total) + " edges, file has " +
                                    std::to_string(names.size()) + " / " +
                                    std::to_string(edges.size()));
  }
  return CooccurrenceGraph::Build(std::move(names), edges, static_cast<uint32_t>(*window),
                                  membership);
}

CooccurrenceGraph ReadGraphFile(const std::filesystem::path& path,
                                const MembershipOptions& membership) {
  return ParseGraph(ReadFileContents(path), path.string(), membership);
}

}  // namespace tgin
