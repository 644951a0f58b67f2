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
#include "core/analytics.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <set>
#include <thread>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace tgin {
namespace {

std::vector<NodeId> SampleNodes(size_t node_count, size_t sample, uint64_t seed) {
  std::vector<NodeId> nodes(node_count);
  std::iota(nodes.begin(), nodes.end(), 0);
  if (sample == 0 || sample >= node_count) return nodes;
  Rng rng(seed);
  for (size_t i = 0; i < sample; ++i) {
    const size_t j = i + rng.Below(node_count - i);
    std::swap(nodes[i], nodes[j]);
  }
  nodes.resize(sample);
  std::sort(nodes.begin(), nodes.end());
  return nodes;
}

std::string FormatRate(const std::optional<double>& value) {
  if (!value) return "NA";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", *value);
  return buf;
}

std::vector<uint32_t> AllOrders(uint32_t max_order) {
  std::vector<uint32_t> orders(max_order + 1);
  std::iota(orders.begin(), orders.end(), 0u);
  return orders;
}

}  // namespace

HomophilyReport HomophilyStats(const CooccurrenceGraph& g, const ItemCatalog& catalog,
                               const HomophilyOptions& options) {
  const NodeCatalog nodes(g, catalog);
  const size_t attrs = catalog.attribute_names().size();
  HomophilyReport report;
  if (g.node_count() == 0) Fail(ErrorCode::kInvalidInput, "graph has no nodes");

  const auto sampled = SampleNodes(g.node_count(), options.item_sample_size, options.seed);
  report.items_sampled = sampled.size();
  TriangleMiner miner(g, options.miner);
  TriangleMiner::Workspace ws;
  uint64_t any = 0;
  std::vector<uint64_t> per_attr(attrs, 0);
  std::vector<NodeTriple> pool;
  for (NodeId center : sampled) {
    miner.Explore(center, ws);
    pool.clear();
    for (uint32_t k = 0; k <= options.miner.max_order; ++k) {
      for (const auto& t : miner.Extract(ws, k).triangles) pool.push_back(t.nodes);
    }
    const size_t take = std::min(pool.size(), options.triangles_per_item);
    Rng rng(DeriveSeed(options.seed, center));
    for (size_t i = 0; i < take; ++i) {
      std::swap(pool[i], pool[i + rng.Below(pool.size() - i)]);
      const NodeTriple& tri = pool[i];
      bool shared = false;
      for (size_t a = 0; a < attrs; ++a) {
        if (SharesAttribute(nodes, tri, a)) {
          ++per_attr[a];
          shared = true;
        }
      }
      any += shared ? 1 : 0;
      ++report.sample_size;
    }
  }
  for (size_t a = 0; a < attrs; ++a) {
    std::optional<double> rate;
    if (report.sample_size > 0) rate = static_cast<double>(per_attr[a]) / report.sample_size;
    report.per_attribute.emplace_back(catalog.attribute_names()[a], rate);
  }
  if (report.sample_size > 0) {
    report.share_rate = static_cast<double>(any) / report.sample_size;
  }

  if (g.node_count() >= 3 && options.baseline_triples > 0) {
    uint64_t shared = 0;
    for (uint64_t trial = 0; trial < options.baseline_triples; ++trial) {
      StreamRng rng(DeriveSeed(options.seed ^ 0x5bd1e995u, trial));
      NodeTriple tri;
      size_t got = 0;
      while (got < 3) {
        const auto v = static_cast<NodeId>(rng.Below(g.node_count()));
        if (std::find(tri.begin(), tri.begin() + got, v) == tri.begin() + got) tri[got++] = v;
      }
      shared += SharesAnyAttribute(nodes, tri) ? 1 : 0;
    }
    report.baseline_size = options.baseline_triples;
    report.baseline_share_rate = static_cast<double>(shared) / options.baseline_triples;
  }
  return report;
}

CliqueEstimate CliqueProbability(const CooccurrenceGraph& g, const ItemCatalog* catalog,
                                 uint32_t k, const CliqueOptions& options) {
  if (k < 2 || k > 5) Fail(ErrorCode::kInvalidParameter, "clique size must be in 2..5");
  if (options.trials < 1) Fail(ErrorCode::kInvalidParameter, "trials must be >= 1");
  std::vector<NodeId> universe =
      SampleNodes(g.node_count(), options.node_sample_cap, DeriveSeed(options.seed, 0xcafe));
  if (universe.size() < k) {
    Fail(ErrorCode::kInvalidInput, "graph has fewer than " + std::to_string(k) + " nodes");
  }
  std::optional<NodeCatalog> nodes;
  if (catalog != nullptr) nodes.emplace(g, *catalog);

  const size_t workers = std::max<size_t>(1, std::min<uint64_t>(options.workers, options.trials));
  std::vector<uint64_t> cliques(workers, 0), homophilous(workers, 0);
  auto run = [&](size_t w) {
    std::array<NodeId, 5> picked;
    for (uint64_t trial = w; trial < options.trials; trial += workers) {
      StreamRng rng(DeriveSeed(options.seed, trial));
      size_t got = 0;
      while (got < k) {
        const NodeId v = universe[rng.Below(universe.size())];
        if (std::find(picked.begin(), picked.begin() + got, v) == picked.begin() + got) {
          picked[got++] = v;
        }
      }
      bool clique = true;
      for (size_t a = 0; a < k && clique; ++a) {
        for (size_t b = a + 1; b < k && clique; ++b) clique = g.HasEdge(picked[a], picked[b]);
      }
      if (!clique) continue;
      ++cliques[w];
      if (nodes && SharesAnyAttribute(*nodes, std::span<const NodeId>(picked.data(), k))) {
        ++homophilous[w];
      }
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> threads;
    for (size_t w = 0; w < workers; ++w) threads.emplace_back(run, w);
  }

  CliqueEstimate est;
  est.k = k;
  est.trials = options.trials;
  est.cliques = std::accumulate(cliques.begin(), cliques.end(), uint64_t{0});
  est.probability = static_cast<double>(est.cliques) / static_cast<double>(options.trials);
  if (nodes && est.cliques > 0) {
    est.homophily = static_cast<double>(std::accumulate(homophilous.begin(), homophilous.end(),
                                                        uint64_t{0})) /
                    static_cast<double>(est.cliques);
  }
  return est;
}

std::vector<CliqueEstimate> CliqueReport(const CooccurrenceGraph& g,
                                         const ItemCatalog* catalog,
                                         const CliqueOptions& options) {
  const size_t universe = options.node_sample_cap == 0
                              ? g.node_count()
                              : std::min<size_t>(g.node_count(), options.node_sample_cap);
  if (universe < 2) Fail(ErrorCode::kInvalidInput, "graph has fewer than 2 nodes");
  std::vector<CliqueEstimate> report;
  for (uint32_t k = 2; k <= 5 && k <= universe; ++k) {
    report.push_back(CliqueProbability(g, catalog, k, options));
  }
  return report;
}

size_t DiversityMetric(std::span<const std::string> items, const ItemCatalog& catalog,
                       std::string_view attribute) {
  const auto attr = catalog.AttributeIndex(attribute);
  if (!attr) {
    Fail(ErrorCode::kInvalidParameter, "unknown attribute '" + std::string(attribute) + "'");
  }
  std::set<int32_t> values;
  for (const auto& item : items) {
    const auto row = catalog.Find(item);
    if (!row) continue;
    const int32_t v = catalog.Value(*row, *attr);
    if (v != ItemCatalog::kNull) values.insert(v);
  }
  return values.size();
}

std::vector<NodeId> FlattenItems(std::span<const Triangle> triangles, NodeId center,
                                 size_t budget) {
  std::vector<NodeId> items;
  for (const auto& t : triangles) {
    if (t.pseudo) continue;
    for (NodeId v : t.nodes) {
      if (items.size() >= budget) return items;
      if (v == center || std::find(items.begin(), items.end(), v) != items.end()) continue;
      items.push_back(v);
    }
  }
  return items;
}

DiversityReport CompareDiversity(const CooccurrenceGraph& g, const ItemCatalog& catalog,
                                 const DiversityOptions& options) {
  const auto attr = catalog.AttributeIndex(options.attribute);
  if (!attr) {
    Fail(ErrorCode::kInvalidParameter, "unknown attribute '" + options.attribute + "'");
  }
  if (options.item_budget < 1) Fail(ErrorCode::kInvalidParameter, "item budget must be >= 1");
  const std::vector<uint32_t> orders =
      options.orders.empty() ? AllOrders(options.miner.max_order) : options.orders;
  for (uint32_t k : orders) {
    if (k > options.miner.max_order) {
      Fail(ErrorCode::kInvalidParameter, "order exceeds neighborhood radius");
    }
  }
  const NodeCatalog nodes(g, catalog);
  TriangleMiner miner(g, options.miner);
  TriangleMiner::Workspace ws;
  SelectionOptions selection = options.selection;
  selection.count = options.item_budget;

  auto distinct = [&](std::span<const NodeId> items) {
    std::set<int32_t> values;
    for (NodeId v : items) {
      const int32_t code = nodes.Value(v, *attr);
      if (code != ItemCatalog::kNull) values.insert(code);
    }
    return values.size();
  };

  DiversityReport report;
  report.attribute = options.attribute;
  for (NodeId center : SampleNodes(g.node_count(), options.sample_items, options.seed)) {
    miner.Explore(center, ws);
    for (uint32_t k : orders) {
      TriangleSet set = miner.Extract(ws, k);
      if (set.triangles.empty()) continue;
      AttachFeatures(set.triangles, nodes);
      std::vector<Triangle> dpp;
      for (auto& row : SelectTriangles(set.triangles, center, k, selection)) {
        dpp.push_back(std::move(row.triangle));
      }
      const auto sampled = WeightSample(set.triangles, options.item_budget,
                                        DeriveSeed(options.seed, uint64_t{center} * 64 + k));
      auto dpp_items = FlattenItems(dpp, center, options.item_budget);
      auto weight_items = FlattenItems(sampled, center, options.item_budget);
      const size_t budget = std::min(dpp_items.size(), weight_items.size());
      if (budget == 0) continue;
      dpp_items.resize(budget);
      weight_items.resize(budget);
      DiversityRow row{g.name(center), k, budget, distinct(dpp_items), distinct(weight_items)};
      if (row.dpp_distinct > row.weight_distinct) {
        ++report.dpp_wins;
      } else if (row.dpp_distinct == row.weight_distinct) {
        ++report.ties;
      } else {
        ++report.weight_wins;
      }
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

void WriteHomophilyReport(const HomophilyReport& report, std::ostream& out) {
  out << "# items_sampled=" << report.items_sampled << " triangles=" << report.sample_size
      << " baseline_triples=" << report.baseline_size << '\n';
  out << "attribute\tfraction\n";
  out << "any\t" << FormatRate(report.share_rate) << '\n';
  for (const auto& [name, rate] : report.per_attribute) {
    out << name << '\t' << FormatRate(rate) << '\n';
  }
  out << "random_triple_any\t" << FormatRate(report.baseline_share_rate) << '\n';
}

void WriteCliqueReport(std::span<const CliqueEstimate> report, std::ostream& out) {
  out << "clique\toccurrence_probability\thomophily\ttrials\tcliques\n";
  for (const auto& e : report) {
    out << e.k << "-clique\t" << FormatRate(e.probability) << '\t' << FormatRate(e.homophily)
        << '\t' << e.trials << '\t' << e.cliques << '\n';
  }
}

void WriteDiversityReport(const DiversityReport& report, std::ostream& out) {
  out << "# attribute=" << report.attribute << " dpp_wins=" << report.dpp_wins
      << " ties=" << report.ties << " weight_wins=" << report.weight_wins << '\n';
  out << "item\torder\tbudget\tdpp_distinct\tweight_distinct\n";
  for (const auto& r : report.rows) {
    out << r.item << '\t' << r.order << '\t' << r.budget << '\t' << r.dpp_distinct << '\t'
        << r.weight_distinct << '\n';
  }
}

}  // namespace tgin
