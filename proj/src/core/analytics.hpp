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
#ifndef TGIN_CORE_ANALYTICS_HPP_
#define TGIN_CORE_ANALYTICS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "core/catalog.hpp"
#include "core/dpp.hpp"
#include "core/graph.hpp"
#include "core/triangle.hpp"

namespace tgin {

struct HomophilyOptions {
  size_t item_sample_size = 1000;
  size_t triangles_per_item = 10;
  size_t baseline_triples = 10000;  // random node triples for the baseline rate
  MinerOptions miner;
  uint64_t seed = 1;
};

struct HomophilyReport {
  uint64_t items_sampled = 0;
  uint64_t sample_size = 0;  // triangles examined
  std::optional<double> share_rate;
  // Sorted by attribute name.
  std::vector<std::pair<std::string, std::optional<double>>> per_attribute;
  uint64_t baseline_size = 0;
  std::optional<double> baseline_share_rate;
};

// Samples items uniformly, pools their triangles of orders 0..K (at most
// triangles_per_item each, drawn uniformly) and measures how often the three
// items share an attribute value. The baseline applies the same test to
// uniformly random node triples.
HomophilyReport HomophilyStats(const CooccurrenceGraph& g, const ItemCatalog& catalog,
                               const HomophilyOptions& options);

struct CliqueOptions {
  uint64_t trials = 1000000;
  uint64_t seed = 1;
  size_t node_sample_cap = 0;  // restrict sampling to this many nodes, 0 = all
  unsigned workers = 1;
};

struct CliqueEstimate {
  uint32_t k = 0;
  uint64_t trials = 0;
  uint64_t cliques = 0;
  double probability = 0.0;
  std::optional<double> homophily;  // among cliques; needs a catalog
};

// Monte Carlo estimate of the probability that k uniformly drawn distinct
// nodes are pairwise connected. Trial t draws its nodes from its own stream,
// and the k-subset is a prefix of the (k+1)-subset, so estimates never
// increase with k for a fixed seed.
CliqueEstimate CliqueProbability(const CooccurrenceGraph& g, const ItemCatalog* catalog,
                                 uint32_t k, const CliqueOptions& options);
// Sizes 2..5, skipping sizes larger than the sampled node set.
std::vector<CliqueEstimate> CliqueReport(const CooccurrenceGraph& g,
                                         const ItemCatalog* catalog,
                                         const CliqueOptions& options);

// Distinct non-null values of attribute over the items.
size_t DiversityMetric(std::span<const std::string> items, const ItemCatalog& catalog,
                       std::string_view attribute);

struct DiversityOptions {
  std::string attribute = "keyword";
  size_t item_budget = 10;
  size_t sample_items = 200;  // 0 = every node
  std::vector<uint32_t> orders;  // empty = 0..K
  SelectionOptions selection;
  MinerOptions miner;
  uint64_t seed = 1;
};

struct DiversityRow {
  std::string item;
  uint32_t order = 0;
  size_t budget = 0;  // items compared on both sides
  size_t dpp_distinct = 0;
  size_t weight_distinct = 0;
};

struct DiversityReport {
  std::string attribute;
  std::vector<DiversityRow> rows;
  size_t dpp_wins = 0;
  size_t ties = 0;
  size_t weight_wins = 0;
};

// Items reached by walking the triangles in order, skipping the center and
// repeats, stopping at budget.
std::vector<NodeId> FlattenItems(std::span<const Triangle> triangles, NodeId center,
                                 size_t budget);

// Per sampled (item, order): DPP selection against relevance-weighted
// sampling at an equal item budget.
DiversityReport CompareDiversity(const CooccurrenceGraph& g, const ItemCatalog& catalog,
                                 const DiversityOptions& options);

void WriteHomophilyReport(const HomophilyReport& report, std::ostream& out);
void WriteCliqueReport(std::span<const CliqueEstimate> report, std::ostream& out);
void WriteDiversityReport(const DiversityReport& report, std::ostream& out);

}  // namespace tgin

#endif  // TGIN_CORE_ANALYTICS_HPP_
