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
#include "core/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace tgin::synthetic {
namespace {

size_t Digits(size_t n) {
  size_t d = 1;
  while (n >= 10) {
    n /= 10;
    ++d;
  }
  return d;
}

std::vector<double> GaussianVector(Rng& rng, size_t dim, double scale) {
  std::vector<double> v(dim);
  for (double& x : v) x = scale * rng.Normal();
  return v;
}

std::string Format(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", x);
  return buf;
}

}  // namespace

std::string NodeName(std::string_view prefix, size_t index, size_t width) {
  std::string digits = std::to_string(index);
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return std::string(prefix) + digits;
}

CooccurrenceGraph RandomGraph(size_t n, double p, uint64_t seed, uint32_t max_weight,
                              const MembershipOptions& membership) {
  Rng rng(seed);
  const size_t width = Digits(n > 0 ? n - 1 : 0);
  std::vector<std::string> names;
  for (size_t i = 0; i < n; ++i) names.push_back(NodeName("v", i, width));
  std::vector<WeightedEdge> edges;
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) {
      if (rng.Bernoulli(p)) {
        edges.push_back({a, b, 1 + static_cast<uint32_t>(rng.Below(max_weight))});
      }
    }
  }
  return CooccurrenceGraph::Build(std::move(names), edges, 0, membership);
}

SyntheticLog ClusteredLog(const ClusteredLogOptions& o) {
  if (o.items == 0 || o.cluster_size == 0 || o.clusters_per_group == 0 ||
      o.mean_sequence_length < 2 || o.max_interests == 0) {
    Fail(ErrorCode::kInvalidParameter, "invalid synthetic log options");
  }
  Rng rng(o.seed);
  const size_t clusters = (o.items + o.cluster_size - 1) / o.cluster_size;
  const size_t groups = (clusters + o.clusters_per_group - 1) / o.clusters_per_group;
  const size_t width = Digits(o.items - 1);

  std::vector<std::string> item_names;
  std::vector<std::vector<double>> group_centroids, cluster_centroids;
  for (size_t g = 0; g < groups; ++g) group_centroids.push_back(GaussianVector(rng, o.feature_dim, 1.0));
  for (size_t c = 0; c < clusters; ++c) cluster_centroids.push_back(GaussianVector(rng, o.feature_dim, 0.7));

  std::vector<ItemCatalog::Record> records;
  for (size_t i = 0; i < o.items; ++i) {
    const size_t c = i / o.cluster_size;
    const size_t g = c / o.clusters_per_group;
    item_names.push_back(NodeName("i", i, width));
    ItemCatalog::Record r;
    r.item_id = item_names.back();
    r.attributes = {
        {"category", "cat" + std::to_string(c)},
        {"brand", "b" + std::to_string(c * 4 + rng.Below(4))},
        {"store", "s" + std::to_string(g * 8 + rng.Below(8))},
        {"keyword", "kw" + std::to_string(c * 2 + rng.Below(2))},
        {"price", Format(std::exp(3.0 + 0.8 * rng.Normal()))},
    };
    if (rng.Bernoulli(0.05)) r.attributes.back().second = std::nullopt;
    r.features = GaussianVector(rng, o.feature_dim, 0.3);
    for (size_t d = 0; d < o.feature_dim; ++d) {
      r.features[d] += group_centroids[g][d] + cluster_centroids[c][d];
    }
    records.push_back(std::move(r));
  }

  // Zipf-like popularity inside each cluster.
  std::vector<double> popularity(o.cluster_size);
  double total = 0.0;
  for (size_t r = 0; r < o.cluster_size; ++r) total += (popularity[r] = 1.0 / (1.0 + r));
  std::vector<double> cumulative(o.cluster_size);
  double acc = 0.0;
  for (size_t r = 0; r < o.cluster_size; ++r) cumulative[r] = (acc += popularity[r] / total);

  auto pick_item = [&](size_t cluster) -> size_t {
    const size_t first = cluster * o.cluster_size;
    const size_t size = std::min(o.cluster_size, o.items - first);
    size_t r;
    do {
      r = static_cast<size_t>(
          std::lower_bound(cumulative.begin(), cumulative.end(), rng.Uniform()) -
          cumulative.begin());
    } while (r >= size);
    return first + r;
  };

  SyntheticLog out;
  size_t user = 0;
  std::vector<size_t> interests;
  while (out.log.records.size() < o.events) {
    const size_t remaining = o.events - out.log.records.size();
    size_t length = 2 + rng.Below(2 * o.mean_sequence_length - 3);
    length = std::min(length, remaining);
    const size_t g = rng.Below(groups);
    const size_t first_cluster = g * o.clusters_per_group;
    const size_t group_clusters = std::min(o.clusters_per_group, clusters - first_cluster);
    const size_t wanted = std::min(group_clusters, 1 + rng.Below(o.max_interests));
    interests.clear();
    while (interests.size() < wanted) {
      const size_t c = first_cluster + rng.Below(group_clusters);
      if (std::find(interests.begin(), interests.end(), c) == interests.end()) interests.push_back(c);
    }
    const std::string user_id = "u" + std::to_string(user++);
    size_t current = interests[0];
    int64_t clock = 1600000000 + static_cast<int64_t>(rng.Below(86400));
    for (size_t step = 0; step < length; ++step) {
      if (step > 0 && !rng.Bernoulli(o.stay_probability)) {
        current = interests[rng.Below(interests.size())];
      }
      clock += 5 + static_cast<int64_t>(rng.Below(120));
      out.log.records.push_back({user_id, item_names[pick_item(current)], clock, step + 1 < length});
    }
  }
  out.catalog = ItemCatalog::FromRecords(std::move(records));
  return out;
}

SyntheticGraph PlantedClusterGraph(const PlantedClusterOptions& o) {
  Rng rng(o.seed);
  const size_t n = o.clusters * o.cluster_size;
  const size_t width = Digits(n > 0 ? n - 1 : 0);
  std::vector<std::string> names;
  std::vector<ItemCatalog::Record> records;
  for (size_t i = 0; i < n; ++i) {
    names.push_back(NodeName("p", i, width));
    ItemCatalog::Record r;
    r.item_id = names.back();
    r.attributes = {
        {"category", "cat" + std::to_string(i / o.cluster_size)},
        {"brand", "b" + std::to_string(rng.Below(o.brands))},
        {"store", "s" + std::to_string(rng.Below(o.stores))},
        {"keyword", "kw" + std::to_string(rng.Below(o.keywords))},
    };
    r.features = GaussianVector(rng, 8, 1.0);
    records.push_back(std::move(r));
  }
  std::vector<WeightedEdge> edges;
  for (size_t c = 0; c < o.clusters; ++c) {
    const auto base = static_cast<NodeId>(c * o.cluster_size);
    for (NodeId a = 0; a < o.cluster_size; ++a) {
      for (NodeId b = a + 1; b < o.cluster_size; ++b) {
        if (rng.Bernoulli(o.intra_probability)) {
          edges.push_back({base + a, base + b, 1 + static_cast<uint32_t>(rng.Below(5))});
        }
      }
    }
  }
  return {CooccurrenceGraph::Build(std::move(names), edges, 0),
          ItemCatalog::FromRecords(std::move(records))};
}

SyntheticGraph ClusteredDiversityFixture(const DiversityFixtureOptions& o) {
  Rng rng(o.seed);
  std::vector<std::string> names{"hub"};
  std::vector<ItemCatalog::Record> records;
  records.push_back({"hub", {{"category", "cat0"}, {"keyword", "kw_hub"}},
                     GaussianVector(rng, o.feature_dim, 1.0)});
  std::vector<WeightedEdge> edges;
  const size_t width = Digits(o.cluster_size > 0 ? o.cluster_size - 1 : 0);
  for (size_t c = 0; c < o.clusters; ++c) {
    std::vector<double> centroid = GaussianVector(rng, o.feature_dim, 1.0);
    double norm = 0.0;
    for (double x : centroid) norm += x * x;
    norm = std::sqrt(norm);
    for (double& x : centroid) x /= norm;
    const auto first = static_cast<NodeId>(names.size());
    for (size_t i = 0; i < o.cluster_size; ++i) {
      names.push_back("x" + std::to_string(c) + "_" + NodeName("", i, width));
      ItemCatalog::Record r;
      r.item_id = names.back();
      r.attributes = {{"category", "cat0"}, {"keyword", "kw" + std::to_string(c)}};
      r.features = GaussianVector(rng, o.feature_dim, o.noise / std::sqrt(o.feature_dim));
      for (size_t d = 0; d < o.feature_dim; ++d) r.features[d] += centroid[d];
      records.push_back(std::move(r));
      const auto v = static_cast<NodeId>(names.size() - 1);
      edges.push_back({0, v, c == 0 ? o.heavy_weight : o.light_weight});
      for (NodeId u = first; u < v; ++u) edges.push_back({u, v, o.intra_weight});
    }
  }
  return {CooccurrenceGraph::Build(std::move(names), edges, 0),
          ItemCatalog::FromRecords(std::move(records))};
}

}  // namespace tgin::synthetic
