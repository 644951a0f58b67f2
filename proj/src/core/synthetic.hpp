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
#ifndef TGIN_CORE_SYNTHETIC_HPP_
#define TGIN_CORE_SYNTHETIC_HPP_

#include <cstdint>
#include <string>

#include "core/catalog.hpp"
#include "core/graph.hpp"

namespace tgin::synthetic {

// Zero-padded so lexicographic order matches numeric order.
std::string NodeName(std::string_view prefix, size_t index, size_t width);

// Erdos-Renyi G(n, p) with weights uniform in [1, max_weight]; nodes
// "v0000"...
CooccurrenceGraph RandomGraph(size_t n, double p, uint64_t seed, uint32_t max_weight = 5,
                              const MembershipOptions& membership = {});

// Click log with a cluster hierarchy: items form clusters, clusters form
// groups. A user picks one group and a few interest clusters in it, then
// browses with sticky sessions and Zipf-like popularity inside a cluster.
// Each user's final event is marked as test.
struct ClusteredLogOptions {
  size_t items = 10000;
  size_t events = 1000000;
  size_t cluster_size = 20;
  size_t clusters_per_group = 10;
  size_t mean_sequence_length = 50;
  size_t max_interests = 3;
  double stay_probability = 0.85;
  size_t feature_dim = 16;
  uint64_t seed = 1;
};

struct SyntheticLog {
  BehaviorLog log;
  ItemCatalog catalog;
};

SyntheticLog ClusteredLog(const ClusteredLogOptions& options);

struct SyntheticGraph {
  CooccurrenceGraph graph;
  ItemCatalog catalog;
};

// Items grouped by category with edges only inside a category. brand, store
// and keyword are drawn at random from small pools, so they agree across a
// triple only by chance.
struct PlantedClusterOptions {
  size_t clusters = 20;
  size_t cluster_size = 15;
  double intra_probability = 0.5;
  size_t brands = 8;
  size_t stores = 8;
  size_t keywords = 8;
  uint64_t seed = 1;
};

SyntheticGraph PlantedClusterGraph(const PlantedClusterOptions& options);

// One hub item linked to several keyword clusters (each a clique). The hub
// edges into cluster 0 are heavy and into the others light, so relevance
// concentrates on one cluster while features separate the clusters.
struct DiversityFixtureOptions {
  size_t clusters = 6;
  size_t cluster_size = 6;
  uint32_t heavy_weight = 40;
  uint32_t light_weight = 2;
  uint32_t intra_weight = 5;
  size_t feature_dim = 16;
  double noise = 0.1;
  uint64_t seed = 1;
};

SyntheticGraph ClusteredDiversityFixture(const DiversityFixtureOptions& options);

}  // namespace tgin::synthetic

#endif  // TGIN_CORE_SYNTHETIC_HPP_
