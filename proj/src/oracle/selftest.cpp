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
#include <algorithm>
#include <cmath>
#include <string>

#include "core/dpp.hpp"
#include "core/rng.hpp"
#include "core/synthetic.hpp"
#include "oracle/oracles.hpp"

namespace tgin::oracle {
namespace {

SelftestCheck TrianglesMatchBruteForce(uint64_t seed) {
  SelftestCheck check{"triangles-vs-brute-force", true, ""};
  const MinerOptions options{2, 0};
  size_t compared = 0;
  for (uint64_t graph = 0; graph < 5 && check.passed; ++graph) {
    const auto g = synthetic::RandomGraph(120, 0.06, DeriveSeed(seed, graph));
    TriangleMiner miner(g, options);
    TriangleMiner::Workspace ws;
    for (NodeId center = 0; center < g.node_count() && check.passed; center += 12) {
      miner.Explore(center, ws);
      for (uint32_t k = 0; k <= 2; ++k) {
        std::vector<NodeTriple> got;
        for (const auto& t : miner.Extract(ws, k).triangles) got.push_back(t.nodes);
        if (got != BruteForceTriangles(g, center, k, 2)) {
          check.passed = false;
          check.detail = "graph " + std::to_string(graph) + " center " + g.name(center) +
                         " order " + std::to_string(k);
          break;
        }
        compared += got.size();
      }
    }
  }
  if (check.passed) check.detail = std::to_string(compared) + " triangles compared";
  return check;
}

SelftestCheck NeighborhoodsMatchRelaxation(uint64_t seed) {
  SelftestCheck check{"neighborhood-vs-relaxation", true, ""};
  const auto g = synthetic::RandomGraph(300, 0.01, DeriveSeed(seed, 100));
  for (NodeId v = 0; v < g.node_count() && check.passed; v += 7) {
    const auto got = NeighborsWithin(g, v, 3);
    const auto dist = RelaxedDistances(g, v);
    std::map<NodeId, uint32_t> want;
    for (NodeId u = 0; u < g.node_count(); ++u) {
      if (u != v && dist[u] != kUnreachable && dist[u] <= 3) want[u] = dist[u];
    }
    if (got != want) {
      check.passed = false;
      check.detail = "mismatch at " + g.name(v);
    }
  }
  return check;
}

SelftestCheck GreedyMatchesDenseDeterminant(uint64_t seed) {
  SelftestCheck check{"greedy-vs-dense-determinant", true, ""};
  for (uint64_t trial = 0; trial < 30 && check.passed; ++trial) {
    Rng rng(DeriveSeed(seed, 200 + trial));
    const size_t n = 2 + rng.Below(11);
    const size_t dim = 1 + rng.Below(8);
    std::vector<Triangle> tris(n);
    for (auto& t : tris) {
      t.relevance = rng.Uniform();
      t.feature.resize(dim);
      for (double& x : t.feature) x = rng.Normal();
    }
    const auto kernel = BuildKernel(tris, 0.1 + 0.8 * rng.Uniform());
    const auto l = kernel.Dense();
    DenseMatrix dense(n, std::vector<double>(n));
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) {
        dense[i][j] = l(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      }
    }
    const auto result = GreedyMap(kernel, 1 + rng.Below(4));
    std::vector<size_t> prefix;
    for (size_t s = 0; s < result.selected.size(); ++s) {
      const auto step = DenseGreedyStep(dense, prefix);
      const double got = step.gains[result.selected[s]];
      const double scale = std::max(1.0, std::abs(step.best_gain));
      if (std::abs(got - step.best_gain) > 1e-9 * scale ||
          std::abs(result.gains[s] - step.best_gain) > 1e-9 * scale) {
        check.passed = false;
        check.detail = "trial " + std::to_string(trial) + " step " + std::to_string(s);
        break;
      }
      prefix.push_back(result.selected[s]);
    }
  }
  return check;
}

std::vector<SelftestCheck> BloomMembership(uint64_t seed) {
  const auto g = synthetic::RandomGraph(2000, 0.01, DeriveSeed(seed, 300));
  SelftestCheck replay{"bloom-zero-false-negatives", true, ""};
  for (const auto& e : g.SortedEdges()) {
    if (!g.membership_filter().MayContain(EdgeKey(e.a, e.b)) || !g.HasEdge(e.b, e.a)) {
      replay.passed = false;
      replay.detail = "lost edge " + g.name(e.a) + "-" + g.name(e.b);
      break;
    }
  }
  if (replay.passed) replay.detail = std::to_string(g.edge_count()) + " edges replayed";

  Rng rng(DeriveSeed(seed, 301));
  size_t absent = 0, positives = 0;
  while (absent < 100000) {
    const auto a = static_cast<NodeId>(rng.Below(g.node_count()));
    const auto b = static_cast<NodeId>(rng.Below(g.node_count()));
    if (a == b || g.HasEdge(a, b)) continue;
    ++absent;
    positives += g.membership_filter().MayContain(EdgeKey(a, b)) ? 1 : 0;
  }
  const double rate = static_cast<double>(positives) / static_cast<double>(absent);
  SelftestCheck fp{"bloom-false-positive-rate", rate <= 0.02,
                   "measured " + std::to_string(rate) + " on 100000 absent pairs"};
  return {replay, fp};
}

}  // namespace

std::vector<SelftestCheck> RunSelftest(uint64_t seed) {
  std::vector<SelftestCheck> checks;
  checks.push_back(TrianglesMatchBruteForce(seed));
  checks.push_back(NeighborhoodsMatchRelaxation(seed));
  checks.push_back(GreedyMatchesDenseDeterminant(seed));
  for (auto& c : BloomMembership(seed)) checks.push_back(std::move(c));
  return checks;
}

}  // namespace tgin::oracle
