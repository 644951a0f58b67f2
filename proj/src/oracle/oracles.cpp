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
#include "oracle/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tgin::oracle {

std::vector<uint32_t> RelaxedDistances(const CooccurrenceGraph& g, NodeId source) {
  const auto edges = g.SortedEdges();
  std::vector<uint32_t> dist(g.node_count(), kUnreachable);
  dist[source] = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& e : edges) {
      if (dist[e.a] != kUnreachable && dist[e.a] + 1 < dist[e.b]) {
        dist[e.b] = dist[e.a] + 1;
        changed = true;
      }
      if (dist[e.b] != kUnreachable && dist[e.b] + 1 < dist[e.a]) {
        dist[e.a] = dist[e.b] + 1;
        changed = true;
      }
    }
  }
  return dist;
}

std::vector<NodeTriple> BruteForceTriangles(const CooccurrenceGraph& g, NodeId center,
                                            uint32_t order, uint32_t max_order) {
  const size_t n = g.node_count();
  std::vector<std::vector<uint8_t>> adjacent(n, std::vector<uint8_t>(n, 0));
  for (const auto& e : g.SortedEdges()) adjacent[e.a][e.b] = adjacent[e.b][e.a] = 1;
  const auto dist = RelaxedDistances(g, center);
  auto inside = [&](NodeId v) { return dist[v] != kUnreachable && dist[v] <= max_order; };

  std::vector<NodeTriple> out;
  for (NodeId a = 0; a < n; ++a) {
    if (!inside(a)) continue;
    for (NodeId b = a + 1; b < n; ++b) {
      if (!inside(b) || !adjacent[a][b]) continue;
      for (NodeId c = b + 1; c < n; ++c) {
        if (!inside(c) || !adjacent[a][c] || !adjacent[b][c]) continue;
        if (std::min({dist[a], dist[b], dist[c]}) == order) out.push_back({a, b, c});
      }
    }
  }
  return out;
}

double DenseLogDet(const DenseMatrix& m) {
  DenseMatrix a = m;
  const size_t n = a.size();
  double log_abs = 0.0;
  int sign = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    for (size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (a[pivot][col] == 0.0) return -std::numeric_limits<double>::infinity();
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      sign = -sign;
    }
    const double p = a[col][col];
    if (p < 0) sign = -sign;
    log_abs += std::log(std::abs(p));
    for (size_t r = col + 1; r < n; ++r) {
      const double factor = a[r][col] / p;
      for (size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
    }
  }
  return sign > 0 ? log_abs : -std::numeric_limits<double>::infinity();
}

DenseMatrix Principal(const DenseMatrix& m, const std::vector<size_t>& subset) {
  DenseMatrix out(subset.size(), std::vector<double>(subset.size()));
  for (size_t i = 0; i < subset.size(); ++i) {
    for (size_t j = 0; j < subset.size(); ++j) out[i][j] = m[subset[i]][subset[j]];
  }
  return out;
}

GreedyStepOracle DenseGreedyStep(const DenseMatrix& kernel, const std::vector<size_t>& chosen) {
  GreedyStepOracle step;
  const double base = DenseLogDet(Principal(kernel, chosen));
  step.gains.assign(kernel.size(), -std::numeric_limits<double>::infinity());
  step.best_gain = -std::numeric_limits<double>::infinity();
  bool found = false;
  for (size_t j = 0; j < kernel.size(); ++j) {
    if (std::find(chosen.begin(), chosen.end(), j) != chosen.end()) continue;
    std::vector<size_t> extended = chosen;
    extended.push_back(j);
    const double gain = DenseLogDet(Principal(kernel, extended)) - base;
    step.gains[j] = gain;
    if (!found || gain > step.best_gain) {
      step.best_gain = gain;
      step.argmax = j;
      found = true;
    }
  }
  return step;
}

}  // namespace tgin::oracle
