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
#ifndef TGIN_ORACLE_ORACLES_HPP_
#define TGIN_ORACLE_ORACLES_HPP_

// Reference computations that share no code path with the implementations
// they check: they read the graph only through its edge list and use dense
// linear algebra written from scratch.

#include <cstdint>
#include <string>
#include <vector>

#include "core/graph.hpp"
#include "core/triangle.hpp"

namespace tgin::oracle {

inline constexpr uint32_t kUnreachable = UINT32_MAX;

// Hop distances from source by repeated edge relaxation.
std::vector<uint32_t> RelaxedDistances(const CooccurrenceGraph& g, NodeId source);

// Every node triple within max_order hops of center, pairwise adjacent, with
// minimum distance equal to order. O(n^3).
std::vector<NodeTriple> BruteForceTriangles(const CooccurrenceGraph& g, NodeId center,
                                            uint32_t order, uint32_t max_order);

using DenseMatrix = std::vector<std::vector<double>>;

// log det by Gaussian elimination with partial pivoting; -infinity when the
// determinant is not positive.
double DenseLogDet(const DenseMatrix& m);

DenseMatrix Principal(const DenseMatrix& m, const std::vector<size_t>& subset);

struct GreedyStepOracle {
  size_t argmax = 0;  // lowest index among the best gains
  double best_gain = 0.0;
  std::vector<double> gains;  // per candidate; -infinity for chosen ones
};

// Gains log det(L_{S+j}) - log det(L_S) for every j not in S.
GreedyStepOracle DenseGreedyStep(const DenseMatrix& kernel, const std::vector<size_t>& chosen);

struct SelftestCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Oracle suites on generated fixtures: triangle enumeration, neighborhood
// distances, greedy MAP steps, Bloom membership.
std::vector<SelftestCheck> RunSelftest(uint64_t seed);

}  // namespace tgin::oracle

#endif  // TGIN_ORACLE_ORACLES_HPP_
