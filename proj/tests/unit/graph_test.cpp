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

#include <deque>
#include <sstream>

#include "core/error.hpp"
#include "core/file_util.hpp"
#include "core/rng.hpp"
#include "core/synthetic.hpp"
#include "gtest/gtest.h"
#include "oracle/oracles.hpp"
#include "test_util.hpp"

namespace tgin {
namespace {

using testing::Id;
using testing::MakeGraph;

BehaviorLog Sequence(const std::string& user, const std::vector<std::string>& items,
                     int64_t t0 = 100) {
  BehaviorLog log;
  for (size_t i = 0; i < items.size(); ++i) {
    log.records.push_back({user, items[i], t0 + static_cast<int64_t>(i), true});
  }
  return log;
}

uint32_t W(const CooccurrenceGraph& g, std::string_view a, std::string_view b) {
  return g.Weight(Id(g, a), Id(g, b));
}

TEST(BuildGraphTest, FourItemSequenceWindowThree) {
  const auto g = BuildGraph(Sequence("u", {"A", "B", "C", "D"}), {.window = 3});
  EXPECT_EQ(g.node_count(), 4u);
  EXPECT_EQ(g.edge_count(), 5u);
  EXPECT_EQ(W(g, "A", "B"), 1u);
  EXPECT_EQ(W(g, "A", "C"), 1u);
  EXPECT_EQ(W(g, "B", "C"), 1u);
  EXPECT_EQ(W(g, "B", "D"), 1u);
  EXPECT_EQ(W(g, "C", "D"), 1u);
  EXPECT_FALSE(g.HasEdge("A", "D"));
}

TEST(BuildGraphTest, SingleItemHasNoEdges) {
  for (uint32_t window : {2u, 3u, 10u}) {
    const auto g = BuildGraph(Sequence("u", {"A"}), {.window = window});
    EXPECT_EQ(g.node_count(), 1u);
    EXPECT_EQ(g.edge_count(), 0u);
  }
}

TEST(BuildGraphTest, WeightsSumAcrossUsers) {
  BehaviorLog log = Sequence("u1", {"A", "B"});
  for (auto& r : Sequence("u2", {"A", "B"}).records) log.records.push_back(r);
  const auto g = BuildGraph(log, {.window = 3});
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(W(g, "A", "B"), 2u);
}

TEST(BuildGraphTest, SortsByTimestampKeepingInputOrderOnTies) {
  BehaviorLog log;
  log.records = {{"u", "C", 30, true}, {"u", "A", 10, true}, {"u", "B", 20, true},
                 {"u", "D", 30, true}};
  // Sequence A B C D.
  const auto g = BuildGraph(log, {.window = 2});
  EXPECT_EQ(g.edge_count(), 3u);
  EXPECT_TRUE(g.HasEdge("A", "B"));
  EXPECT_TRUE(g.HasEdge("B", "C"));
  EXPECT_TRUE(g.HasEdge("C", "D"));
}

TEST(BuildGraphTest, RepeatedItemSkipsSelfPairButCountsOthers) {
  const auto g = BuildGraph(Sequence("u", {"A", "A", "B"}), {.window = 3});
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(W(g, "A", "B"), 2u);
  EXPECT_FALSE(g.HasEdge("A", "A"));
}

TEST(BuildGraphTest, OnlyTrainingRecordsContribute) {
  BehaviorLog log = Sequence("u", {"A", "B", "C"});
  log.records[2].train = false;
  const auto g = BuildGraph(log, {.window = 3});
  EXPECT_FALSE(g.Find("C").has_value());
  EXPECT_EQ(g.edge_count(), 1u);
}

TEST(BuildGraphTest, Errors) {
  try {
    BuildGraph(Sequence("u", {"A", "B"}), {.window = 1});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidParameter);
  }
  try {
    BuildGraph(BehaviorLog{}, {.window = 3});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidInput);
  }
  BehaviorLog test_only = Sequence("u", {"A", "B"});
  for (auto& r : test_only.records) r.train = false;
  try {
    BuildGraph(test_only, {.window = 3});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidInput);
    EXPECT_NE(std::string(e.what()).find("no training records"), std::string::npos);
  }
}

// Total edge weight equals the number of in-window index pairs with distinct
// items, summed over users.
TEST(BuildGraphTest, WeightConservation) {
  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    BehaviorLog log;
    uint64_t expected = 0;
    const uint32_t window = 2 + static_cast<uint32_t>(rng.Below(4));
    for (int u = 0; u < 30; ++u) {
      std::vector<std::string> seq;
      const size_t len = 1 + rng.Below(15);
      for (size_t i = 0; i < len; ++i) seq.push_back("i" + std::to_string(rng.Below(12)));
      for (size_t i = 0; i < len; ++i) {
        for (size_t j = i + 1; j < len && j - i < window; ++j) expected += seq[i] != seq[j];
      }
      for (auto& r : Sequence("u" + std::to_string(u), seq).records) log.records.push_back(r);
    }
    const auto g = BuildGraph(log, {.window = window});
    EXPECT_EQ(g.total_weight(), expected);
    uint64_t sum = 0;
    for (const auto& e : g.SortedEdges()) sum += e.weight;
    EXPECT_EQ(sum, expected);
  }
}

TEST(BuildGraphTest, WorkerCountDoesNotChangeResult) {
  synthetic::ClusteredLogOptions opts;
  opts.items = 500;
  opts.events = 20000;
  const auto synth = synthetic::ClusteredLog(opts);
  std::ostringstream one, four;
  WriteGraph(BuildGraph(synth.log, {.window = 3, .workers = 1}), one);
  WriteGraph(BuildGraph(synth.log, {.window = 3, .workers = 4}), four);
  EXPECT_EQ(one.str(), four.str());
}

TEST(CooccurrenceGraphTest, HasEdgeIsSymmetric) {
  const auto g = synthetic::RandomGraph(150, 0.05, 5);
  for (NodeId a = 0; a < g.node_count(); ++a) {
    for (NodeId b = 0; b < g.node_count(); ++b) {
      ASSERT_EQ(g.HasEdge(a, b), g.HasEdge(b, a));
      ASSERT_EQ(g.Weight(a, b), g.Weight(b, a));
    }
  }
}

TEST(CooccurrenceGraphTest, HasEdgeExamples) {
  const auto g = MakeGraph({"A", "B", "C"}, {{"A", "B", 1}});
  EXPECT_TRUE(g.HasEdge("A", "B"));
  EXPECT_TRUE(g.HasEdge("B", "A"));
  EXPECT_FALSE(g.HasEdge("A", "C"));
  EXPECT_FALSE(g.HasEdge("A", "A"));
  EXPECT_FALSE(g.HasEdge("A", "missing"));
}

TEST(CooccurrenceGraphTest, AdjacencyMatchesEdges) {
  const auto g = synthetic::RandomGraph(100, 0.1, 9);
  size_t half_degree = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    NodeId prev = 0;
    bool first = true;
    for (const auto& nb : g.neighbors(v)) {
      EXPECT_TRUE(first || nb.node > prev);
      EXPECT_NE(nb.node, v);
      EXPECT_EQ(nb.weight, g.Weight(v, nb.node));
      EXPECT_GE(nb.weight, 1u);
      prev = nb.node;
      first = false;
    }
    half_degree += g.degree(v);
  }
  EXPECT_EQ(half_degree, 2 * g.edge_count());
}

TEST(CooccurrenceGraphTest, BuildRejectsBadEdges) {
  const std::vector<std::string> names = {"a", "b"};
  const std::vector<WeightedEdge> loop = {{0, 0, 1}};
  EXPECT_THROW(CooccurrenceGraph::Build(names, loop, 0), Error);
  const std::vector<WeightedEdge> zero = {{0, 1, 0}};
  EXPECT_THROW(CooccurrenceGraph::Build(names, zero, 0), Error);
  const std::vector<std::string> dup = {"a", "a"};
  EXPECT_THROW(CooccurrenceGraph::Build(dup, {}, 0), Error);
}

TEST(CooccurrenceGraphTest, MembershipReplayHasNoFalseNegatives) {
  const auto g = synthetic::RandomGraph(2000, 0.005, 21);
  ASSERT_TRUE(g.has_membership_filter());
  size_t replayed = 0;
  for (const auto& e : g.SortedEdges()) {
    ASSERT_TRUE(g.membership_filter().MayContain(EdgeKey(e.a, e.b)));
    ASSERT_TRUE(g.HasEdge(e.a, e.b));
    ++replayed;
  }
  EXPECT_GE(replayed, 9000u);
}

TEST(CooccurrenceGraphTest, FalsePositiveRateWithinTwiceDesign) {
  const auto g = synthetic::RandomGraph(2000, 0.005, 22);
  Rng rng(5);
  size_t absent = 0, hits = 0;
  while (absent < 100000) {
    const auto a = static_cast<NodeId>(rng.Below(g.node_count()));
    const auto b = static_cast<NodeId>(rng.Below(g.node_count()));
    if (a == b || g.HasEdge(a, b)) continue;
    ++absent;
    hits += g.membership_filter().MayContain(EdgeKey(a, b)) ? 1 : 0;
  }
  const double rate = static_cast<double>(hits) / static_cast<double>(absent);
  EXPECT_LE(rate, 2.0 * g.membership_filter().DesignFalsePositiveRate());
}

TEST(CooccurrenceGraphTest, DisabledFilterGivesIdenticalAnswers) {
  const auto with = synthetic::RandomGraph(200, 0.05, 8);
  const auto without = synthetic::RandomGraph(200, 0.05, 8, 5, {.bloom_bits_per_edge = 0});
  EXPECT_FALSE(without.has_membership_filter());
  for (NodeId a = 0; a < with.node_count(); ++a) {
    for (NodeId b = 0; b < with.node_count(); ++b) {
      ASSERT_EQ(with.HasEdge(a, b), without.HasEdge(a, b));
    }
  }
}

TEST(NeighborsWithinTest, PathGraph) {
  const auto g = MakeGraph({"A", "B", "C", "D"}, {{"A", "B", 1}, {"B", "C", 1}, {"C", "D", 1}});
  const auto n = NeighborsWithin(g, "A", 2);
  ASSERT_EQ(n.size(), 2u);
  EXPECT_EQ(n.at(Id(g, "B")), 1u);
  EXPECT_EQ(n.at(Id(g, "C")), 2u);
}

TEST(NeighborsWithinTest, IsolatedNode) {
  const auto g = MakeGraph({"A", "B", "v"}, {{"A", "B", 1}});
  EXPECT_TRUE(NeighborsWithin(g, "v", 3).empty());
}

TEST(NeighborsWithinTest, CompleteGraph) {
  const auto g = testing::CompleteGraph({"a", "b", "c", "d", "e"});
  for (NodeId v = 0; v < 5; ++v) {
    const auto n = NeighborsWithin(g, v, 1);
    EXPECT_EQ(n.size(), 4u);
    for (const auto& [node, d] : n) EXPECT_EQ(d, 1u);
  }
}

TEST(NeighborsWithinTest, Errors) {
  const auto g = MakeGraph({"A", "B"}, {{"A", "B", 1}});
  try {
    NeighborsWithin(g, "Z", 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownItem);
  }
  try {
    NeighborsWithin(g, "A", 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidParameter);
  }
}

// Textbook queue-based BFS, independent of the library's layering.
std::map<NodeId, uint32_t> NaiveBfs(const CooccurrenceGraph& g, NodeId s, uint32_t k) {
  std::map<NodeId, uint32_t> dist{{s, 0}};
  std::deque<NodeId> q{s};
  while (!q.empty()) {
    const NodeId u = q.front();
    q.pop_front();
    if (dist[u] == k) continue;
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (g.HasEdge(u, v) && !dist.count(v)) {
        dist[v] = dist[u] + 1;
        q.push_back(v);
      }
    }
  }
  dist.erase(s);
  return dist;
}

TEST(NeighborsWithinTest, AgreesWithNaiveSearchOnRandomGraphs) {
  for (uint64_t seed = 1; seed <= 6; ++seed) {
    const size_t n = 100 + 80 * (seed - 1);  // 100..500
    const auto g = synthetic::RandomGraph(n, 3.0 / static_cast<double>(n), seed);
    for (NodeId v = 0; v < g.node_count(); v += 37) {
      for (uint32_t k = 1; k <= 3; ++k) ASSERT_EQ(NeighborsWithin(g, v, k), NaiveBfs(g, v, k));
    }
  }
}

TEST(NeighborsWithinTest, AgreesWithRelaxationOracle) {
  const auto g = synthetic::RandomGraph(400, 0.008, 77);
  for (NodeId v = 0; v < g.node_count(); v += 13) {
    const auto dist = oracle::RelaxedDistances(g, v);
    const auto got = NeighborsWithin(g, v, 4);
    for (NodeId u = 0; u < g.node_count(); ++u) {
      const bool within = u != v && dist[u] != oracle::kUnreachable && dist[u] <= 4;
      ASSERT_EQ(got.count(u) == 1, within);
      if (within) EXPECT_EQ(got.at(u), dist[u]);
    }
  }
}

TEST(GraphFileTest, RoundTripIsByteIdentical) {
  const auto g = synthetic::RandomGraph(300, 0.03, 4);
  std::ostringstream a;
  WriteGraph(g, a);
  const auto back = ParseGraph(a.str(), "mem");
  std::ostringstream b;
  WriteGraph(back, b);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(back.edge_count(), g.edge_count());
}

TEST(GraphFileTest, FormatHeaderAndSortedLines) {
  const auto g = BuildGraph(Sequence("u", {"B", "A", "C", "E"}), {.window = 2});
  std::ostringstream out;
  WriteGraph(g, out);
  EXPECT_EQ(out.str(),
            "#nodes 4 #edges 3 window 2\n"
            "A\tB\t1\n"
            "A\tC\t1\n"
            "C\tE\t1\n");
}

TEST(GraphFileTest, IsolatedNodesSurviveRoundTrip) {
  const auto g = MakeGraph({"A", "B", "Z"}, {{"A", "B", 3}});
  std::ostringstream out;
  WriteGraph(g, out);
  const auto back = ParseGraph(out.str(), "mem");
  EXPECT_EQ(back.node_count(), 3u);
  EXPECT_TRUE(back.Find("Z").has_value());
}

TEST(GraphFileTest, ParseErrors) {
  auto code_of = [](std::string_view text) {
    try {
      ParseGraph(text, "mem");
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInternal;
  };
  EXPECT_EQ(code_of("garbage\n"), ErrorCode::kParse);
  EXPECT_EQ(code_of("#nodes 2 #edges 1 window 3\nA\tB\tx\n"), ErrorCode::kParse);
  EXPECT_EQ(code_of("#nodes 2 #edges 1 window 3\nB\tA\t1\n"), ErrorCode::kParse);
  EXPECT_EQ(code_of("#nodes 3 #edges 1 window 3\nA\tB\t1\n"), ErrorCode::kIntegrity);
  EXPECT_EQ(code_of("#nodes 2 #edges 1 window 3\nA\tB\t1"), ErrorCode::kParse);
}

TEST(BehaviorLogTest, ParseReportsLineNumbers) {
  try {
    ParseBehaviorLog("u\ta\t1\ttrain\nu\tb\tnot-a-time\ttrain\n", "log.tsv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find(":2"), std::string::npos) << e.what();
  }
}

TEST(BehaviorLogTest, WriteParseRoundTrip) {
  BehaviorLog log = Sequence("u1", {"a", "b", "c"});
  log.records[1].train = false;
  std::ostringstream out;
  WriteBehaviorLog(log, out);
  const auto back = ParseBehaviorLog(out.str(), "mem");
  ASSERT_EQ(back.records.size(), 3u);
  EXPECT_EQ(back.records[1].item_id, "b");
  EXPECT_FALSE(back.records[1].train);
  EXPECT_EQ(back.records[2].timestamp, 102);
}

}  // namespace
}  // namespace tgin
