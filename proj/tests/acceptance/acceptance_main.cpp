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


// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit when any
// criterion fails. Usage: acceptance --workdir DIR

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Eigenvalues>

#include "core/analytics.hpp"
#include "core/catalog.hpp"
#include "core/dpp.hpp"
#include "core/graph.hpp"
#include "core/index_io.hpp"
#include "core/pipeline.hpp"
#include "core/rng.hpp"
#include "core/synthetic.hpp"
#include "core/triangle.hpp"
#include "oracle/oracles.hpp"

namespace tgin {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool passed = false;
  std::string detail;
};

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Fmt(const char* format, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, value);
  return buf;
}

// Triangles of every center and order 0..2 equal an independent enumeration:
// all pairwise-adjacent triples of the graph (O(n^3)), assigned to a center by
// relaxation distances.
Outcome TriangleOracle() {
  constexpr uint32_t kMaxOrder = 2;
  const auto start = Clock::now();
  size_t compared = 0;
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    const auto g = synthetic::RandomGraph(200, 0.05, DeriveSeed(seed, 0x7a1));
    const size_t n = g.node_count();
    std::vector<std::vector<uint8_t>> adj(n, std::vector<uint8_t>(n, 0));
    for (const auto& e : g.SortedEdges()) adj[e.a][e.b] = adj[e.b][e.a] = 1;
    std::vector<NodeTriple> all;
    for (NodeId a = 0; a < n; ++a) {
      for (NodeId b = a + 1; b < n; ++b) {
        if (!adj[a][b]) continue;
        for (NodeId c = b + 1; c < n; ++c) {
          if (adj[a][c] && adj[b][c]) all.push_back({a, b, c});
        }
      }
    }
    TriangleMiner miner(g, {kMaxOrder, 0});
    TriangleMiner::Workspace ws;
    for (NodeId center = 0; center < n; ++center) {
      const auto dist = oracle::RelaxedDistances(g, center);
      std::vector<std::set<NodeTriple>> expected(kMaxOrder + 1);
      for (const auto& t : all) {
        const uint32_t lo = std::min({dist[t[0]], dist[t[1]], dist[t[2]]});
        const uint32_t hi = std::max({dist[t[0]], dist[t[1]], dist[t[2]]});
        if (hi <= kMaxOrder) expected[lo].insert(t);
      }
      miner.Explore(center, ws);
      for (uint32_t k = 0; k <= kMaxOrder; ++k) {
        std::set<NodeTriple> got;
        for (const auto& t : miner.Extract(ws, k).triangles) got.insert(t.nodes);
        if (got != expected[k]) {
          return {false, "graph seed " + std::to_string(seed) + " center " + g.name(center) +
                             " order " + std::to_string(k) + ": " + std::to_string(got.size()) +
                             " extracted vs " + std::to_string(expected[k].size()) + " expected"};
        }
        compared += got.size();
      }
    }
  }
  const double elapsed = Seconds(start);
  return {elapsed < 60.0, "20 graphs x 200 centers x 3 orders, " + std::to_string(compared) +
                              " triangles matched in " + Fmt("%.1f", elapsed) + " s (limit 60 s)"};
}

Outcome EdgeMembership() {
  const auto g = synthetic::RandomGraph(3000, 0.005, 17);
  size_t lost = 0;
  for (const auto& e : g.SortedEdges()) {
    if (!g.membership_filter().MayContain(EdgeKey(e.a, e.b)) || !g.HasEdge(e.a, e.b)) ++lost;
  }
  Rng rng(18);
  size_t absent = 0, positives = 0;
  while (absent < 100000) {
    const auto a = static_cast<NodeId>(rng.Below(g.node_count()));
    const auto b = static_cast<NodeId>(rng.Below(g.node_count()));
    if (a == b || g.HasEdge(a, b)) continue;
    ++absent;
    positives += g.membership_filter().MayContain(EdgeKey(a, b)) ? 1 : 0;
  }
  const double rate = static_cast<double>(positives) / static_cast<double>(absent);
  return {lost == 0 && rate <= 0.02,
          std::to_string(g.edge_count()) + " edges replayed, " + std::to_string(lost) +
              " false negatives; false-positive rate " + Fmt("%.4f", rate) +
              " on 100000 absent pairs (limit 0.02)"};
}

oracle::DenseMatrix ToDense(const Eigen::MatrixXd& m) {
  oracle::DenseMatrix out(m.rows(), std::vector<double>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  }
  return out;
}

Outcome DppGreedyOracle() {
  size_t steps = 0;
  double worst_psd = 0.0;
  for (uint64_t seed = 1; seed <= 100; ++seed) {
    Rng rng(DeriveSeed(seed, 0xd99));
    const size_t n = 1 + rng.Below(12);
    const size_t dim = 1 + rng.Below(12);
    std::vector<Triangle> tris(n);
    for (size_t i = 0; i < n; ++i) {
      tris[i].nodes = {static_cast<NodeId>(3 * i), static_cast<NodeId>(3 * i + 1),
                       static_cast<NodeId>(3 * i + 2)};
      tris[i].relevance = rng.Uniform();
      tris[i].feature.resize(dim);
      for (double& x : tris[i].feature) x = rng.Normal();
    }
    const auto kernel = BuildKernel(tris, 0.1 + 0.8 * rng.Uniform());
    const Eigen::MatrixXd dense = kernel.Dense();
    const double min_eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(dense).eigenvalues()(0);
    const double floor = -1e-8 * dense.trace() / static_cast<double>(n);
    worst_psd = std::min(worst_psd, min_eig);
    if (min_eig < floor) return {false, "kernel " + std::to_string(seed) + " not PSD"};
    const auto oracle_matrix = ToDense(dense);
    const auto result = GreedyMap(kernel, n);
    std::vector<size_t> prefix;
    for (size_t s = 0; s < result.selected.size(); ++s) {
      const auto step = oracle::DenseGreedyStep(oracle_matrix, prefix);
      const double tol = 1e-9 * std::max(1.0, std::abs(step.best_gain));
      if (result.selected[s] != step.argmax ||
          std::abs(result.gains[s] - step.best_gain) > tol) {
        return {false, "kernel " + std::to_string(seed) + " step " + std::to_string(s) +
                           " diverges from the dense determinant ratio"};
      }
      prefix.push_back(result.selected[s]);
      ++steps;
    }
    if (result.selected.size() < n) {
      // Early stop is allowed only when every extension is singular.
      const auto step = oracle::DenseGreedyStep(oracle_matrix, prefix);
      if (step.best_gain > std::log(1e-10)) {
        return {false, "kernel " + std::to_string(seed) + " stopped early"};
      }
    }
  }
  return {true, "100 kernels, " + std::to_string(steps) +
                    " greedy steps match dense argmax and gains within 1e-9; min eigenvalue " +
                    Fmt("%.2e", worst_psd)};
}

Outcome IdentityKernel() {
  double worst = 0.0;
  for (size_t n = 1; n <= 10; ++n) {
    const auto kernel = DppKernel::FromDense(Eigen::MatrixXd::Identity(n, n));
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<size_t> subset;
      for (size_t i = 0; i < n; ++i) {
        if (mask & (1u << i)) subset.push_back(i);
      }
      worst = std::max(worst, std::abs(SubsetProbability(kernel, subset) -
                                       std::ldexp(1.0, -static_cast<int>(n))));
    }
  }
  return {worst <= 1e-12, "all subsets for N = 1..10, max |P - 2^-N| = " + Fmt("%.2e", worst)};
}

Outcome CliqueMonteCarlo() {
  const auto g = synthetic::RandomGraph(300, 0.2, 1);
  CliqueOptions o;
  o.trials = 200000;
  o.workers = std::max(1u, std::thread::hardware_concurrency());
  const auto est = CliqueProbability(g, nullptr, 3, o);
  const double p3 = 0.008;
  const double se = std::sqrt(p3 * (1 - p3) / static_cast<double>(o.trials));
  const double z = (est.probability - p3) / se;
  return {std::abs(z) <= 3.0, "estimate " + Fmt("%.5f", est.probability) + " vs 0.008, " +
                                  Fmt("%+.2f", z) + " standard errors"};
}

Outcome DiversityOrdering() {
  constexpr int kRuns = 50;
  int strict = 0;
  for (uint64_t seed = 1; seed <= kRuns; ++seed) {
    synthetic::DiversityFixtureOptions fo;
    fo.seed = seed;
    const auto fixture = synthetic::ClusteredDiversityFixture(fo);
    DiversityOptions o;
    o.attribute = "keyword";
    o.item_budget = 10;
    o.sample_items = 0;
    o.orders = {0};
    o.miner = {1, 0};
    o.seed = seed;
    for (const auto& row : CompareDiversity(fixture.graph, fixture.catalog, o).rows) {
      if (row.item == "hub") strict += row.dpp_distinct > row.weight_distinct ? 1 : 0;
    }
  }
  return {strict >= 45, "DPP distinct keywords strictly higher in " + std::to_string(strict) +
                            "/50 runs (need 45)"};
}

Outcome PlantedHomophily() {
  const auto fixture = synthetic::PlantedClusterGraph({});
  HomophilyOptions o;
  o.item_sample_size = 0;
  o.triangles_per_item = 100;
  o.baseline_triples = 100000;
  const auto r = HomophilyStats(fixture.graph, fixture.catalog, o);
  if (!r.share_rate || !r.baseline_share_rate) return {false, "no triangles sampled"};
  const double gap = *r.share_rate - *r.baseline_share_rate;
  return {gap >= 0.20, "triangle share rate " + Fmt("%.4f", *r.share_rate) + " vs random " +
                           Fmt("%.4f", *r.baseline_share_rate) + " (gap " +
                           Fmt("%.1f", 100 * gap) + " pp, need 20)"};
}

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

int RunCli(const std::string& args, const fs::path& stderr_path) {
  const std::string cmd =
      std::string(TGIN_CLI_PATH) + " " + args + " 2>" + stderr_path.string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome Determinism(const fs::path& dir) {
  const auto p = [&](const std::string& name) { return (dir / name).string(); };
  struct Command {
    std::string name;
    std::function<std::string(const std::string&)> args;  // suffix -> arguments
    std::string output;                                   // prefix of the output file
  };
  const std::string gc = " --graph " + p("graph_a") + " --catalog " + p("catalog_a");
  const std::vector<Command> commands = {
      {"synth", [&](const std::string& s) {
         return "synth --items 500 --events 40000 --log-out " + p("log_" + s) +
                " --catalog-out " + p("catalog_" + s);
       }, "log"},
      {"build-graph", [&](const std::string& s) {
         return "build-graph --log " + p("log_a") + " --out " + p("graph_" + s);
       }, "graph"},
      {"build-index", [&](const std::string& s) {
         return "build-index" + gc + " --out " + p("index_" + s);
       }, "index"},
      {"build-index --gzip", [&](const std::string& s) {
         return "build-index --gzip" + gc + " --out " + p("zindex_" + s);
       }, "zindex"},
      {"stats homophily", [&](const std::string& s) {
         return "stats homophily" + gc + " --out " + p("homophily_" + s);
       }, "homophily"},
      {"stats clique", [&](const std::string& s) {
         return "stats clique" + gc + " --trials 100000 --out " + p("clique_" + s);
       }, "clique"},
      {"stats diversity", [&](const std::string& s) {
         return "stats diversity" + gc + " --sample-items 100 --out " + p("diversity_" + s);
       }, "diversity"},
      {"selftest", [&](const std::string&) { return std::string("selftest"); }, ""},
  };
  for (const auto& c : commands) {
    std::string outputs[2];
    for (int run = 0; run < 2; ++run) {
      const std::string suffix = run == 0 ? "a" : "b";
      const fs::path err = dir / ("stderr_" + suffix);
      if (RunCli("--workers 4 " + c.args(suffix), err) != 0) {
        return {false, c.name + " failed: " + Slurp(err)};
      }
      outputs[run] = c.output.empty() ? Slurp(err) : Slurp(dir / (c.output + "_" + suffix));
    }
    if (c.name == "synth" && Slurp(dir / "catalog_a") != Slurp(dir / "catalog_b")) {
      return {false, "synth catalog differs between runs"};
    }
    if (outputs[0].empty() || outputs[0] != outputs[1]) {
      return {false, c.name + " output differs between runs"};
    }
  }

  // read(write(x)) = x for an index built in memory from the same inputs.
  PipelineConfig config;
  const auto g = ReadGraphFile(dir / "graph_a", config.membership());
  const auto catalog = ItemCatalog::Load(dir / "catalog_a");
  const TriangleIndex index = BuildTriangleIndex(g, catalog, config);
  WriteIndexFile(index, dir / "index_mem");
  if (!(ReadIndexFile(dir / "index_mem") == index)) return {false, "index round-trip differs"};
  if (Slurp(dir / "index_mem") != Slurp(dir / "index_a")) {
    return {false, "in-memory index differs from CLI index"};
  }
  if (!(ReadIndexFile(dir / "zindex_a") == index)) return {false, "gzip index round-trip differs"};
  return {true, std::to_string(commands.size()) +
                    " commands byte-identical across runs; index round-trip exact (" +
                    std::to_string(index.entries.size()) + " entries)"};
}

Outcome Throughput(const fs::path& dir) {
  const auto p = [&](const std::string& name) { return (dir / name).string(); };
  const fs::path err = dir / "stderr_throughput";
  if (RunCli("-q synth --items 10000 --events 1000000 --log-out " + p("big_log") +
                 " --catalog-out " + p("big_catalog"),
             err) != 0) {
    return {false, "synth failed: " + Slurp(err)};
  }
  const auto start = Clock::now();
  if (RunCli("-q build-graph --log " + p("big_log") + " --out " + p("big_graph"), err) != 0) {
    return {false, "build-graph failed: " + Slurp(err)};
  }
  const double graph_seconds = Seconds(start);
  if (RunCli("-q build-index --graph " + p("big_graph") + " --catalog " + p("big_catalog") +
                 " --out " + p("big_index"),
             err) != 0) {
    return {false, "build-index failed: " + Slurp(err)};
  }
  const double total = Seconds(start);
  return {total < 300.0, "10k items / 1M events: build-graph " + Fmt("%.1f", graph_seconds) +
                             " s, total " + Fmt("%.1f", total) + " s on " +
                             std::to_string(std::max(1u, std::thread::hardware_concurrency())) +
                             " core(s) (limit 300 s)"};
}

}  // namespace
}  // namespace tgin

int main(int argc, char** argv) {
  namespace fs = std::filesystem;
  fs::path workdir = fs::temp_directory_path() / "tgin_acceptance";
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--workdir" && i + 1 < argc) {
      workdir = argv[++i];
    } else {
      std::fprintf(stderr, "usage: %s [--workdir DIR]\n", argv[0]);
      return 2;
    }
  }
  fs::remove_all(workdir);
  fs::create_directories(workdir / "determinism");
  fs::create_directories(workdir / "throughput");

  struct Criterion {
    const char* name;
    std::function<tgin::Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"triangle-oracle", tgin::TriangleOracle},
      {"edge-membership", tgin::EdgeMembership},
      {"dpp-greedy-oracle", tgin::DppGreedyOracle},
      {"identity-kernel-probabilities", tgin::IdentityKernel},
      {"clique-monte-carlo", tgin::CliqueMonteCarlo},
      {"diversity-ordering", tgin::DiversityOrdering},
      {"planted-homophily", tgin::PlantedHomophily},
      {"determinism", [&] { return tgin::Determinism(workdir / "determinism"); }},
      {"throughput", [&] { return tgin::Throughput(workdir / "throughput"); }},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    tgin::Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    failures += outcome.passed ? 0 : 1;
    std::printf("%s %s: %s\n", outcome.passed ? "PASS" : "FAIL", c.name, outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
