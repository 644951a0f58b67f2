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


// Command-line driver for the offline triangle pipeline. Links only the
// public C interface.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "tgin/tgin.h"

namespace {

void StderrLog(const char* message, void* /*user_data*/) {
  std::fprintf(stderr, "[tgin] %s\n", message);
}

int Report(tgin_status status, const char* what) {
  if (status == TGIN_OK) return 0;
  std::fprintf(stderr, "tgin: %s failed: %s: %s\n", what, tgin_status_string(status),
               tgin_last_error());
  return 2;
}

struct Handles {
  tgin_graph* graph = nullptr;
  tgin_catalog* catalog = nullptr;
  tgin_index* index = nullptr;
  ~Handles() {
    tgin_index_free(index);
    tgin_catalog_free(catalog);
    tgin_graph_free(graph);
  }
};

void AddPipelineFlags(CLI::App* cmd, tgin_config* c) {
  cmd->add_option("--max-order", c->max_order, "maximum triangle order K")->capture_default_str();
  cmd->add_option("--neighbor-cap", c->neighbor_cap,
                  "top-weight neighbors kept per node during expansion (0 = all)")
      ->capture_default_str();
  cmd->add_option("--bloom-bits", c->bloom_bits_per_edge,
                  "Bloom filter bits per edge (0 = disabled)")
      ->capture_default_str();
  cmd->add_option("--bloom-hashes", c->bloom_hashes, "Bloom filter hash count")
      ->capture_default_str();
  cmd->add_option("--seed", c->seed, "random seed")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  tgin_config config;
  tgin_config_init(&config);
  config.workers = std::thread::hardware_concurrency();
  if (config.workers == 0) config.workers = 1;

  CLI::App app{"Triangle-interest pipeline: co-occurrence graphs, diverse triangle "
               "indexes and motif statistics"};
  app.set_config("--config", "", "read options from a TOML/INI file (flags win)");
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "suppress progress output");
  app.add_option("--workers", config.workers, "worker threads")->capture_default_str();

  // build-graph
  std::string log_path, graph_out;
  auto* build_graph = app.add_subcommand("build-graph", "build the co-occurrence graph");
  build_graph->add_option("--log", log_path, "behavior log (user, item, timestamp, split)")
      ->required();
  build_graph->add_option("--out", graph_out, "output graph file")->required();
  build_graph->add_option("--window", config.window, "sliding window size")
      ->capture_default_str();
  AddPipelineFlags(build_graph, &config);

  // build-index
  std::string graph_path, catalog_path, index_out;
  bool gzip = false;
  auto* build_index = app.add_subcommand("build-index", "build the per-item triangle index");
  build_index->add_option("--graph", graph_path, "graph file")->required();
  build_index->add_option("--catalog", catalog_path, "item catalog")->required();
  build_index->add_option("--out", index_out, "output index file")->required();
  build_index->add_option("--n", config.triangles_per_item, "triangles per item and order")
      ->capture_default_str();
  build_index->add_option("--theta", config.theta, "relevance/diversity trade-off in (0,1)")
      ->capture_default_str();
  build_index->add_flag("--gzip", gzip, "gzip-compress the index");
  AddPipelineFlags(build_index, &config);

  // stats
  std::string report_out;
  auto* stats = app.add_subcommand("stats", "motif statistics reports");
  stats->require_subcommand(1);
  auto add_stats = [&](const char* name, const char* help, bool catalog_required) {
    auto* cmd = stats->add_subcommand(name, help);
    cmd->add_option("--graph", graph_path, "graph file")->required();
    auto* cat = cmd->add_option("--catalog", catalog_path, "item catalog");
    if (catalog_required) cat->required();
    cmd->add_option("--out", report_out, "report file")->required();
    AddPipelineFlags(cmd, &config);
    return cmd;
  };
  auto* homophily = add_stats("homophily", "attribute sharing within triangles", true);
  homophily->add_option("--sample-items", config.sample_items, "items sampled")
      ->capture_default_str();
  homophily->add_option("--triangles-per-item", config.triangles_per_sample,
                        "triangles drawn per sampled item")
      ->capture_default_str();
  homophily->add_option("--baseline-triples", config.baseline_triples,
                        "random node triples for the baseline")
      ->capture_default_str();
  auto* clique = add_stats("clique", "k-clique occurrence probabilities, k = 2..5", false);
  clique->add_option("--trials", config.clique_trials, "Monte Carlo trials per k")
      ->capture_default_str();
  clique->add_option("--node-sample-cap", config.node_sample_cap,
                     "sample from the first N nodes only (0 = all)")
      ->capture_default_str();
  std::string attribute = config.attribute;
  auto* diversity = add_stats("diversity", "DPP selection vs weight sampling", true);
  diversity->add_option("--attribute", attribute, "attribute counted")->capture_default_str();
  diversity->add_option("--budget", config.item_budget, "item budget per comparison")
      ->capture_default_str();
  diversity->add_option("--sample-items", config.sample_items, "items compared (0 = all)")
      ->capture_default_str();
  diversity->add_option("--theta", config.theta, "relevance/diversity trade-off in (0,1)")
      ->capture_default_str();

  // synth
  tgin_synth_options synth;
  tgin_synth_options_init(&synth);
  std::string synth_log, synth_catalog;
  auto* synth_cmd = app.add_subcommand("synth", "write a synthetic clustered log and catalog");
  synth_cmd->add_option("--log-out", synth_log, "behavior log path")->required();
  synth_cmd->add_option("--catalog-out", synth_catalog, "catalog path")->required();
  synth_cmd->add_option("--items", synth.items, "catalog size")->capture_default_str();
  synth_cmd->add_option("--events", synth.events, "click events")->capture_default_str();
  synth_cmd->add_option("--cluster-size", synth.cluster_size, "items per cluster")
      ->capture_default_str();
  synth_cmd->add_option("--feature-dim", synth.feature_dim, "feature dimension")
      ->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed, "random seed")->capture_default_str();

  // selftest
  uint64_t selftest_seed = 1;
  auto* selftest = app.add_subcommand("selftest", "run the brute-force oracle suites");
  selftest->add_option("--seed", selftest_seed, "fixture seed")->capture_default_str();

  CLI11_PARSE(app, argc, argv);
  config.attribute = attribute.c_str();
  if (!quiet || selftest->parsed()) tgin_set_log_handler(StderrLog, nullptr);

  Handles h;
  if (build_graph->parsed()) {
    if (int rc = Report(tgin_config_validate(&config), "configuration")) return rc;
    if (int rc = Report(tgin_graph_build(log_path.c_str(), &config, &h.graph), "build-graph"))
      return rc;
    uint64_t nodes = 0, edges = 0;
    tgin_graph_counts(h.graph, &nodes, &edges);
    if (int rc = Report(tgin_graph_write(h.graph, graph_out.c_str(), nullptr), "write graph"))
      return rc;
    std::fprintf(stderr, "nodes=%llu edges=%llu\n", static_cast<unsigned long long>(nodes),
                 static_cast<unsigned long long>(edges));
    return 0;
  }

  if (build_index->parsed()) {
    if (int rc = Report(tgin_config_validate(&config), "configuration")) return rc;
    if (int rc = Report(tgin_graph_load(graph_path.c_str(), &config, &h.graph), "read graph"))
      return rc;
    if (int rc = Report(tgin_catalog_load(catalog_path.c_str(), &h.catalog), "read catalog"))
      return rc;
    tgin_index_summary summary{};
    if (int rc = Report(tgin_index_build(h.graph, h.catalog, &config, &h.index, &summary),
                        "build-index"))
      return rc;
    if (int rc = Report(tgin_index_write(h.index, index_out.c_str(), gzip ? 1 : 0, nullptr),
                        "write index"))
      return rc;
    std::fprintf(stderr, "entries=%llu padded_entries=%llu padded_rows=%llu\n",
                 static_cast<unsigned long long>(summary.entries),
                 static_cast<unsigned long long>(summary.padded_entries),
                 static_cast<unsigned long long>(summary.padded_rows));
    return 0;
  }

  if (stats->parsed()) {
    if (int rc = Report(tgin_graph_load(graph_path.c_str(), &config, &h.graph), "read graph"))
      return rc;
    if (!catalog_path.empty()) {
      if (int rc = Report(tgin_catalog_load(catalog_path.c_str(), &h.catalog), "read catalog"))
        return rc;
    }
    if (homophily->parsed()) {
      return Report(tgin_stats_homophily(h.graph, h.catalog, &config, report_out.c_str()),
                    "stats homophily");
    }
    if (clique->parsed()) {
      return Report(tgin_stats_clique(h.graph, h.catalog, &config, report_out.c_str()),
                    "stats clique");
    }
    return Report(tgin_stats_diversity(h.graph, h.catalog, &config, report_out.c_str()),
                  "stats diversity");
  }

  if (synth_cmd->parsed()) {
    return Report(tgin_synth_write(&synth, synth_log.c_str(), synth_catalog.c_str()), "synth");
  }

  if (selftest->parsed()) {
    uint32_t checks = 0, failures = 0;
    if (int rc = Report(tgin_selftest(selftest_seed, &checks, &failures), "selftest")) return rc;
    std::fprintf(stderr, "%u checks, %u failed\n", checks, failures);
    return failures == 0 ? 0 : 1;
  }
  return 0;
}
