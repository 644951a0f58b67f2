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


#include "tgin/tgin.h"

#include <cstring>
#include <exception>
#include <filesystem>
#include <memory>
#include <new>
#include <sstream>
#include <string>
#include <utility>

#include "core/analytics.hpp"
#include "core/catalog.hpp"
#include "core/error.hpp"
#include "core/file_util.hpp"
#include "core/graph.hpp"
#include "core/index_io.hpp"
#include "core/log.hpp"
#include "core/pipeline.hpp"
#include "core/synthetic.hpp"
#include "oracle/oracles.hpp"

struct tgin_graph {
  tgin::CooccurrenceGraph graph;
};

struct tgin_catalog {
  tgin::ItemCatalog catalog;
};

struct tgin_index {
  tgin::TriangleIndex index;
};

namespace {

thread_local std::string last_error;

tgin_status SetError(tgin_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
tgin_status Guard(Fn&& fn) {
  try {
    fn();
    return TGIN_OK;
  } catch (const tgin::Error& e) {
    return SetError(static_cast<tgin_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return SetError(TGIN_ERR_INTERNAL, "out of memory");
  } catch (const std::filesystem::filesystem_error& e) {
    return SetError(TGIN_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return SetError(TGIN_ERR_INTERNAL, e.what());
  }
}

void Require(bool condition, const char* what) {
  if (!condition) {
    tgin::Fail(tgin::ErrorCode::kInvalidParameter, std::string(what) + " must not be null");
  }
}

tgin::PipelineConfig ToPipeline(const tgin_config* c) {
  tgin::PipelineConfig p;
  if (c == nullptr) return p;
  p.window = c->window;
  p.max_order = c->max_order;
  p.triangles_per_item = c->triangles_per_item;
  p.theta = c->theta;
  p.neighbor_cap = c->neighbor_cap;
  p.bloom_bits_per_edge = c->bloom_bits_per_edge;
  p.bloom_hashes = c->bloom_hashes;
  p.seed = c->seed;
  p.workers = c->workers;
  return p;
}

tgin_config Defaults() {
  tgin_config c;
  tgin_config_init(&c);
  return c;
}

template <typename Fn>
void WriteReport(const char* out_path, Fn&& fn) {
  tgin::WriteFileAtomically(out_path, [&](std::ostream& out) { fn(out); });
}

}  // namespace

extern "C" {

const char* tgin_version(void) { return "1.0.0"; }

const char* tgin_status_string(tgin_status status) {
  switch (status) {
    case TGIN_OK: return "ok";
    case TGIN_ERR_INVALID_PARAMETER: return "invalid parameter";
    case TGIN_ERR_INVALID_INPUT: return "invalid input";
    case TGIN_ERR_UNKNOWN_ITEM: return "unknown item";
    case TGIN_ERR_PARSE: return "parse error";
    case TGIN_ERR_INTEGRITY: return "integrity error";
    case TGIN_ERR_IO: return "i/o error";
    case TGIN_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* tgin_last_error(void) { return last_error.c_str(); }

void tgin_set_log_handler(tgin_log_fn fn, void* user_data) {
  if (fn == nullptr) {
    tgin::SetLogSink(nullptr);
    return;
  }
  tgin::SetLogSink([fn, user_data](std::string_view message) {
    std::string text(message);
    fn(text.c_str(), user_data);
  });
}

void tgin_config_init(tgin_config* config) {
  if (config == nullptr) return;
  tgin::PipelineConfig p;
  config->window = p.window;
  config->max_order = p.max_order;
  config->triangles_per_item = p.triangles_per_item;
  config->theta = p.theta;
  config->neighbor_cap = p.neighbor_cap;
  config->bloom_bits_per_edge = p.bloom_bits_per_edge;
  config->bloom_hashes = p.bloom_hashes;
  config->seed = p.seed;
  config->workers = p.workers;
  config->sample_items = 1000;
  config->triangles_per_sample = 10;
  config->baseline_triples = 10000;
  config->clique_trials = 1000000;
  config->node_sample_cap = 0;
  config->item_budget = 10;
  config->attribute = "keyword";
}

tgin_status tgin_config_validate(const tgin_config* config) {
  return Guard([&] {
    Require(config != nullptr, "config");
    ToPipeline(config).Validate();
  });
}

tgin_status tgin_graph_build(const char* log_path, const tgin_config* config,
                             tgin_graph** out) {
  return Guard([&] {
    Require(log_path != nullptr, "log_path");
    Require(out != nullptr, "out");
    *out = nullptr;
    const tgin::PipelineConfig p = ToPipeline(config);
    p.Validate();
    tgin::BehaviorLog log = tgin::ReadBehaviorLog(log_path);
    tgin::Log("read " + std::to_string(log.records.size()) + " behavior records");
    auto handle = std::make_unique<tgin_graph>();
    handle->graph = tgin::BuildGraph(log, p.graph_build());
    tgin::Log("graph: " + std::to_string(handle->graph.node_count()) + " nodes, " +
              std::to_string(handle->graph.edge_count()) + " edges");
    *out = handle.release();
  });
}

tgin_status tgin_graph_load(const char* graph_path, const tgin_config* config,
                            tgin_graph** out) {
  return Guard([&] {
    Require(graph_path != nullptr, "graph_path");
    Require(out != nullptr, "out");
    *out = nullptr;
    const tgin::PipelineConfig p = ToPipeline(config);
    auto handle = std::make_unique<tgin_graph>();
    handle->graph = tgin::ReadGraphFile(graph_path, p.membership());
    *out = handle.release();
  });
}

tgin_status tgin_graph_write(const tgin_graph* graph, const char* path,
                             uint64_t* bytes_written) {
  return Guard([&] {
    Require(graph != nullptr, "graph");
    Require(path != nullptr, "path");
    const uint64_t bytes = tgin::WriteGraphFile(graph->graph, path);
    if (bytes_written != nullptr) *bytes_written = bytes;
  });
}

tgin_status tgin_graph_counts(const tgin_graph* graph, uint64_t* nodes, uint64_t* edges) {
  return Guard([&] {
    Require(graph != nullptr, "graph");
    if (nodes != nullptr) *nodes = graph->graph.node_count();
    if (edges != nullptr) *edges = graph->graph.edge_count();
  });
}

tgin_status tgin_graph_has_edge(const tgin_graph* graph, const char* a, const char* b,
                                int* present) {
  return Guard([&] {
    Require(graph != nullptr && a != nullptr && b != nullptr && present != nullptr,
            "argument");
    *present = graph->graph.HasEdge(std::string_view(a), std::string_view(b)) ? 1 : 0;
  });
}

tgin_status tgin_graph_edge_weight(const tgin_graph* graph, const char* a, const char* b,
                                   uint32_t* weight) {
  return Guard([&] {
    Require(graph != nullptr && a != nullptr && b != nullptr && weight != nullptr,
            "argument");
    const auto& g = graph->graph;
    const auto ia = g.Find(a);
    const auto ib = g.Find(b);
    if (!ia) tgin::Fail(tgin::ErrorCode::kUnknownItem, std::string("unknown item: ") + a);
    if (!ib) tgin::Fail(tgin::ErrorCode::kUnknownItem, std::string("unknown item: ") + b);
    *weight = g.Weight(*ia, *ib);
  });
}

void tgin_graph_free(tgin_graph* graph) { delete graph; }

tgin_status tgin_catalog_load(const char* path, tgin_catalog** out) {
  return Guard([&] {
    Require(path != nullptr, "path");
    Require(out != nullptr, "out");
    *out = nullptr;
    auto handle = std::make_unique<tgin_catalog>();
    handle->catalog = tgin::ItemCatalog::Load(path);
    *out = handle.release();
  });
}

void tgin_catalog_free(tgin_catalog* catalog) { delete catalog; }

tgin_status tgin_index_build(const tgin_graph* graph, const tgin_catalog* catalog,
                             const tgin_config* config, tgin_index** out,
                             tgin_index_summary* summary) {
  return Guard([&] {
    Require(graph != nullptr, "graph");
    Require(catalog != nullptr, "catalog");
    Require(out != nullptr, "out");
    *out = nullptr;
    const tgin::PipelineConfig p = ToPipeline(config);
    tgin::IndexBuildSummary s;
    auto handle = std::make_unique<tgin_index>();
    handle->index = tgin::BuildTriangleIndex(graph->graph, catalog->catalog, p, &s);
    if (summary != nullptr) {
      summary->entries = s.entries;
      summary->padded_entries = s.padded_entries;
      summary->padded_rows = s.padded_rows;
      summary->padded_items = s.padded_items.size();
      summary->missing_feature_items = s.missing_feature_items.size();
    }
    *out = handle.release();
  });
}

tgin_status tgin_index_write(const tgin_index* index, const char* path, int gzip,
                             uint64_t* bytes_written) {
  return Guard([&] {
    Require(index != nullptr, "index");
    Require(path != nullptr, "path");
    const uint64_t bytes = tgin::WriteIndexFile(index->index, path, gzip != 0);
    if (bytes_written != nullptr) *bytes_written = bytes;
  });
}

tgin_status tgin_index_read(const char* path, tgin_index** out) {
  return Guard([&] {
    Require(path != nullptr, "path");
    Require(out != nullptr, "out");
    *out = nullptr;
    auto handle = std::make_unique<tgin_index>();
    handle->index = tgin::ReadIndexFile(path);
    *out = handle.release();
  });
}

tgin_status tgin_index_counts(const tgin_index* index, uint32_t* n, uint64_t* entries) {
  return Guard([&] {
    Require(index != nullptr, "index");
    if (n != nullptr) *n = index->index.n;
    if (entries != nullptr) *entries = index->index.entries.size();
  });
}

tgin_status tgin_index_equal(const tgin_index* a, const tgin_index* b, int* equal) {
  return Guard([&] {
    Require(a != nullptr && b != nullptr && equal != nullptr, "argument");
    *equal = a->index == b->index ? 1 : 0;
  });
}

void tgin_index_free(tgin_index* index) { delete index; }

tgin_status tgin_stats_homophily(const tgin_graph* graph, const tgin_catalog* catalog,
                                 const tgin_config* config, const char* out_path) {
  return Guard([&] {
    Require(graph != nullptr, "graph");
    Require(catalog != nullptr, "catalog");
    Require(out_path != nullptr, "out_path");
    const tgin_config c = config != nullptr ? *config : Defaults();
    const tgin::PipelineConfig p = ToPipeline(&c);
    p.Validate();
    tgin::HomophilyOptions opts;
    opts.item_sample_size = c.sample_items;
    opts.triangles_per_item = c.triangles_per_sample;
    opts.baseline_triples = c.baseline_triples;
    opts.miner = p.miner();
    opts.seed = c.seed;
    const tgin::HomophilyReport report =
        tgin::HomophilyStats(graph->graph, catalog->catalog, opts);
    WriteReport(out_path, [&](std::ostream& out) { tgin::WriteHomophilyReport(report, out); });
  });
}

tgin_status tgin_stats_clique(const tgin_graph* graph, const tgin_catalog* catalog,
                              const tgin_config* config, const char* out_path) {
  return Guard([&] {
    Require(graph != nullptr, "graph");
    Require(out_path != nullptr, "out_path");
    const tgin_config c = config != nullptr ? *config : Defaults();
    const tgin::PipelineConfig p = ToPipeline(&c);
    tgin::CliqueOptions opts;
    opts.trials = c.clique_trials;
    opts.seed = c.seed;
    opts.node_sample_cap = c.node_sample_cap;
    opts.workers = p.EffectiveWorkers();
    const auto report = tgin::CliqueReport(
        graph->graph, catalog != nullptr ? &catalog->catalog : nullptr, opts);
    WriteReport(out_path, [&](std::ostream& out) { tgin::WriteCliqueReport(report, out); });
  });
}

tgin_status tgin_stats_diversity(const tgin_graph* graph, const tgin_catalog* catalog,
                                 const tgin_config* config, const char* out_path) {
  return Guard([&] {
    Require(graph != nullptr, "graph");
    Require(catalog != nullptr, "catalog");
    Require(out_path != nullptr, "out_path");
    const tgin_config c = config != nullptr ? *config : Defaults();
    const tgin::PipelineConfig p = ToPipeline(&c);
    p.Validate();
    tgin::DiversityOptions opts;
    if (c.attribute != nullptr) opts.attribute = c.attribute;
    opts.item_budget = c.item_budget;
    opts.sample_items = c.sample_items;
    opts.selection.theta = c.theta;
    opts.miner = p.miner();
    opts.seed = c.seed;
    const tgin::DiversityReport report =
        tgin::CompareDiversity(graph->graph, catalog->catalog, opts);
    WriteReport(out_path, [&](std::ostream& out) { tgin::WriteDiversityReport(report, out); });
  });
}

void tgin_synth_options_init(tgin_synth_options* options) {
  if (options == nullptr) return;
  tgin::synthetic::ClusteredLogOptions o;
  options->items = o.items;
  options->events = o.events;
  options->cluster_size = static_cast<uint32_t>(o.cluster_size);
  options->clusters_per_group = static_cast<uint32_t>(o.clusters_per_group);
  options->feature_dim = static_cast<uint32_t>(o.feature_dim);
  options->seed = o.seed;
}

tgin_status tgin_synth_write(const tgin_synth_options* options, const char* log_path,
                             const char* catalog_path) {
  return Guard([&] {
    Require(options != nullptr, "options");
    Require(log_path != nullptr, "log_path");
    Require(catalog_path != nullptr, "catalog_path");
    tgin::synthetic::ClusteredLogOptions o;
    o.items = options->items;
    o.events = options->events;
    o.cluster_size = options->cluster_size;
    o.clusters_per_group = options->clusters_per_group;
    o.feature_dim = options->feature_dim;
    o.seed = options->seed;
    const tgin::synthetic::SyntheticLog synth = tgin::synthetic::ClusteredLog(o);
    tgin::WriteFileAtomically(log_path,
                              [&](std::ostream& out) { tgin::WriteBehaviorLog(synth.log, out); });
    tgin::WriteFileAtomically(catalog_path,
                              [&](std::ostream& out) { synth.catalog.Write(out); });
  });
}

tgin_status tgin_selftest(uint64_t seed, uint32_t* checks, uint32_t* failures) {
  return Guard([&] {
    const auto results = tgin::oracle::RunSelftest(seed);
    uint32_t failed = 0;
    for (const auto& check : results) {
      if (!check.passed) ++failed;
      tgin::Log(std::string(check.passed ? "PASS " : "FAIL ") + check.name + ": " +
                check.detail);
    }
    if (checks != nullptr) *checks = static_cast<uint32_t>(results.size());
    if (failures != nullptr) *failures = failed;
  });
}

}  // extern "C"
