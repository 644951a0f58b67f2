/* Copyright 2026 The TGIN Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the triangle-interest pipeline: co-occurrence graph
 * construction, per-item diverse triangle indexes and motif statistics.
 *
 * Every function returns a tgin_status. On failure, tgin_last_error()
 * describes the error for the calling thread until its next failing call.
 * Objects are opaque and owned by the caller; release them with the
 * matching *_free function (NULL is accepted).
 */
#ifndef TGIN_TGIN_H_
#define TGIN_TGIN_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(TGIN_BUILDING_LIBRARY)
#define TGIN_API __declspec(dllexport)
#else
#define TGIN_API __declspec(dllimport)
#endif
#else
#define TGIN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tgin_status {
  TGIN_OK = 0,
  TGIN_ERR_INVALID_PARAMETER = 1,
  TGIN_ERR_INVALID_INPUT = 2,
  TGIN_ERR_UNKNOWN_ITEM = 3,
  TGIN_ERR_PARSE = 4,
  TGIN_ERR_INTEGRITY = 5,
  TGIN_ERR_IO = 6,
  TGIN_ERR_INTERNAL = 7
} tgin_status;

typedef struct tgin_graph tgin_graph;
typedef struct tgin_catalog tgin_catalog;
typedef struct tgin_index tgin_index;

/* Pipeline and analytics parameters. Initialize with tgin_config_init. */
typedef struct tgin_config {
  uint32_t window;              /* sliding window, >= 2 (default 3) */
  uint32_t max_order;           /* neighborhood radius K (default 2) */
  uint32_t triangles_per_item;  /* n (default 10) */
  double theta;                 /* relevance/diversity trade-off in (0,1) (default 0.5) */
  uint32_t neighbor_cap;        /* top-weight neighbors per node, 0 = off (default 200) */
  uint32_t bloom_bits_per_edge; /* 0 disables the Bloom prefilter (default 10) */
  uint32_t bloom_hashes;        /* default 7 */
  uint64_t seed;                /* default 1 */
  uint32_t workers;             /* 0 = hardware concurrency */

  /* stats homophily */
  uint32_t sample_items;        /* default 1000 */
  uint32_t triangles_per_sample;/* default 10 */
  uint32_t baseline_triples;    /* default 10000 */
  /* stats clique */
  uint64_t clique_trials;       /* default 1000000 */
  uint32_t node_sample_cap;     /* 0 = sample from all nodes */
  /* stats diversity */
  uint32_t item_budget;         /* default 10 */
  const char* attribute;        /* default "keyword"; not copied */
} tgin_config;

typedef struct tgin_index_summary {
  uint64_t entries;
  uint64_t padded_entries;
  uint64_t padded_rows;
  uint64_t padded_items;
  uint64_t missing_feature_items;
} tgin_index_summary;

typedef struct tgin_synth_options {
  uint64_t items;           /* default 10000 */
  uint64_t events;          /* default 1000000 */
  uint32_t cluster_size;    /* default 20 */
  uint32_t clusters_per_group; /* default 10 */
  uint32_t feature_dim;     /* default 16 */
  uint64_t seed;            /* default 1 */
} tgin_synth_options;

typedef void (*tgin_log_fn)(const char* message, void* user_data);

TGIN_API const char* tgin_version(void);
TGIN_API const char* tgin_status_string(tgin_status status);
TGIN_API const char* tgin_last_error(void);
/* Progress messages; pass NULL to silence (the default). */
TGIN_API void tgin_set_log_handler(tgin_log_fn fn, void* user_data);

TGIN_API void tgin_config_init(tgin_config* config);
TGIN_API tgin_status tgin_config_validate(const tgin_config* config);

/* Graph: built from a behavior log (train split only) or loaded from a
 * graph file. */
TGIN_API tgin_status tgin_graph_build(const char* log_path, const tgin_config* config,
                                      tgin_graph** out);
TGIN_API tgin_status tgin_graph_load(const char* graph_path, const tgin_config* config,
                                     tgin_graph** out);
TGIN_API tgin_status tgin_graph_write(const tgin_graph* graph, const char* path,
                                      uint64_t* bytes_written);
TGIN_API tgin_status tgin_graph_counts(const tgin_graph* graph, uint64_t* nodes,
                                       uint64_t* edges);
TGIN_API tgin_status tgin_graph_has_edge(const tgin_graph* graph, const char* a,
                                         const char* b, int* present);
TGIN_API tgin_status tgin_graph_edge_weight(const tgin_graph* graph, const char* a,
                                            const char* b, uint32_t* weight);
TGIN_API void tgin_graph_free(tgin_graph* graph);

TGIN_API tgin_status tgin_catalog_load(const char* path, tgin_catalog** out);
TGIN_API void tgin_catalog_free(tgin_catalog* catalog);

/* Triangle index: one entry per (item, order 0..max_order), each with
 * exactly triangles_per_item rows. summary may be NULL. */
TGIN_API tgin_status tgin_index_build(const tgin_graph* graph, const tgin_catalog* catalog,
                                      const tgin_config* config, tgin_index** out,
                                      tgin_index_summary* summary);
TGIN_API tgin_status tgin_index_write(const tgin_index* index, const char* path, int gzip,
                                      uint64_t* bytes_written);
TGIN_API tgin_status tgin_index_read(const char* path, tgin_index** out);
TGIN_API tgin_status tgin_index_counts(const tgin_index* index, uint32_t* n,
                                       uint64_t* entries);
/* 1 when both indexes hold identical entries. */
TGIN_API tgin_status tgin_index_equal(const tgin_index* a, const tgin_index* b, int* equal);
TGIN_API void tgin_index_free(tgin_index* index);

/* Reports are tab-separated tables written to out_path. catalog is optional
 * for the clique report (homophily column becomes NA). */
TGIN_API tgin_status tgin_stats_homophily(const tgin_graph* graph, const tgin_catalog* catalog,
                                          const tgin_config* config, const char* out_path);
TGIN_API tgin_status tgin_stats_clique(const tgin_graph* graph, const tgin_catalog* catalog,
                                       const tgin_config* config, const char* out_path);
TGIN_API tgin_status tgin_stats_diversity(const tgin_graph* graph, const tgin_catalog* catalog,
                                          const tgin_config* config, const char* out_path);

/* Synthetic clustered click log and matching catalog. */
TGIN_API void tgin_synth_options_init(tgin_synth_options* options);
TGIN_API tgin_status tgin_synth_write(const tgin_synth_options* options, const char* log_path,
                                      const char* catalog_path);

/* Runs the oracle suites; each check is reported through the log handler.
 * failures receives the number of failed checks. */
TGIN_API tgin_status tgin_selftest(uint64_t seed, uint32_t* checks, uint32_t* failures);

#ifdef __cplusplus
}
#endif

#endif /* TGIN_TGIN_H_ */
