/**
 * Copyright 2026 The GCA Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef GCA_GCA_H
#define GCA_GCA_H

#include <stddef.h>
#include <stdint.h>

#if defined(GCA_BUILDING_LIBRARY)
#define GCA_API __attribute__((visibility("default")))
#else
#define GCA_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gca_status {
  GCA_OK = 0,
  GCA_ERR_INVALID_ARGUMENT = 1,
  GCA_ERR_IO = 2,
  GCA_ERR_FORMAT = 3,
  GCA_ERR_COUNT_MISMATCH = 4,
  GCA_ERR_OUT_OF_RANGE = 5,
  GCA_ERR_NON_FINITE = 6,
  GCA_ERR_NOT_CONVERGED = 7,
  GCA_ERR_DIVERGED = 8,
  GCA_ERR_SHAPE = 9,
  GCA_ERR_INTERNAL = 10,
  /* A caller buffer was too small; the needed count is still reported. */
  GCA_ERR_BUFFER_TOO_SMALL = 11,
} gca_status;

typedef enum gca_measure {
  GCA_MEASURE_DEGREE = 0,
  GCA_MEASURE_EIGENVECTOR = 1,
  GCA_MEASURE_PAGERANK = 2,
} gca_measure;

typedef struct gca_graph gca_graph;
typedef struct gca_config gca_config;
typedef struct gca_model gca_model;
typedef struct gca_probe_result gca_probe_result;

GCA_API const char *gca_version(void);
GCA_API const char *gca_status_name(gca_status status);
/* Message of the last failed call on this thread, "" if none. */
GCA_API const char *gca_last_error_message(void);

/* Parses "degree", "eigenvector" or "pagerank". */
GCA_API gca_status gca_measure_parse(const char *name, gca_measure *out);

/* ---- graphs ---- */

GCA_API gca_status gca_graph_load(const char *dir, gca_graph **out);
GCA_API gca_status gca_graph_save(const gca_graph *graph, const char *dir);
GCA_API gca_status gca_graph_sbm(size_t n_per_block, size_t blocks, double p_in, double p_out, size_t feature_dim,
                                 double feature_noise, uint64_t seed, gca_graph **out);
GCA_API gca_status gca_graph_karate(gca_graph **out);
GCA_API void gca_graph_free(gca_graph *graph);

GCA_API size_t gca_graph_num_nodes(const gca_graph *graph);
/* Undirected pairs for undirected graphs, arcs otherwise. */
GCA_API size_t gca_graph_num_edges(const gca_graph *graph);
GCA_API size_t gca_graph_num_features(const gca_graph *graph);
/* 0 when the graph carries no labels. */
GCA_API size_t gca_graph_num_classes(const gca_graph *graph);
GCA_API int gca_graph_directed(const gca_graph *graph);
GCA_API size_t gca_graph_num_splits(const gca_graph *graph);

/* Node scores, `capacity` >= number of nodes. */
GCA_API gca_status gca_node_centrality(const gca_graph *graph, gca_measure measure, double *scores, size_t capacity);

/* Edge centrality per edge (undirected pairs once, src < dst). Any output
 * pointer may be NULL; `count` receives the edge count. */
GCA_API gca_status gca_edge_centrality(const gca_graph *graph, gca_measure measure, uint32_t *src, uint32_t *dst,
                                       double *weights, size_t capacity, size_t *count);

typedef struct gca_augment_stats {
  size_t num_edges;
  size_t num_features;
  double edge_prob_min;
  double edge_prob_mean;
  double edge_prob_max;
  double feature_prob_min;
  double feature_prob_mean;
  double feature_prob_max;
} gca_augment_stats;

/* Removal probabilities of one view. `edge_probs` (per edge, same order as
 * gca_edge_centrality) and `feature_probs` may be NULL. */
GCA_API gca_status gca_augment_probs(const gca_graph *graph, gca_measure measure, double p_e, double p_f,
                                     double p_tau, int adaptive_topology, int adaptive_attribute,
                                     gca_augment_stats *stats, double *edge_probs, size_t edge_capacity,
                                     double *feature_probs, size_t feature_capacity);

/* ---- configuration ---- */

GCA_API gca_status gca_config_default(gca_config **out);
GCA_API gca_status gca_config_load(const char *path, gca_config **out);
/* One of wiki-cs, amazon-computers, amazon-photo, coauthor-cs,
 * coauthor-physics. */
GCA_API gca_status gca_config_preset(const char *dataset, gca_config **out);
GCA_API void gca_config_free(gca_config *config);
GCA_API gca_status gca_config_copy(const gca_config *config, gca_config **out);
/* Same keys and value syntax as config files. */
GCA_API gca_status gca_config_set(gca_config *config, const char *key, const char *value);
/* gca, gca-t, gca-a or gca-t-a. */
GCA_API gca_status gca_config_variant(gca_config *config, const char *variant);
/* Writes the config as file text; `needed` includes the terminator. */
GCA_API gca_status gca_config_format(const gca_config *config, char *buffer, size_t capacity, size_t *needed);

/* ---- training ---- */

typedef void (*gca_progress_fn)(int epoch, double loss, void *user);

GCA_API gca_status gca_train(const gca_graph *graph, const gca_config *config, gca_progress_fn progress, void *user,
                             gca_model **out);
GCA_API void gca_model_free(gca_model *model);
GCA_API gca_status gca_model_save(const gca_model *model, const char *path);
GCA_API gca_status gca_model_load(const char *path, gca_model **out);
GCA_API size_t gca_model_input_dim(const gca_model *model);
GCA_API size_t gca_model_output_dim(const gca_model *model);
/* Per-epoch loss (-objective); empty for loaded models. */
GCA_API gca_status gca_model_loss_history(const gca_model *model, double *values, size_t capacity, size_t *count);
/* N x output_dim row-major embeddings of the uncorrupted graph. */
GCA_API gca_status gca_model_embed(const gca_model *model, const gca_graph *graph, double *out, size_t capacity);

/* ---- linear evaluation ---- */

typedef struct gca_probe_options {
  int runs;           /* default 20 */
  uint64_t seed;      /* split seed base */
  int threads;        /* default 1 */
  int use_stored_splits; /* default 1: use the dataset's splits when present */
} gca_probe_options;

GCA_API gca_probe_options gca_probe_options_default(void);

/* `model` NULL evaluates the raw node features. */
GCA_API gca_status gca_evaluate(const gca_model *model, const gca_graph *graph, const gca_probe_options *options,
                                gca_probe_result **out);
/* Caller-supplied N x dim row-major embeddings. */
GCA_API gca_status gca_evaluate_embeddings(const double *embeddings, size_t num_nodes, size_t dim,
                                           const gca_graph *graph, const gca_probe_options *options,
                                           gca_probe_result **out);
GCA_API void gca_probe_result_free(gca_probe_result *result);
GCA_API size_t gca_probe_result_runs(const gca_probe_result *result);
GCA_API double gca_probe_result_accuracy(const gca_probe_result *result, size_t run);
GCA_API double gca_probe_result_l2(const gca_probe_result *result, size_t run);
GCA_API uint64_t gca_probe_result_seed(const gca_probe_result *result, size_t run);
GCA_API double gca_probe_result_mean(const gca_probe_result *result);
GCA_API double gca_probe_result_std(const gca_probe_result *result);

/* ---- self-checks ---- */

typedef void (*gca_check_fn)(const char *name, int passed, const char *detail, void *user);

/* Runs the numerical self-checks; `failures` receives the failing count. */
GCA_API gca_status gca_verify(uint64_t seed, gca_check_fn report, void *user, int *failures);

#ifdef __cplusplus
}
#endif

#endif  // GCA_GCA_H
