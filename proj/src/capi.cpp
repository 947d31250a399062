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
#include "gca/gca.h"

#include <algorithm>
#include <cstring>
#include <memory>
#include <new>
#include <stdexcept>
#include <string>

#include "gca/augment.hpp"
#include "gca/centrality.hpp"
#include "gca/checkpoint.hpp"
#include "gca/dataset.hpp"
#include "gca/error.hpp"
#include "gca/oracle.hpp"
#include "gca/probe.hpp"
#include "gca/trainer.hpp"

struct gca_graph {
  gca::Dataset data;
};

struct gca_config {
  gca::TrainConfig config;
};

struct gca_model {
  gca::ModelParams params;
  std::vector<double> loss_history;
};

struct gca_probe_result {
  gca::ProbeResult result;
};

namespace {

thread_local std::string g_last_error;

struct BufferTooSmall : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Runs `body`, mapping exceptions to status codes and the thread's message.
template <typename F>
gca_status Guard(F &&body) {
  try {
    g_last_error.clear();
    body();
    return GCA_OK;
  } catch (const BufferTooSmall &e) {
    g_last_error = e.what();
    return GCA_ERR_BUFFER_TOO_SMALL;
  } catch (const gca::Error &e) {
    g_last_error = e.what();
    return static_cast<gca_status>(e.code());
  } catch (const std::bad_alloc &) {
    g_last_error = "out of memory";
    return GCA_ERR_INTERNAL;
  } catch (const std::exception &e) {
    g_last_error = e.what();
    return GCA_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return GCA_ERR_INTERNAL;
  }
}

void Require(const void *p, const char *what) {
  GCA_CHECK(p != nullptr, gca::ErrorCode::kInvalidArgument, std::string(what) + " is NULL");
}

gca::CentralityMeasure ToMeasure(gca_measure m) {
  switch (m) {
    case GCA_MEASURE_DEGREE:
      return gca::CentralityMeasure::kDegree;
    case GCA_MEASURE_EIGENVECTOR:
      return gca::CentralityMeasure::kEigenvector;
    case GCA_MEASURE_PAGERANK:
      return gca::CentralityMeasure::kPageRank;
  }
  throw gca::Error(gca::ErrorCode::kInvalidArgument, "unknown centrality measure " + std::to_string(m));
}

// Per-arc values reduced to the order of EdgeList: one entry per undirected
// pair (src < dst), or per arc for directed graphs.
std::vector<std::size_t> EdgeArcIndex(const gca::Graph &g) {
  std::vector<std::size_t> idx;
  idx.reserve(g.num_edges());
  for (gca::NodeId u = 0; u < g.num_nodes; ++u) {
    for (std::uint64_t a = g.row_offsets[u]; a < g.row_offsets[u + 1]; ++a) {
      if (g.directed || u < g.col_indices[a]) idx.push_back(a);
    }
  }
  return idx;
}

void CheckCapacity(std::size_t capacity, std::size_t needed, const char *what) {
  if (capacity < needed) {
    throw BufferTooSmall(std::string(what) + " buffer holds " + std::to_string(capacity) + " entries, need " +
                         std::to_string(needed));
  }
}

gca_status EvaluateMatrix(const gca::Matrix &embeddings, const gca_graph *graph, const gca_probe_options *options,
                          gca_probe_result **out) {
  return Guard([&] {
    Require(out, "out");
    const auto &g = graph->data.graph;
    GCA_CHECK(g.labels.has_value() && g.num_classes.has_value(), gca::ErrorCode::kInvalidArgument,
              "graph has no labels to evaluate against");
    const gca_probe_options opts = options ? *options : gca_probe_options_default();
    gca::ProbeOptions po;
    po.runs = opts.runs;
    po.split_seed_base = opts.seed;
    po.threads = std::max(opts.threads, 1);
    std::span<const gca::Split> splits;
    if (opts.use_stored_splits) splits = graph->data.splits;
    auto r = std::make_unique<gca_probe_result>();
    r->result = gca::Evaluate(embeddings, *g.labels, *g.num_classes, po, splits);
    *out = r.release();
  });
}

}  // namespace

extern "C" {

const char *gca_version(void) { return "1.0.0"; }

const char *gca_status_name(gca_status status) {
  if (status == GCA_OK) return "ok";
  if (status == GCA_ERR_BUFFER_TOO_SMALL) return "buffer too small";
  if (status >= GCA_ERR_INVALID_ARGUMENT && status <= GCA_ERR_INTERNAL) {
    return gca::ErrorCodeName(static_cast<gca::ErrorCode>(status));
  }
  return "unknown status";
}

const char *gca_last_error_message(void) { return g_last_error.c_str(); }

gca_status gca_measure_parse(const char *name, gca_measure *out) {
  return Guard([&] {
    Require(name, "name");
    Require(out, "out");
    const auto m = gca::ParseMeasure(name);
    GCA_CHECK(m.has_value(), gca::ErrorCode::kInvalidArgument,
              std::string("unknown centrality measure '") + name + "' (expected degree, eigenvector or pagerank)");
    *out = static_cast<gca_measure>(*m);
  });
}

gca_status gca_graph_load(const char *dir, gca_graph **out) {
  return Guard([&] {
    Require(dir, "dir");
    Require(out, "out");
    auto g = std::make_unique<gca_graph>();
    g->data = gca::LoadDataset(dir);
    *out = g.release();
  });
}

gca_status gca_graph_save(const gca_graph *graph, const char *dir) {
  return Guard([&] {
    Require(graph, "graph");
    Require(dir, "dir");
    gca::SaveDataset(dir, graph->data.graph, graph->data.splits);
  });
}

gca_status gca_graph_sbm(size_t n_per_block, size_t blocks, double p_in, double p_out, size_t feature_dim,
                         double feature_noise, uint64_t seed, gca_graph **out) {
  return Guard([&] {
    Require(out, "out");
    gca::Rng rng(seed);
    auto g = std::make_unique<gca_graph>();
    g->data.graph = gca::SbmGenerate(n_per_block, blocks, p_in, p_out, feature_dim, feature_noise, rng);
    *out = g.release();
  });
}

gca_status gca_graph_karate(gca_graph **out) {
  return Guard([&] {
    Require(out, "out");
    auto g = std::make_unique<gca_graph>();
    g->data.graph = gca::KarateClub();
    *out = g.release();
  });
}

void gca_graph_free(gca_graph *graph) { delete graph; }

size_t gca_graph_num_nodes(const gca_graph *graph) { return graph ? graph->data.graph.num_nodes : 0; }
size_t gca_graph_num_edges(const gca_graph *graph) { return graph ? graph->data.graph.num_edges() : 0; }
size_t gca_graph_num_features(const gca_graph *graph) { return graph ? graph->data.graph.num_features : 0; }
size_t gca_graph_num_classes(const gca_graph *graph) {
  return graph && graph->data.graph.num_classes ? *graph->data.graph.num_classes : 0;
}
int gca_graph_directed(const gca_graph *graph) { return graph && graph->data.graph.directed ? 1 : 0; }
size_t gca_graph_num_splits(const gca_graph *graph) { return graph ? graph->data.splits.size() : 0; }

gca_status gca_node_centrality(const gca_graph *graph, gca_measure measure, double *scores, size_t capacity) {
  return Guard([&] {
    Require(graph, "graph");
    Require(scores, "scores");
    const auto &g = graph->data.graph;
    CheckCapacity(capacity, g.num_nodes, "scores");
    const auto nc = gca::ComputeCentrality(g, ToMeasure(measure));
    std::copy(nc.scores.begin(), nc.scores.end(), scores);
  });
}

gca_status gca_edge_centrality(const gca_graph *graph, gca_measure measure, uint32_t *src, uint32_t *dst,
                               double *weights, size_t capacity, size_t *count) {
  return Guard([&] {
    Require(graph, "graph");
    const auto &g = graph->data.graph;
    if (count) *count = g.num_edges();
    if (!src && !dst && !weights) return;
    CheckCapacity(capacity, g.num_edges(), "edge");
    const auto w = gca::EdgeCentrality(g, gca::ComputeCentrality(g, ToMeasure(measure)));
    const auto sources = g.arc_sources();
    const auto idx = EdgeArcIndex(g);
    for (std::size_t e = 0; e < idx.size(); ++e) {
      if (src) src[e] = sources[idx[e]];
      if (dst) dst[e] = g.col_indices[idx[e]];
      if (weights) weights[e] = w.values[idx[e]];
    }
  });
}

gca_status gca_augment_probs(const gca_graph *graph, gca_measure measure, double p_e, double p_f, double p_tau,
                             int adaptive_topology, int adaptive_attribute, gca_augment_stats *stats,
                             double *edge_probs, size_t edge_capacity, double *feature_probs,
                             size_t feature_capacity) {
  return Guard([&] {
    Require(graph, "graph");
    const auto &g = graph->data.graph;
    const auto plan = gca::BuildPlan(g, ToMeasure(measure), p_e, p_f, p_tau, adaptive_topology != 0,
                                     adaptive_attribute != 0);
    const auto idx = EdgeArcIndex(g);
    std::vector<double> per_edge(idx.size());
    for (std::size_t e = 0; e < idx.size(); ++e) per_edge[e] = plan.edge_drop_probs[idx[e]];
    if (edge_probs) {
      CheckCapacity(edge_capacity, per_edge.size(), "edge probability");
      std::copy(per_edge.begin(), per_edge.end(), edge_probs);
    }
    if (feature_probs) {
      CheckCapacity(feature_capacity, plan.feature_mask_probs.size(), "feature probability");
      std::copy(plan.feature_mask_probs.begin(), plan.feature_mask_probs.end(), feature_probs);
    }
    if (stats) {
      const auto summarize = [](const std::vector<double> &v, double &lo, double &mean, double &hi) {
        lo = mean = hi = 0.0;
        if (v.empty()) return;
        lo = *std::min_element(v.begin(), v.end());
        hi = *std::max_element(v.begin(), v.end());
        double s = 0.0;
        for (double x : v) s += x;
        mean = s / static_cast<double>(v.size());
      };
      stats->num_edges = per_edge.size();
      stats->num_features = plan.feature_mask_probs.size();
      summarize(per_edge, stats->edge_prob_min, stats->edge_prob_mean, stats->edge_prob_max);
      summarize(plan.feature_mask_probs, stats->feature_prob_min, stats->feature_prob_mean, stats->feature_prob_max);
    }
  });
}

gca_status gca_config_default(gca_config **out) {
  return Guard([&] {
    Require(out, "out");
    *out = new gca_config{};
  });
}

gca_status gca_config_load(const char *path, gca_config **out) {
  return Guard([&] {
    Require(path, "path");
    Require(out, "out");
    auto c = std::make_unique<gca_config>();
    c->config = gca::LoadConfig(path);
    *out = c.release();
  });
}

gca_status gca_config_preset(const char *dataset, gca_config **out) {
  return Guard([&] {
    Require(dataset, "dataset");
    Require(out, "out");
    const auto p = gca::Preset(dataset);
    GCA_CHECK(p.has_value(), gca::ErrorCode::kInvalidArgument, std::string("unknown preset '") + dataset + "'");
    *out = new gca_config{*p};
  });
}

void gca_config_free(gca_config *config) { delete config; }

gca_status gca_config_copy(const gca_config *config, gca_config **out) {
  return Guard([&] {
    Require(config, "config");
    Require(out, "out");
    *out = new gca_config{*config};
  });
}

gca_status gca_config_set(gca_config *config, const char *key, const char *value) {
  return Guard([&] {
    Require(config, "config");
    Require(key, "key");
    Require(value, "value");
    config->config = gca::ParseConfig(std::string(key) + " = " + value, config->config);
  });
}

gca_status gca_config_variant(gca_config *config, const char *variant) {
  return Guard([&] {
    Require(config, "config");
    Require(variant, "variant");
    GCA_CHECK(gca::ApplyVariant(variant, config->config), gca::ErrorCode::kInvalidArgument,
              std::string("unknown variant '") + variant + "' (expected gca, gca-t, gca-a or gca-t-a)");
  });
}

gca_status gca_config_format(const gca_config *config, char *buffer, size_t capacity, size_t *needed) {
  std::string text;
  const gca_status s = Guard([&] {
    Require(config, "config");
    text = gca::FormatConfig(config->config);
    if (needed) *needed = text.size() + 1;
  });
  if (s != GCA_OK) return s;
  if (!buffer) return GCA_OK;
  if (capacity < text.size() + 1) {
    g_last_error = "config buffer too small";
    return GCA_ERR_BUFFER_TOO_SMALL;
  }
  std::memcpy(buffer, text.c_str(), text.size() + 1);
  return GCA_OK;
}

gca_status gca_train(const gca_graph *graph, const gca_config *config, gca_progress_fn progress, void *user,
                     gca_model **out) {
  return Guard([&] {
    Require(graph, "graph");
    Require(config, "config");
    Require(out, "out");
    gca::EpochCallback cb;
    if (progress) cb = [&](int epoch, double loss) { progress(epoch, loss, user); };
    auto result = gca::Train(graph->data.graph, config->config, cb);
    *out = new gca_model{std::move(result.params), std::move(result.loss_history)};
  });
}

void gca_model_free(gca_model *model) { delete model; }

gca_status gca_model_save(const gca_model *model, const char *path) {
  return Guard([&] {
    Require(model, "model");
    Require(path, "path");
    gca::SaveCheckpoint(path, model->params);
  });
}

gca_status gca_model_load(const char *path, gca_model **out) {
  return Guard([&] {
    Require(path, "path");
    Require(out, "out");
    *out = new gca_model{gca::LoadCheckpoint(path), {}};
  });
}

size_t gca_model_input_dim(const gca_model *model) {
  return model ? static_cast<size_t>(model->params.input_dim()) : 0;
}

size_t gca_model_output_dim(const gca_model *model) {
  return model ? static_cast<size_t>(model->params.output_dim()) : 0;
}

gca_status gca_model_loss_history(const gca_model *model, double *values, size_t capacity, size_t *count) {
  return Guard([&] {
    Require(model, "model");
    if (count) *count = model->loss_history.size();
    if (!values) return;
    CheckCapacity(capacity, model->loss_history.size(), "loss");
    std::copy(model->loss_history.begin(), model->loss_history.end(), values);
  });
}

gca_status gca_model_embed(const gca_model *model, const gca_graph *graph, double *out, size_t capacity) {
  return Guard([&] {
    Require(model, "model");
    Require(graph, "graph");
    Require(out, "out");
    const auto &g = graph->data.graph;
    GCA_CHECK(static_cast<std::size_t>(model->params.input_dim()) == g.num_features, gca::ErrorCode::kShape,
              "model expects " + std::to_string(model->params.input_dim()) + " features, graph has " +
                  std::to_string(g.num_features));
    const gca::Matrix e = gca::Embed(model->params, g);
    CheckCapacity(capacity, static_cast<std::size_t>(e.size()), "embedding");
    std::copy(e.data(), e.data() + e.size(), out);
  });
}

gca_probe_options gca_probe_options_default(void) { return gca_probe_options{20, 0, 1, 1}; }

gca_status gca_evaluate(const gca_model *model, const gca_graph *graph, const gca_probe_options *options,
                        gca_probe_result **out) {
  gca::Matrix e;
  const gca_status s = Guard([&] {
    Require(graph, "graph");
    if (model) {
      GCA_CHECK(static_cast<std::size_t>(model->params.input_dim()) == graph->data.graph.num_features,
                gca::ErrorCode::kShape, "model and graph disagree on feature count");
      e = gca::Embed(model->params, graph->data.graph);
    } else {
      e = graph->data.graph.feature_matrix();
    }
  });
  if (s != GCA_OK) return s;
  return EvaluateMatrix(e, graph, options, out);
}

gca_status gca_evaluate_embeddings(const double *embeddings, size_t num_nodes, size_t dim, const gca_graph *graph,
                                   const gca_probe_options *options, gca_probe_result **out) {
  gca::Matrix e;
  const gca_status s = Guard([&] {
    Require(embeddings, "embeddings");
    Require(graph, "graph");
    GCA_CHECK(num_nodes == graph->data.graph.num_nodes, gca::ErrorCode::kCountMismatch,
              "embedding rows do not match the graph's node count");
    GCA_CHECK(dim >= 1, gca::ErrorCode::kInvalidArgument, "embedding dimension must be >= 1");
    e = Eigen::Map<const gca::Matrix>(embeddings, static_cast<Eigen::Index>(num_nodes), static_cast<Eigen::Index>(dim));
  });
  if (s != GCA_OK) return s;
  return EvaluateMatrix(e, graph, options, out);
}

void gca_probe_result_free(gca_probe_result *result) { delete result; }

size_t gca_probe_result_runs(const gca_probe_result *r) { return r ? r->result.accuracies.size() : 0; }

double gca_probe_result_accuracy(const gca_probe_result *r, size_t run) {
  return r && run < r->result.accuracies.size() ? r->result.accuracies[run] : 0.0;
}

double gca_probe_result_l2(const gca_probe_result *r, size_t run) {
  return r && run < r->result.chosen_l2.size() ? r->result.chosen_l2[run] : 0.0;
}

uint64_t gca_probe_result_seed(const gca_probe_result *r, size_t run) {
  return r && run < r->result.seeds.size() ? r->result.seeds[run] : 0;
}

double gca_probe_result_mean(const gca_probe_result *r) { return r ? r->result.mean : 0.0; }
double gca_probe_result_std(const gca_probe_result *r) { return r ? r->result.std : 0.0; }

gca_status gca_verify(uint64_t seed, gca_check_fn report, void *user, int *failures) {
  return Guard([&] {
    int failed = 0;
    for (const auto &c : gca::RunSelfChecks(seed)) {
      failed += c.passed ? 0 : 1;
      if (report) report(c.name.c_str(), c.passed ? 1 : 0, c.detail.c_str(), user);
    }
    if (failures) *failures = failed;
  });
}

}  // extern "C"
