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
#include "gca/augment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "gca/error.hpp"

namespace gca {
namespace {

void CheckBudget(double budget, double p_tau) {
  GCA_CHECK(budget >= 0.0 && budget < 1.0, ErrorCode::kInvalidArgument,
            "probability budget must lie in [0, 1), got " + std::to_string(budget));
  GCA_CHECK(p_tau > 0.0 && p_tau < 1.0, ErrorCode::kInvalidArgument,
            "cut-off p_tau must lie in (0, 1), got " + std::to_string(p_tau));
}

// Position of arc (u, v) in CSR order.
std::uint64_t ArcIndex(const Graph &g, NodeId u, NodeId v) {
  auto nbrs = g.neighbors(u);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v);
  return g.row_offsets[u] + static_cast<std::uint64_t>(it - nbrs.begin());
}

}  // namespace

std::vector<double> NormalizeLogWeights(std::span<const double> weights, double budget, double p_tau) {
  CheckBudget(budget, p_tau);
  const double uniform = std::min(budget, p_tau);
  std::vector<double> probs(weights.size(), uniform);
  if (weights.empty()) return probs;

  double min_positive = std::numeric_limits<double>::infinity();
  for (double w : weights) {
    GCA_CHECK(w >= 0.0 && std::isfinite(w), ErrorCode::kInvalidArgument, "weights must be finite and nonnegative");
    if (w > 0.0) min_positive = std::min(min_positive, w);
  }
  if (!std::isfinite(min_positive)) return probs;

  std::vector<double> s(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) s[i] = std::log(weights[i] > 0.0 ? weights[i] : min_positive);
  const double s_max = *std::max_element(s.begin(), s.end());
  const double mean = std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
  const double spread = s_max - mean;
  // Equal weights leave only rounding noise in the spread.
  if (spread <= 1e-12 * std::max(1.0, std::abs(s_max))) return probs;

  for (std::size_t i = 0; i < s.size(); ++i) probs[i] = std::min((s_max - s[i]) / spread * budget, p_tau);
  return probs;
}

std::vector<double> EdgeDropProbs(const Graph &graph, const EdgeWeights &w, double p_e, double p_tau) {
  GCA_CHECK(w.values.size() == graph.num_arcs(), ErrorCode::kShape, "edge weights do not match the arc count");
  if (graph.directed) return NormalizeLogWeights(w.values, p_e, p_tau);

  std::vector<double> pair_weights;
  pair_weights.reserve(graph.num_edges());
  for (NodeId u = 0; u < graph.num_nodes; ++u) {
    for (auto k = graph.row_offsets[u]; k < graph.row_offsets[u + 1]; ++k) {
      if (u < graph.col_indices[k]) pair_weights.push_back(w.values[k]);
    }
  }
  const auto pair_probs = NormalizeLogWeights(pair_weights, p_e, p_tau);
  std::vector<double> probs(graph.num_arcs());
  std::size_t next = 0;
  for (NodeId u = 0; u < graph.num_nodes; ++u) {
    for (auto k = graph.row_offsets[u]; k < graph.row_offsets[u + 1]; ++k) {
      const NodeId v = graph.col_indices[k];
      if (u < v) {
        probs[k] = pair_probs[next++];
        probs[ArcIndex(graph, v, u)] = probs[k];
      }
    }
  }
  return probs;
}

std::vector<double> FeatureWeights(const Graph &graph, const NodeCentrality &nc) {
  GCA_CHECK(nc.scores.size() == graph.num_nodes, ErrorCode::kShape, "centrality size does not match node count");
  std::vector<double> w(graph.num_features, 0.0);
  for (std::size_t u = 0; u < graph.num_nodes; ++u) {
    const double phi = nc.scores[u];
    const float *row = graph.features.data() + u * graph.num_features;
    if (graph.binary_features) {
      for (std::size_t i = 0; i < graph.num_features; ++i) {
        if (row[i] != 0.0f) w[i] += phi;
      }
    } else {
      for (std::size_t i = 0; i < graph.num_features; ++i) w[i] += std::abs(static_cast<double>(row[i])) * phi;
    }
  }
  return w;
}

std::vector<double> FeatureMaskProbs(std::span<const double> w_f, double p_f, double p_tau) {
  return NormalizeLogWeights(w_f, p_f, p_tau);
}

AugmentationPlan BuildPlan(const Graph &graph, const NodeCentrality &nc, double p_e, double p_f, double p_tau,
                           bool adaptive_topology, bool adaptive_attribute) {
  CheckBudget(p_e, p_tau);
  CheckBudget(p_f, p_tau);
  AugmentationPlan plan;
  plan.p_e = p_e;
  plan.p_f = p_f;
  plan.p_tau = p_tau;
  plan.adaptive_topology = adaptive_topology;
  plan.adaptive_attribute = adaptive_attribute;
  if (adaptive_topology) {
    plan.edge_drop_probs = EdgeDropProbs(graph, EdgeCentrality(graph, nc), p_e, p_tau);
  } else {
    plan.edge_drop_probs.assign(graph.num_arcs(), std::min(p_e, p_tau));
  }
  if (adaptive_attribute) {
    plan.feature_mask_probs = FeatureMaskProbs(FeatureWeights(graph, nc), p_f, p_tau);
  } else {
    plan.feature_mask_probs.assign(graph.num_features, std::min(p_f, p_tau));
  }
  return plan;
}

AugmentationPlan BuildPlan(const Graph &graph, CentralityMeasure measure, double p_e, double p_f, double p_tau,
                           bool adaptive_topology, bool adaptive_attribute) {
  NodeCentrality nc{measure, {}};
  // Eigenvector centrality is undefined without edges; uniform topology
  // plans never read the edge part.
  if (adaptive_topology || adaptive_attribute) {
    nc = ComputeCentrality(graph, measure);
  }
  return BuildPlan(graph, nc, p_e, p_f, p_tau, adaptive_topology, adaptive_attribute);
}

Graph SampleView(const Graph &graph, const AugmentationPlan &plan, Rng &rng) {
  GCA_CHECK(plan.edge_drop_probs.size() == graph.num_arcs(), ErrorCode::kShape, "plan does not match arc count");
  GCA_CHECK(plan.feature_mask_probs.size() == graph.num_features, ErrorCode::kShape,
            "plan does not match feature count");

  std::vector<char> keep(graph.num_arcs(), 0);
  for (NodeId u = 0; u < graph.num_nodes; ++u) {
    for (auto k = graph.row_offsets[u]; k < graph.row_offsets[u + 1]; ++k) {
      const NodeId v = graph.col_indices[k];
      if (graph.directed || u < v) {
        keep[k] = rng.Bernoulli(1.0 - plan.edge_drop_probs[k]) ? 1 : 0;
        if (!graph.directed) keep[ArcIndex(graph, v, u)] = keep[k];
      }
    }
  }

  Graph view;
  view.num_nodes = graph.num_nodes;
  view.num_features = graph.num_features;
  view.directed = graph.directed;
  view.labels = graph.labels;
  view.num_classes = graph.num_classes;
  view.row_offsets.assign(graph.num_nodes + 1, 0);
  view.col_indices.reserve(graph.num_arcs());
  for (NodeId u = 0; u < graph.num_nodes; ++u) {
    for (auto k = graph.row_offsets[u]; k < graph.row_offsets[u + 1]; ++k) {
      if (keep[k]) view.col_indices.push_back(graph.col_indices[k]);
    }
    view.row_offsets[u + 1] = view.col_indices.size();
  }

  std::vector<float> mask(graph.num_features);
  for (std::size_t i = 0; i < graph.num_features; ++i) {
    mask[i] = rng.Bernoulli(1.0 - plan.feature_mask_probs[i]) ? 1.0f : 0.0f;
  }
  view.features.resize(graph.features.size());
  for (std::size_t u = 0; u < graph.num_nodes; ++u) {
    for (std::size_t i = 0; i < graph.num_features; ++i) {
      const std::size_t at = u * graph.num_features + i;
      view.features[at] = graph.features[at] * mask[i];
    }
  }
  view.binary_features = graph.binary_features || AllBinary(view.features);
  return view;
}

}  // namespace gca
