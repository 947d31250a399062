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
#ifndef GCA_AUGMENT_HPP
#define GCA_AUGMENT_HPP

#include <span>
#include <vector>

#include "gca/centrality.hpp"
#include "gca/graph.hpp"
#include "gca/rng.hpp"

namespace gca {

/// Removal probabilities for one graph view.
struct AugmentationPlan {
  std::vector<double> edge_drop_probs;     // per arc, CSR order
  std::vector<double> feature_mask_probs;  // per feature dimension
  double p_e = 0.0;
  double p_f = 0.0;
  double p_tau = 0.7;
  bool adaptive_topology = true;
  bool adaptive_attribute = true;
};

/// Log-scaled, mean-normalised probabilities capped at p_tau:
///
///   s = log w,  p = min((s_max - s) / (s_max - mean(s)) * budget, p_tau)
///
/// Zero weights are raised to the smallest positive weight before the log.
/// When every weight is zero, or all are equal, every entry is
/// min(budget, p_tau).
std::vector<double> NormalizeLogWeights(std::span<const double> weights, double budget, double p_tau);

/// Per-arc removal probabilities. For undirected graphs the statistics run
/// over distinct pairs and the result is broadcast to both arcs.
std::vector<double> EdgeDropProbs(const Graph &graph, const EdgeWeights &w, double p_e, double p_tau);

/// sum_u |x_ui| * phi(u) per dimension (the absolute value is a no-op on
/// binary features).
std::vector<double> FeatureWeights(const Graph &graph, const NodeCentrality &nc);

std::vector<double> FeatureMaskProbs(std::span<const double> w_f, double p_f, double p_tau);

/// Builds a plan from precomputed centrality. `nc` is only read for the
/// adaptive parts.
AugmentationPlan BuildPlan(const Graph &graph, const NodeCentrality &nc, double p_e, double p_f, double p_tau,
                           bool adaptive_topology, bool adaptive_attribute);

/// Computes the centrality (only when an adaptive part needs it) then builds
/// the plan.
AugmentationPlan BuildPlan(const Graph &graph, CentralityMeasure measure, double p_e, double p_f, double p_tau,
                           bool adaptive_topology, bool adaptive_attribute);

/// Samples one corrupted view: every edge survives with probability 1 - p
/// (both arcs of an undirected pair together), then one mask over feature
/// dimensions is drawn and applied to every node.
Graph SampleView(const Graph &graph, const AugmentationPlan &plan, Rng &rng);

}  // namespace gca

#endif  // GCA_AUGMENT_HPP
