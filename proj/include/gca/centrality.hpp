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
#ifndef GCA_CENTRALITY_HPP
#define GCA_CENTRALITY_HPP

#include <optional>
#include <string_view>
#include <vector>

#include "gca/graph.hpp"

namespace gca {

enum class CentralityMeasure { kDegree, kEigenvector, kPageRank };

std::string_view MeasureName(CentralityMeasure m);
std::optional<CentralityMeasure> ParseMeasure(std::string_view name);

struct NodeCentrality {
  CentralityMeasure measure = CentralityMeasure::kDegree;
  std::vector<double> scores;
};

/// Per-arc weights aligned with Graph::col_indices.
struct EdgeWeights {
  std::vector<double> values;
};

/// Undirected: degree. Directed: in-degree.
NodeCentrality DegreeCentrality(const Graph &graph);

/// Leading eigenvector of A (undirected) or of the incoming-edge operator
/// x_v <- sum_{u->v} x_u (directed), unit L2 norm, nonnegative.
///
/// Power iteration runs on (M + I) so that the Perron root is strictly
/// dominant even for bipartite graphs. Throws NotConvergedError when the
/// step difference stays above `tol` after `max_iter` iterations, and
/// Error(kInvalidArgument) for graphs without edges.
NodeCentrality EigenvectorCentrality(const Graph &graph, double tol = 1e-10, int max_iter = 1000);

/// Fixed point of sigma = alpha * A * D^-1 * sigma + 1 with D the out-degree.
/// Dangling nodes contribute nothing.
NodeCentrality PageRankCentrality(const Graph &graph, double alpha = 0.85, double tol = 1e-10, int max_iter = 1000);

NodeCentrality ComputeCentrality(const Graph &graph, CentralityMeasure measure);

/// Undirected arc (u,v): mean of the endpoint scores. Directed arc u->v: the
/// score of v.
EdgeWeights EdgeCentrality(const Graph &graph, const NodeCentrality &nc);

/// ||sigma - (alpha A D^-1 sigma + 1)||_inf
double PageRankResidual(const Graph &graph, const std::vector<double> &sigma, double alpha = 0.85);

}  // namespace gca

#endif  // GCA_CENTRALITY_HPP
