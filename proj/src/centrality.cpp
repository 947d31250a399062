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
#include "gca/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gca/error.hpp"

namespace gca {
namespace {

// out_v = sum over arcs u->v of x_u. For undirected graphs this is A x.
void PushAlongArcs(const Graph &g, const std::vector<double> &x, std::vector<double> &out) {
  std::fill(out.begin(), out.end(), 0.0);
  for (NodeId u = 0; u < g.num_nodes; ++u) {
    const double xu = x[u];
    if (xu == 0.0) continue;
    for (NodeId v : g.neighbors(u)) out[v] += xu;
  }
}

double Norm2(const std::vector<double> &x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

}  // namespace

std::string_view MeasureName(CentralityMeasure m) {
  switch (m) {
    case CentralityMeasure::kDegree:
      return "degree";
    case CentralityMeasure::kEigenvector:
      return "eigenvector";
    case CentralityMeasure::kPageRank:
      return "pagerank";
  }
  return "unknown";
}

std::optional<CentralityMeasure> ParseMeasure(std::string_view name) {
  if (name == "degree") return CentralityMeasure::kDegree;
  if (name == "eigenvector") return CentralityMeasure::kEigenvector;
  if (name == "pagerank") return CentralityMeasure::kPageRank;
  return std::nullopt;
}

NodeCentrality DegreeCentrality(const Graph &graph) {
  NodeCentrality nc{CentralityMeasure::kDegree, std::vector<double>(graph.num_nodes, 0.0)};
  // Undirected graphs store both arcs, so in-degree equals degree.
  for (NodeId v : graph.col_indices) nc.scores[v] += 1.0;
  return nc;
}

NodeCentrality EigenvectorCentrality(const Graph &graph, double tol, int max_iter) {
  GCA_CHECK(graph.num_arcs() > 0, ErrorCode::kInvalidArgument, "eigenvector centrality requires at least one edge");
  const std::size_t n = graph.num_nodes;
  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> next(n);
  double diff = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    PushAlongArcs(graph, x, next);
    for (std::size_t i = 0; i < n; ++i) next[i] += x[i];
    const double norm = Norm2(next);
    diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] /= norm;
      diff = std::max(diff, std::abs(next[i] - x[i]));
    }
    x.swap(next);
    if (diff < tol) {
      return {CentralityMeasure::kEigenvector, std::move(x)};
    }
  }
  throw NotConvergedError("eigenvector centrality did not converge in " + std::to_string(max_iter) + " iterations",
                          diff);
}

NodeCentrality PageRankCentrality(const Graph &graph, double alpha, double tol, int max_iter) {
  GCA_CHECK(alpha >= 0.0 && alpha < 1.0, ErrorCode::kInvalidArgument, "pagerank alpha must lie in [0, 1)");
  const std::size_t n = graph.num_nodes;
  std::vector<double> sigma(n, 1.0);
  std::vector<double> share(n);
  std::vector<double> next(n);
  double diff = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    for (NodeId u = 0; u < n; ++u) {
      const auto d = graph.out_degree(u);
      share[u] = d > 0 ? sigma[u] / static_cast<double>(d) : 0.0;
    }
    PushAlongArcs(graph, share, next);
    diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] = alpha * next[i] + 1.0;
      diff = std::max(diff, std::abs(next[i] - sigma[i]));
    }
    sigma.swap(next);
    if (diff < tol) {
      return {CentralityMeasure::kPageRank, std::move(sigma)};
    }
  }
  throw NotConvergedError("pagerank did not converge in " + std::to_string(max_iter) + " iterations", diff);
}

double PageRankResidual(const Graph &graph, const std::vector<double> &sigma, double alpha) {
  const std::size_t n = graph.num_nodes;
  std::vector<double> share(n), pushed(n);
  for (NodeId u = 0; u < n; ++u) {
    const auto d = graph.out_degree(u);
    share[u] = d > 0 ? sigma[u] / static_cast<double>(d) : 0.0;
  }
  PushAlongArcs(graph, share, pushed);
  double r = 0.0;
  for (std::size_t i = 0; i < n; ++i) r = std::max(r, std::abs(alpha * pushed[i] + 1.0 - sigma[i]));
  return r;
}

NodeCentrality ComputeCentrality(const Graph &graph, CentralityMeasure measure) {
  switch (measure) {
    case CentralityMeasure::kDegree:
      return DegreeCentrality(graph);
    case CentralityMeasure::kEigenvector:
      return EigenvectorCentrality(graph);
    case CentralityMeasure::kPageRank:
      return PageRankCentrality(graph);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown centrality measure");
}

EdgeWeights EdgeCentrality(const Graph &graph, const NodeCentrality &nc) {
  GCA_CHECK(nc.scores.size() == graph.num_nodes, ErrorCode::kShape,
            "centrality has " + std::to_string(nc.scores.size()) + " scores for " +
                std::to_string(graph.num_nodes) + " nodes");
  EdgeWeights w;
  w.values.resize(graph.num_arcs());
  for (NodeId u = 0; u < graph.num_nodes; ++u) {
    for (auto k = graph.row_offsets[u]; k < graph.row_offsets[u + 1]; ++k) {
      const NodeId v = graph.col_indices[k];
      w.values[k] = graph.directed ? nc.scores[v] : 0.5 * (nc.scores[u] + nc.scores[v]);
    }
  }
  return w;
}

}  // namespace gca
