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
#include "gca/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gca/error.hpp"

namespace gca {

const char *ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "invalid argument";
    case ErrorCode::kIo:
      return "io error";
    case ErrorCode::kFormat:
      return "format error";
    case ErrorCode::kCountMismatch:
      return "count mismatch";
    case ErrorCode::kOutOfRange:
      return "index out of range";
    case ErrorCode::kNonFinite:
      return "non-finite value";
    case ErrorCode::kNotConverged:
      return "not converged";
    case ErrorCode::kDiverged:
      return "diverged";
    case ErrorCode::kShape:
      return "shape mismatch";
    case ErrorCode::kInternal:
      return "internal error";
  }
  return "unknown error";
}

std::vector<NodeId> Graph::arc_sources() const {
  std::vector<NodeId> src(num_arcs());
  for (std::size_t u = 0; u < num_nodes; ++u) {
    std::fill(src.begin() + static_cast<std::ptrdiff_t>(row_offsets[u]),
              src.begin() + static_cast<std::ptrdiff_t>(row_offsets[u + 1]), static_cast<NodeId>(u));
  }
  return src;
}

Matrix Graph::feature_matrix() const {
  Matrix x(num_nodes, num_features);
  for (std::size_t i = 0; i < num_nodes; ++i) {
    for (std::size_t j = 0; j < num_features; ++j) {
      x(i, j) = features[i * num_features + j];
    }
  }
  return x;
}

bool AllBinary(std::span<const float> values) {
  return std::all_of(values.begin(), values.end(), [](float v) { return v == 0.0f || v == 1.0f; });
}

Graph BuildGraph(std::size_t num_nodes, bool directed, std::span<const Edge> edges, std::vector<float> features,
                 std::size_t num_features, std::optional<std::vector<std::int32_t>> labels,
                 std::optional<std::size_t> num_classes, BuildReport *report) {
  GCA_CHECK(features.size() == num_nodes * num_features, ErrorCode::kCountMismatch,
            "feature block has " + std::to_string(features.size()) + " values, expected " +
                std::to_string(num_nodes * num_features));
  for (std::size_t i = 0; i < features.size(); ++i) {
    GCA_CHECK(std::isfinite(features[i]), ErrorCode::kNonFinite,
              "non-finite feature at node " + std::to_string(i / std::max<std::size_t>(num_features, 1)) +
                  ", dim " + std::to_string(i % std::max<std::size_t>(num_features, 1)));
  }

  BuildReport local;
  std::vector<Edge> arcs;
  arcs.reserve(directed ? edges.size() : 2 * edges.size());
  for (const Edge &e : edges) {
    GCA_CHECK(e.src < num_nodes && e.dst < num_nodes, ErrorCode::kOutOfRange,
              "edge (" + std::to_string(e.src) + ", " + std::to_string(e.dst) + ") references a node >= " +
                  std::to_string(num_nodes));
    if (e.src == e.dst) {
      ++local.self_loops;
      continue;
    }
    arcs.push_back(e);
    if (!directed) {
      arcs.push_back({e.dst, e.src});
    }
  }
  auto arc_less = [](const Edge &a, const Edge &b) { return a.src != b.src ? a.src < b.src : a.dst < b.dst; };
  auto arc_eq = [](const Edge &a, const Edge &b) { return a.src == b.src && a.dst == b.dst; };
  std::sort(arcs.begin(), arcs.end(), arc_less);
  const std::size_t before = arcs.size();
  arcs.erase(std::unique(arcs.begin(), arcs.end(), arc_eq), arcs.end());
  // An undirected duplicate removes two arcs.
  local.duplicate_edges = directed ? before - arcs.size() : (before - arcs.size()) / 2;

  Graph g;
  g.num_nodes = num_nodes;
  g.num_features = num_features;
  g.directed = directed;
  g.row_offsets.assign(num_nodes + 1, 0);
  g.col_indices.resize(arcs.size());
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    ++g.row_offsets[arcs[k].src + 1];
    g.col_indices[k] = arcs[k].dst;
  }
  std::partial_sum(g.row_offsets.begin(), g.row_offsets.end(), g.row_offsets.begin());
  g.binary_features = AllBinary(features);
  g.features = std::move(features);

  if (labels) {
    GCA_CHECK(labels->size() == num_nodes, ErrorCode::kCountMismatch,
              "label count " + std::to_string(labels->size()) + " != node count " + std::to_string(num_nodes));
    std::size_t classes = num_classes.value_or(0);
    if (!num_classes) {
      for (auto l : *labels) classes = std::max<std::size_t>(classes, static_cast<std::size_t>(std::max(l, 0)) + 1);
    }
    for (std::size_t i = 0; i < labels->size(); ++i) {
      auto l = (*labels)[i];
      GCA_CHECK(l >= 0 && static_cast<std::size_t>(l) < classes, ErrorCode::kOutOfRange,
                "label " + std::to_string(l) + " of node " + std::to_string(i) + " outside [0, " +
                    std::to_string(classes) + ")");
    }
    g.labels = std::move(labels);
    g.num_classes = classes;
  }
  if (report) *report = local;
  return g;
}

std::vector<Edge> EdgeList(const Graph &graph) {
  std::vector<Edge> out;
  out.reserve(graph.num_edges());
  for (NodeId u = 0; u < graph.num_nodes; ++u) {
    for (NodeId v : graph.neighbors(u)) {
      if (graph.directed || u < v) out.push_back({u, v});
    }
  }
  return out;
}

void ValidateGraph(const Graph &g) {
  GCA_CHECK(g.row_offsets.size() == g.num_nodes + 1, ErrorCode::kShape, "row_offsets must have N+1 entries");
  GCA_CHECK(g.row_offsets.front() == 0 && g.row_offsets.back() == g.col_indices.size(), ErrorCode::kFormat,
            "row_offsets must start at 0 and end at the arc count");
  for (std::size_t u = 0; u < g.num_nodes; ++u) {
    GCA_CHECK(g.row_offsets[u] <= g.row_offsets[u + 1], ErrorCode::kFormat, "row_offsets must be nondecreasing");
    auto nbrs = g.neighbors(static_cast<NodeId>(u));
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      GCA_CHECK(nbrs[k] < g.num_nodes, ErrorCode::kOutOfRange, "column index out of range in row " + std::to_string(u));
      GCA_CHECK(nbrs[k] != u, ErrorCode::kFormat, "self-loop stored at node " + std::to_string(u));
      GCA_CHECK(k == 0 || nbrs[k - 1] < nbrs[k], ErrorCode::kFormat,
                "row " + std::to_string(u) + " is unsorted or has duplicate arcs");
    }
  }
  if (!g.directed) {
    for (NodeId u = 0; u < g.num_nodes; ++u) {
      for (NodeId v : g.neighbors(u)) {
        auto back = g.neighbors(v);
        GCA_CHECK(std::binary_search(back.begin(), back.end(), u), ErrorCode::kFormat,
                  "undirected arc (" + std::to_string(u) + ", " + std::to_string(v) + ") has no reverse");
      }
    }
  }
  GCA_CHECK(g.features.size() == g.num_nodes * g.num_features, ErrorCode::kShape, "feature block size mismatch");
  GCA_CHECK(g.binary_features == AllBinary(g.features), ErrorCode::kFormat, "binary_features flag is stale");
  if (g.labels) {
    GCA_CHECK(g.num_classes.has_value(), ErrorCode::kFormat, "labels without num_classes");
    GCA_CHECK(g.labels->size() == g.num_nodes, ErrorCode::kCountMismatch, "label count mismatch");
    for (auto l : *g.labels) {
      GCA_CHECK(l >= 0 && static_cast<std::size_t>(l) < *g.num_classes, ErrorCode::kOutOfRange, "label out of range");
    }
  }
}

Split RandomSplit(std::size_t num_nodes, std::uint64_t seed) {
  GCA_CHECK(num_nodes >= 10, ErrorCode::kInvalidArgument,
            "random split needs at least 10 nodes, got " + std::to_string(num_nodes));
  std::vector<NodeId> perm(num_nodes);
  std::iota(perm.begin(), perm.end(), NodeId{0});
  Rng rng(seed);
  for (std::size_t i = num_nodes - 1; i > 0; --i) {
    std::swap(perm[i], perm[rng.Index(i + 1)]);
  }
  const std::size_t n_train = num_nodes / 10;
  const std::size_t n_val = num_nodes / 10;
  Split s;
  s.train.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_train));
  s.val.assign(perm.begin() + static_cast<std::ptrdiff_t>(n_train),
               perm.begin() + static_cast<std::ptrdiff_t>(n_train + n_val));
  s.test.assign(perm.begin() + static_cast<std::ptrdiff_t>(n_train + n_val), perm.end());
  return s;
}

NormAdjacency NormalizedAdjacency(const Graph &graph) {
  const std::size_t n = graph.num_nodes;
  NormAdjacency s;
  s.n = n;
  // Row i lists i and every in-neighbour j of i (j -> i). For undirected
  // graphs the in- and out-neighbourhoods coincide.
  std::vector<std::uint64_t> counts(n + 1, 0);
  for (std::size_t v = 0; v < graph.num_arcs(); ++v) ++counts[graph.col_indices[v] + 1];
  for (std::size_t i = 0; i < n; ++i) ++counts[i + 1];
  std::partial_sum(counts.begin(), counts.end(), counts.begin());
  s.row_offsets = counts;
  s.col_indices.resize(counts.back());
  std::vector<std::uint64_t> fill(counts.begin(), counts.end() - 1);
  for (NodeId i = 0; i < n; ++i) s.col_indices[fill[i]++] = i;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v : graph.neighbors(u)) s.col_indices[fill[v]++] = u;
  }
  s.degrees.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto begin = s.col_indices.begin() + static_cast<std::ptrdiff_t>(s.row_offsets[i]);
    auto end = s.col_indices.begin() + static_cast<std::ptrdiff_t>(s.row_offsets[i + 1]);
    std::sort(begin, end);
    s.degrees[i] = static_cast<double>(s.row_offsets[i + 1] - s.row_offsets[i]);
  }
  s.values.resize(s.col_indices.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (auto k = s.row_offsets[i]; k < s.row_offsets[i + 1]; ++k) {
      s.values[k] = 1.0 / std::sqrt(s.degrees[i] * s.degrees[s.col_indices[k]]);
    }
  }
  return s;
}

Matrix NormAdjacency::Multiply(const Matrix &dense) const {
  GCA_CHECK(static_cast<std::size_t>(dense.rows()) == n, ErrorCode::kShape, "NormAdjacency::Multiply row mismatch");
  Matrix out = Matrix::Zero(dense.rows(), dense.cols());
  for (std::size_t i = 0; i < n; ++i) {
    auto row = out.row(static_cast<Eigen::Index>(i));
    for (auto k = row_offsets[i]; k < row_offsets[i + 1]; ++k) {
      row.noalias() += values[k] * dense.row(col_indices[k]);
    }
  }
  return out;
}

Matrix NormAdjacency::MultiplyTransposed(const Matrix &dense) const {
  GCA_CHECK(static_cast<std::size_t>(dense.rows()) == n, ErrorCode::kShape,
            "NormAdjacency::MultiplyTransposed row mismatch");
  Matrix out = Matrix::Zero(dense.rows(), dense.cols());
  for (std::size_t i = 0; i < n; ++i) {
    auto src = dense.row(static_cast<Eigen::Index>(i));
    for (auto k = row_offsets[i]; k < row_offsets[i + 1]; ++k) {
      out.row(col_indices[k]).noalias() += values[k] * src;
    }
  }
  return out;
}

Matrix NormAdjacency::ToDense() const {
  Matrix d = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (auto k = row_offsets[i]; k < row_offsets[i + 1]; ++k) d(static_cast<Eigen::Index>(i), col_indices[k]) = values[k];
  }
  return d;
}

}  // namespace gca
