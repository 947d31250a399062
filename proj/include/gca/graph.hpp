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
#ifndef GCA_GRAPH_HPP
#define GCA_GRAPH_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "gca/rng.hpp"

namespace gca {

using NodeId = std::uint32_t;
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;

struct Edge {
  NodeId src;
  NodeId dst;
};

/// Node-attributed graph in CSR form.
///
/// Undirected graphs store every edge as the arc pair (u,v), (v,u). Rows of
/// `row_offsets` index outgoing arcs. Features are an N x F row-major block
/// of 32-bit reals.
struct Graph {
  std::size_t num_nodes = 0;
  std::size_t num_features = 0;
  bool directed = false;
  std::vector<std::uint64_t> row_offsets{0};
  std::vector<NodeId> col_indices;
  std::vector<float> features;
  std::optional<std::vector<std::int32_t>> labels;
  std::optional<std::size_t> num_classes;
  bool binary_features = true;

  std::size_t num_arcs() const { return col_indices.size(); }
  /// Undirected pair count for undirected graphs, arc count otherwise.
  std::size_t num_edges() const { return directed ? num_arcs() : num_arcs() / 2; }

  std::span<const NodeId> neighbors(NodeId u) const {
    return {col_indices.data() + row_offsets[u], col_indices.data() + row_offsets[u + 1]};
  }
  std::size_t out_degree(NodeId u) const { return row_offsets[u + 1] - row_offsets[u]; }
  float feature(std::size_t node, std::size_t dim) const { return features[node * num_features + dim]; }

  /// Source node of every arc, aligned with col_indices.
  std::vector<NodeId> arc_sources() const;

  /// Feature block widened to 64-bit.
  Matrix feature_matrix() const;
};

/// Counts of input records dropped while building a graph.
struct BuildReport {
  std::size_t duplicate_edges = 0;
  std::size_t self_loops = 0;
};

/// Builds a graph from an edge list. Undirected edges may be listed in either
/// or both directions; duplicates and self-loops are dropped and counted.
/// Throws Error(kOutOfRange) for endpoints >= num_nodes and
/// Error(kNonFinite) for non-finite features.
Graph BuildGraph(std::size_t num_nodes, bool directed, std::span<const Edge> edges, std::vector<float> features,
                 std::size_t num_features, std::optional<std::vector<std::int32_t>> labels = std::nullopt,
                 std::optional<std::size_t> num_classes = std::nullopt, BuildReport *report = nullptr);

/// Edge list with undirected pairs listed once (src < dst) in CSR order.
std::vector<Edge> EdgeList(const Graph &graph);

/// Throws Error describing the first violated invariant.
void ValidateGraph(const Graph &graph);

bool AllBinary(std::span<const float> values);

struct Split {
  std::vector<NodeId> train;
  std::vector<NodeId> val;
  std::vector<NodeId> test;
};

/// 10% / 10% / remainder split of a seeded node permutation. Requires N >= 10.
Split RandomSplit(std::size_t num_nodes, std::uint64_t seed);

/// D^-1/2 (A + I) D^-1/2 in CSR form with 64-bit values.
///
/// Row i aggregates over the in-neighbours of i plus i itself, and d_i is the
/// in-degree plus one. For undirected graphs this is the usual symmetric
/// operator.
struct NormAdjacency {
  std::size_t n = 0;
  std::vector<std::uint64_t> row_offsets{0};
  std::vector<NodeId> col_indices;
  std::vector<double> values;
  std::vector<double> degrees;  // with self-loop

  /// this * dense
  Matrix Multiply(const Matrix &dense) const;
  /// this^T * dense
  Matrix MultiplyTransposed(const Matrix &dense) const;
  Matrix ToDense() const;
};

NormAdjacency NormalizedAdjacency(const Graph &graph);

}  // namespace gca

#endif  // GCA_GRAPH_HPP
