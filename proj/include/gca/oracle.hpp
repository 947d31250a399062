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
#ifndef GCA_ORACLE_HPP
#define GCA_ORACLE_HPP

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "gca/encoder.hpp"
#include "gca/graph.hpp"
#include "gca/rng.hpp"

namespace gca {

/// Central differences (f(x + eps e_i) - f(x - eps e_i)) / (2 eps).
/// Throws Error(kNonFinite) when f is not finite at a probe point.
std::vector<double> FiniteDiff(const std::function<double(std::span<const double>)> &f, std::span<const double> x,
                               double eps = 1e-5);

/// Contrastive objective as a literal loop over anchors and candidates.
/// Throws Error(kInvalidArgument) on a zero-norm row.
double NaiveLoss(const Matrix &z_u, const Matrix &z_v, double tau);

struct EigenPair {
  double value = 0.0;
  Vector vector;
  int sweeps = 0;
};

/// Leading (algebraically largest) eigenpair of a small symmetric matrix by
/// cyclic Jacobi rotations, off-diagonal mass driven below 1e-22.
EigenPair DenseEigen(const Matrix &symmetric);

/// All eigenvalues, ascending, same solver.
Vector DenseEigenvalues(const Matrix &symmetric);

/// Stochastic block model with labels equal to block ids. Pairs are visited
/// in (i < j) order, then features row by row: dimension d is 1 when
/// d % blocks equals the node's block, and each entry flips with probability
/// feature_noise.
Graph SbmGenerate(std::size_t n_per_block, std::size_t blocks, double p_in, double p_out, std::size_t feature_dim,
                  double feature_noise, Rng &rng);

/// Zachary's karate club: 34 nodes, 78 edges, identity features, labels
/// 0 for the instructor's faction and 1 for the administrator's.
Graph KarateClub();

/// Random undirected graph on n nodes with a spanning path over a shuffled
/// order plus extra edges with probability p. Always connected for n >= 2.
Graph RandomConnectedGraph(std::size_t n, double p, std::size_t num_features, Rng &rng);

/// Dense adjacency of a graph, arcs as 1.
Matrix DenseAdjacency(const Graph &graph);

/// The objective computed through encoder and projector for two fixed views.
double ModelObjective(const ModelParams &params, const NormAdjacency &adj1, const Matrix &x1,
                      const NormAdjacency &adj2, const Matrix &x2, double tau);

struct GradientCheckReport {
  double relative_error = 0.0;  // ||g - g_fd|| / max(||g||, ||g_fd||)
  double max_abs_error = 0.0;
  double slope_relative_error = 0.0;  // PReLU only, 0 otherwise
  std::size_t num_params = 0;
};

/// Analytic gradient of the objective against finite differences on a
/// 12-node graph with F = 7, H = 6, F' = 5 and two sampled views.
GradientCheckReport GradientCheck(Activation activation, std::uint64_t seed, double tau = 0.5);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Fast self-checks of the numerical core against the routines above.
std::vector<CheckResult> RunSelfChecks(std::uint64_t seed = 0);

}  // namespace gca

#endif  // GCA_ORACLE_HPP
