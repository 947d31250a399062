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
#ifndef GCA_PROBE_HPP
#define GCA_PROBE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "gca/graph.hpp"

namespace gca {

/// Multinomial logistic regression on frozen embeddings.
///
/// The objective is the mean softmax cross-entropy over the training rows
/// plus (l2 / 2) * ||W||^2, where the bias row is not penalised. Weights are
/// (F' + 1) x C with the bias in the last row.
struct LogisticFit {
  Matrix weights;
  double objective = 0.0;
  double grad_norm = 0.0;  // infinity norm at exit
  int iterations = 0;
  bool converged = false;
};

/// Full-batch gradient descent with Armijo backtracking. Steps are seeded
/// with the Barzilai-Borwein length. Stops at ||grad||_inf < 1e-6 or
/// max_iter; non-convergence is reported through the result.
LogisticFit FitLogistic(const Matrix &embeddings, std::span<const std::int32_t> labels, std::size_t num_classes,
                        std::span<const NodeId> train_idx, double l2, int max_iter = 2000);

/// Value of the regularised objective at `weights`.
double LogisticObjective(const Matrix &embeddings, std::span<const std::int32_t> labels, std::size_t num_classes,
                         std::span<const NodeId> rows, const Matrix &weights, double l2);

std::vector<std::int32_t> PredictLogistic(const Matrix &embeddings, const Matrix &weights);

double Accuracy(const Matrix &embeddings, std::span<const std::int32_t> labels, std::span<const NodeId> rows,
                const Matrix &weights);

inline const std::vector<double> kDefaultL2Grid = {1e-4, 1e-3, 1e-2, 1e-1, 1.0};

struct ProbeOptions {
  int runs = 20;
  std::uint64_t split_seed_base = 0;
  std::vector<double> l2_grid = kDefaultL2Grid;
  int max_iter = 2000;
  int threads = 1;
};

struct ProbeResult {
  std::vector<double> accuracies;
  std::vector<double> chosen_l2;
  std::vector<std::uint64_t> seeds;
  double mean = 0.0;
  double std = 0.0;  // population standard deviation
};

/// Linear evaluation. Run r uses stored_splits[r % size] when splits are
/// given, otherwise a fresh RandomSplit seeded with split_seed_base + r; the
/// l2 strength is picked from the grid by validation accuracy and the test
/// accuracy of that fit is reported.
ProbeResult Evaluate(const Matrix &embeddings, std::span<const std::int32_t> labels, std::size_t num_classes,
                     const ProbeOptions &options, std::span<const Split> stored_splits = {});

}  // namespace gca

#endif  // GCA_PROBE_HPP
