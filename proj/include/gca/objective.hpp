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
#ifndef GCA_OBJECTIVE_HPP
#define GCA_OBJECTIVE_HPP

#include <ostream>
#include <vector>

#include "gca/graph.hpp"

namespace gca {

/// Value and gradients of the two-view contrastive objective.
struct LossReport {
  double objective = 0.0;  // J, to be maximised
  Matrix grad_u;           // dJ/dZ_u
  Matrix grad_v;           // dJ/dZ_v
  double tau = 1.0;
};

/// J = 1/(2N) sum_i [l(u_i, v_i) + l(v_i, u_i)] with
///
///   l(u_i, v_i) = log e^{c(u_i,v_i)/tau} /
///                 (sum_k e^{c(u_i,v_k)/tau} + sum_{k!=i} e^{c(u_i,u_k)/tau})
///
/// where c is cosine similarity. Rows are the already-projected embeddings.
/// Throws Error(kInvalidArgument) for tau <= 0, and for a zero-norm row
/// unless `clamp_zero_rows` is set, in which case row norms are floored at
/// kNormFloor and a zero row has cosine 0 with everything.
LossReport ContrastiveObjective(const Matrix &z_u, const Matrix &z_v, double tau, bool clamp_zero_rows = false);

inline constexpr double kNormFloor = 1e-12;

/// Per-anchor l(u_i, v_i) for view u as anchor.
std::vector<double> PairwiseObjective(const Matrix &z_u, const Matrix &z_v, double tau);

/// One-direction InfoNCE estimate
///   1/N sum_i log e^{c(u_i,v_i)/tau} / (1/N sum_j e^{c(u_i,v_j)/tau}).
double InfoNceEstimate(const Matrix &z_u, const Matrix &z_v, double tau);

/// Distance-form surrogate for -l(u_i, v_i) on unit-norm rows:
///   4 N tau + sum_{j!=i} [(|u_i-v_i|^2 - |u_i-v_j|^2) + (|u_i-v_i|^2 - |u_i-u_j|^2)]
struct TripletReport {
  std::vector<double> surrogate;      // per anchor
  std::vector<double> negative_loss;  // -l(u_i, v_i) per anchor
};

/// Throws Error(kInvalidArgument) when a row is not unit norm within 1e-8.
TripletReport TripletSurrogate(const Matrix &z_u, const Matrix &z_v, double tau);

/// Rows scaled to unit L2 norm. Throws on a zero row, naming it, unless
/// `clamp` is set.
Matrix NormalizeRows(const Matrix &z, const char *which, bool clamp = false);

/// Writes the three tau-scaled similarity blocks (uv, uu, vv) as TSV.
void DumpSimilarities(std::ostream &out, const Matrix &z_u, const Matrix &z_v, double tau);

}  // namespace gca

#endif  // GCA_OBJECTIVE_HPP
