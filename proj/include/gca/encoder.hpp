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
#ifndef GCA_ENCODER_HPP
#define GCA_ENCODER_HPP

#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gca/graph.hpp"
#include "gca/rng.hpp"

namespace gca {

enum class Activation { kRelu = 0, kPRelu = 1, kLeaky = 2 };

std::string_view ActivationName(Activation a);
/// Accepts relu, prelu, rrelu (mapped to kLeaky) and leaky.
std::optional<Activation> ParseActivation(std::string_view name);

/// Fixed slope standing in for RReLU: midpoint of its [1/8, 1/3] range.
inline constexpr double kRReluSlope = (1.0 / 8.0 + 1.0 / 3.0) / 2.0;
/// Initial PReLU slope.
inline constexpr double kPReluInit = 0.25;

/// Two-layer GCN encoder followed by a two-layer projection head.
///
/// Weights use the row convention: a layer maps a row vector h to h * W.
///
///   encoder   H = act2(S act1(S X W1) W2)
///   projector Z = relu(H P1 + b1) P2 + b2
struct ModelParams {
  Activation activation = Activation::kRelu;
  Matrix w1;  // F x H
  Matrix w2;  // H x F'
  double slope1 = 0.0;  // negative-side slope per GCN layer (learnable for PReLU)
  double slope2 = 0.0;
  Matrix proj_w1;  // F' x F'
  RowVector proj_b1;
  Matrix proj_w2;  // F' x F'
  RowVector proj_b2;

  Eigen::Index input_dim() const { return w1.rows(); }
  Eigen::Index hidden_dim() const { return w1.cols(); }
  Eigen::Index output_dim() const { return w2.cols(); }
};

/// Gradient record with the same layout as ModelParams.
using Gradients = ModelParams;

/// Zero-initialised parameters with the activation's default slopes.
ModelParams ZeroParams(std::size_t in_dim, std::size_t hidden, std::size_t out_dim, Activation act);

/// One named parameter tensor viewed as a flat span.
struct ParamTensor {
  std::string_view name;
  std::span<double> values;
  bool decayed;  // weight decay applies to weight matrices only
};

/// Tensors in a fixed order: w1, w2, proj_w1, proj_b1, proj_w2, proj_b2, and
/// for PReLU slope1, slope2.
std::vector<ParamTensor> Tensors(ModelParams &p);

std::size_t ParamCount(const ModelParams &p);
std::vector<double> Flatten(const ModelParams &p);
void Unflatten(std::span<const double> flat, ModelParams &p);

struct EncoderTrace {
  Matrix input;      // X
  Matrix pre1;       // S X W1
  Matrix hidden;     // act(pre1)
  Matrix agg_hidden; // S hidden
  Matrix pre2;       // agg_hidden W2
  Matrix output;     // act(pre2)
};

struct ProjectorTrace {
  Matrix input;   // H
  Matrix pre;     // H P1 + b1
  Matrix hidden;  // relu(pre)
  Matrix output;  // Z
};

struct EncodeResult {
  Matrix embeddings;
  EncoderTrace trace;
};

/// Throws Error(kNonFinite) naming the layer whose output is not finite.
EncodeResult Encode(const ModelParams &params, const NormAdjacency &adj, const Matrix &features);

Matrix Project(const ModelParams &params, const Matrix &embeddings, ProjectorTrace *trace = nullptr);

/// Gradients of one view's forward pass given dL/dZ.
Gradients BackwardView(const ModelParams &params, const NormAdjacency &adj, const EncoderTrace &enc,
                       const ProjectorTrace &proj, const Matrix &grad_z);

struct ViewPass {
  const NormAdjacency *adj;
  const EncoderTrace *encoder;
  const ProjectorTrace *projector;
  const Matrix *grad_z;
};

/// Sum of both views' gradients, view 1 first.
Gradients Backward(const ModelParams &params, const ViewPass &view1, const ViewPass &view2);

void AddInPlace(Gradients &acc, const Gradients &g);

}  // namespace gca

#endif  // GCA_ENCODER_HPP
