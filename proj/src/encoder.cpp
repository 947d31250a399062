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
#include "gca/encoder.hpp"

#include <cmath>
#include <string>

#include "gca/error.hpp"

namespace gca {
namespace {

double DefaultSlope(Activation act) {
  switch (act) {
    case Activation::kRelu:
      return 0.0;
    case Activation::kPRelu:
      return kPReluInit;
    case Activation::kLeaky:
      return kRReluSlope;
  }
  return 0.0;
}

Matrix Leaky(const Matrix &x, double slope) {
  return x.unaryExpr([slope](double v) { return v > 0.0 ? v : slope * v; });
}

// dL/dx for y = leaky(x); accumulates dL/dslope into *slope_grad.
Matrix LeakyBackward(const Matrix &x, const Matrix &grad_y, double slope, double *slope_grad) {
  Matrix g(x.rows(), x.cols());
  double ds = 0.0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      const double v = x(i, j);
      if (v > 0.0) {
        g(i, j) = grad_y(i, j);
      } else {
        g(i, j) = slope * grad_y(i, j);
        ds += v * grad_y(i, j);
      }
    }
  }
  *slope_grad = ds;
  return g;
}

void CheckFinite(const Matrix &m, const char *layer) {
  GCA_CHECK(m.allFinite(), ErrorCode::kNonFinite, std::string("non-finite output in ") + layer);
}

std::span<double> Span(Matrix &m) { return {m.data(), static_cast<std::size_t>(m.size())}; }
std::span<double> Span(RowVector &v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

}  // namespace

std::string_view ActivationName(Activation a) {
  switch (a) {
    case Activation::kRelu:
      return "relu";
    case Activation::kPRelu:
      return "prelu";
    case Activation::kLeaky:
      return "rrelu";
  }
  return "unknown";
}

std::optional<Activation> ParseActivation(std::string_view name) {
  if (name == "relu") return Activation::kRelu;
  if (name == "prelu") return Activation::kPRelu;
  if (name == "rrelu" || name == "leaky") return Activation::kLeaky;
  return std::nullopt;
}

ModelParams ZeroParams(std::size_t in_dim, std::size_t hidden, std::size_t out_dim, Activation act) {
  const auto f = static_cast<Eigen::Index>(in_dim);
  const auto h = static_cast<Eigen::Index>(hidden);
  const auto o = static_cast<Eigen::Index>(out_dim);
  ModelParams p;
  p.activation = act;
  p.w1 = Matrix::Zero(f, h);
  p.w2 = Matrix::Zero(h, o);
  p.slope1 = p.slope2 = DefaultSlope(act);
  p.proj_w1 = Matrix::Zero(o, o);
  p.proj_b1 = RowVector::Zero(o);
  p.proj_w2 = Matrix::Zero(o, o);
  p.proj_b2 = RowVector::Zero(o);
  return p;
}

std::vector<ParamTensor> Tensors(ModelParams &p) {
  std::vector<ParamTensor> t = {
      {"w1", Span(p.w1), true},           {"w2", Span(p.w2), true},
      {"proj_w1", Span(p.proj_w1), true}, {"proj_b1", Span(p.proj_b1), false},
      {"proj_w2", Span(p.proj_w2), true}, {"proj_b2", Span(p.proj_b2), false},
  };
  if (p.activation == Activation::kPRelu) {
    t.push_back({"slope1", {&p.slope1, 1}, false});
    t.push_back({"slope2", {&p.slope2, 1}, false});
  }
  return t;
}

std::size_t ParamCount(const ModelParams &p) {
  std::size_t n = 0;
  for (const auto &t : Tensors(const_cast<ModelParams &>(p))) n += t.values.size();
  return n;
}

std::vector<double> Flatten(const ModelParams &p) {
  std::vector<double> flat;
  flat.reserve(ParamCount(p));
  for (const auto &t : Tensors(const_cast<ModelParams &>(p))) flat.insert(flat.end(), t.values.begin(), t.values.end());
  return flat;
}

void Unflatten(std::span<const double> flat, ModelParams &p) {
  GCA_CHECK(flat.size() == ParamCount(p), ErrorCode::kShape, "flat parameter vector has the wrong length");
  std::size_t at = 0;
  for (auto &t : Tensors(p)) {
    std::copy(flat.begin() + static_cast<std::ptrdiff_t>(at),
              flat.begin() + static_cast<std::ptrdiff_t>(at + t.values.size()), t.values.begin());
    at += t.values.size();
  }
}

EncodeResult Encode(const ModelParams &params, const NormAdjacency &adj, const Matrix &features) {
  GCA_CHECK(static_cast<std::size_t>(features.rows()) == adj.n, ErrorCode::kShape,
            "feature rows do not match adjacency size");
  GCA_CHECK(features.cols() == params.w1.rows(), ErrorCode::kShape,
            "feature width " + std::to_string(features.cols()) + " != encoder input width " +
                std::to_string(params.w1.rows()));
  EncodeResult r;
  auto &t = r.trace;
  t.input = features;
  // S (X W1) keeps the sparse product at width H.
  t.pre1 = adj.Multiply(features * params.w1);
  t.hidden = Leaky(t.pre1, params.slope1);
  CheckFinite(t.hidden, "GCN layer 1");
  t.agg_hidden = adj.Multiply(t.hidden);
  t.pre2 = t.agg_hidden * params.w2;
  t.output = Leaky(t.pre2, params.slope2);
  CheckFinite(t.output, "GCN layer 2");
  r.embeddings = t.output;
  return r;
}

Matrix Project(const ModelParams &params, const Matrix &embeddings, ProjectorTrace *trace) {
  GCA_CHECK(embeddings.cols() == params.proj_w1.rows(), ErrorCode::kShape, "projector input width mismatch");
  Matrix pre = (embeddings * params.proj_w1).rowwise() + params.proj_b1;
  Matrix hidden = pre.cwiseMax(0.0);
  Matrix out = (hidden * params.proj_w2).rowwise() + params.proj_b2;
  if (trace) {
    trace->input = embeddings;
    trace->pre = std::move(pre);
    trace->hidden = std::move(hidden);
    trace->output = out;
  }
  return out;
}

Gradients BackwardView(const ModelParams &params, const NormAdjacency &adj, const EncoderTrace &enc,
                       const ProjectorTrace &proj, const Matrix &grad_z) {
  GCA_CHECK(grad_z.rows() == proj.output.rows() && grad_z.cols() == proj.output.cols(), ErrorCode::kShape,
            "upstream gradient shape does not match the projector output");
  Gradients g = ZeroParams(static_cast<std::size_t>(params.input_dim()), static_cast<std::size_t>(params.hidden_dim()),
                           static_cast<std::size_t>(params.output_dim()), params.activation);
  // Projector.
  g.proj_w2.noalias() = proj.hidden.transpose() * grad_z;
  g.proj_b2 = grad_z.colwise().sum();
  Matrix grad_hidden = grad_z * params.proj_w2.transpose();
  Matrix grad_pre = grad_hidden.cwiseProduct((proj.pre.array() > 0.0).cast<double>().matrix());
  g.proj_w1.noalias() = proj.input.transpose() * grad_pre;
  g.proj_b1 = grad_pre.colwise().sum();
  Matrix grad_h = grad_pre * params.proj_w1.transpose();

  // GCN layer 2: pre2 = (S hidden) W2.
  Matrix grad_pre2 = LeakyBackward(enc.pre2, grad_h, params.slope2, &g.slope2);
  g.w2.noalias() = enc.agg_hidden.transpose() * grad_pre2;
  Matrix grad_hidden1 = adj.MultiplyTransposed(grad_pre2 * params.w2.transpose());

  // GCN layer 1: pre1 = S (X W1), so dW1 = X^T (S^T dpre1).
  Matrix grad_pre1 = LeakyBackward(enc.pre1, grad_hidden1, params.slope1, &g.slope1);
  g.w1.noalias() = enc.input.transpose() * adj.MultiplyTransposed(grad_pre1);

  if (params.activation != Activation::kPRelu) {
    g.slope1 = 0.0;
    g.slope2 = 0.0;
  }
  return g;
}

void AddInPlace(Gradients &acc, const Gradients &g) {
  acc.w1 += g.w1;
  acc.w2 += g.w2;
  acc.slope1 += g.slope1;
  acc.slope2 += g.slope2;
  acc.proj_w1 += g.proj_w1;
  acc.proj_b1 += g.proj_b1;
  acc.proj_w2 += g.proj_w2;
  acc.proj_b2 += g.proj_b2;
}

Gradients Backward(const ModelParams &params, const ViewPass &view1, const ViewPass &view2) {
  Gradients g = BackwardView(params, *view1.adj, *view1.encoder, *view1.projector, *view1.grad_z);
  AddInPlace(g, BackwardView(params, *view2.adj, *view2.encoder, *view2.projector, *view2.grad_z));
  return g;
}

}  // namespace gca
