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
#ifndef GCA_TRAINER_HPP
#define GCA_TRAINER_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gca/augment.hpp"
#include "gca/centrality.hpp"
#include "gca/encoder.hpp"
#include "gca/graph.hpp"
#include "gca/rng.hpp"

namespace gca {

struct TrainConfig {
  double p_e1 = 0.2;
  double p_e2 = 0.4;
  double p_f1 = 0.1;
  double p_f2 = 0.1;
  double p_tau = 0.7;
  double tau = 0.6;
  double learning_rate = 0.01;
  int epochs = 500;
  int hidden_dim = 128;
  Activation activation = Activation::kPRelu;
  double weight_decay = 1e-5;
  CentralityMeasure centrality_measure = CentralityMeasure::kDegree;
  bool adaptive_topology = true;
  bool adaptive_attribute = true;
  std::uint64_t seed = 0;
  // Run the two view passes on separate threads. Results are identical
  // either way.
  int threads = 1;
};

/// Throws Error(kInvalidArgument) naming the offending field.
void ValidateConfig(const TrainConfig &config);

/// Flat "key = value" text, '#' starts a comment. Unknown keys, duplicate
/// keys and malformed values are errors.
TrainConfig ParseConfig(std::string_view text, const TrainConfig &base = {});
TrainConfig LoadConfig(const std::filesystem::path &path);
std::string FormatConfig(const TrainConfig &config);

/// Per-dataset hyperparameter rows: wiki-cs, amazon-computers,
/// amazon-photo, coauthor-cs, coauthor-physics.
std::optional<TrainConfig> Preset(std::string_view dataset);

/// Ablation variants: gca (adaptive/adaptive), gca-t (uniform topology),
/// gca-a (uniform attributes), gca-t-a (uniform/uniform).
bool ApplyVariant(std::string_view variant, TrainConfig &config);

/// I.i.d. uniform on +-sqrt(6 / (rows + cols)).
Matrix GlorotInit(std::size_t rows, std::size_t cols, Rng &rng);

/// Glorot weights, zero biases, default activation slopes.
ModelParams InitParams(std::size_t in_dim, std::size_t hidden, std::size_t out_dim, Activation act, Rng &rng);

struct AdamState {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  std::int64_t step = 0;
  std::vector<std::vector<double>> first;   // one per ParamTensor
  std::vector<std::vector<double>> second;
};

AdamState MakeAdamState(const ModelParams &params);

/// One Adam update with L2 decay folded into the gradient (g += wd * theta)
/// for weight matrices. Tensors named in `frozen` are left untouched.
/// Throws Error(kNonFinite) on a non-finite gradient.
void AdamStep(AdamState &state, ModelParams &params, const Gradients &grads, double lr, double weight_decay,
              const std::vector<std::string> &frozen = {});

struct TrainResult {
  ModelParams params;
  std::vector<double> loss_history;  // -J before each epoch's update
};

using EpochCallback = std::function<void(int epoch, double loss)>;

/// Runs the two-view contrastive training loop. Centralities and both
/// augmentation plans are computed once from `graph`; each epoch samples two
/// fresh views. Fully determined by config.seed.
/// Throws Error(kDiverged) with the epoch index when the objective stops
/// being finite.
TrainResult Train(const Graph &graph, const TrainConfig &config, const EpochCallback &on_epoch = {});

/// Encoder output on the uncorrupted graph.
Matrix Embed(const ModelParams &params, const Graph &graph);

}  // namespace gca

#endif  // GCA_TRAINER_HPP
