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
#include "gca/trainer.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "gca/error.hpp"
#include "gca/objective.hpp"

namespace gca {
namespace {

std::string Trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

[[noreturn]] void BadValue(std::size_t line, const std::string &key, const std::string &value, const char *want) {
  throw Error(ErrorCode::kFormat, "config line " + std::to_string(line) + ": " + key + " = \"" + value +
                                      "\" is not " + want);
}

double ToDouble(std::size_t line, const std::string &key, const std::string &value) {
  errno = 0;
  char *end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (value.empty() || end != value.c_str() + value.size() || errno == ERANGE || !std::isfinite(v)) {
    BadValue(line, key, value, "a finite number");
  }
  return v;
}

long long ToInteger(std::size_t line, const std::string &key, const std::string &value) {
  errno = 0;
  char *end = nullptr;
  const long long v = std::strtoll(value.c_str(), &end, 10);
  if (value.empty() || end != value.c_str() + value.size() || errno == ERANGE) {
    BadValue(line, key, value, "an integer");
  }
  return v;
}

bool ToBool(std::size_t line, const std::string &key, const std::string &value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  BadValue(line, key, value, "a boolean");
}

struct ViewState {
  NormAdjacency adj;
  EncoderTrace encoder;
  ProjectorTrace projector;
  Matrix z;
};

void ForwardView(const ModelParams &params, const Graph &view, ViewState &out) {
  out.adj = NormalizedAdjacency(view);
  auto enc = Encode(params, out.adj, view.feature_matrix());
  out.encoder = std::move(enc.trace);
  out.z = Project(params, enc.embeddings, &out.projector);
}

// Shortest text that parses back to the same double.
std::string Shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

void ValidateConfig(const TrainConfig &c) {
  auto prob = [](double p, const char *name) {
    GCA_CHECK(p >= 0.0 && p < 1.0, ErrorCode::kInvalidArgument, std::string(name) + " must lie in [0, 1)");
  };
  prob(c.p_e1, "p_e1");
  prob(c.p_e2, "p_e2");
  prob(c.p_f1, "p_f1");
  prob(c.p_f2, "p_f2");
  GCA_CHECK(c.p_tau > 0.0 && c.p_tau < 1.0, ErrorCode::kInvalidArgument, "p_tau must lie in (0, 1)");
  GCA_CHECK(c.tau > 0.0, ErrorCode::kInvalidArgument, "tau must be positive");
  GCA_CHECK(c.learning_rate > 0.0, ErrorCode::kInvalidArgument, "learning_rate must be positive");
  GCA_CHECK(c.epochs >= 1, ErrorCode::kInvalidArgument, "epochs must be at least 1");
  GCA_CHECK(c.hidden_dim >= 1, ErrorCode::kInvalidArgument, "hidden_dim must be at least 1");
  GCA_CHECK(c.weight_decay >= 0.0, ErrorCode::kInvalidArgument, "weight_decay must be nonnegative");
  GCA_CHECK(c.threads >= 1, ErrorCode::kInvalidArgument, "threads must be at least 1");
}

TrainConfig ParseConfig(std::string_view text, const TrainConfig &base) {
  TrainConfig c = base;
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string stripped = Trim(raw);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    GCA_CHECK(eq != std::string::npos, ErrorCode::kFormat,
              "config line " + std::to_string(line) + ": expected key = value");
    const std::string key = Trim(std::string_view(stripped).substr(0, eq));
    const std::string value = Trim(std::string_view(stripped).substr(eq + 1));
    GCA_CHECK(seen.insert(key).second, ErrorCode::kFormat,
              "config line " + std::to_string(line) + ": duplicate key " + key);

    if (key == "p_e1") {
      c.p_e1 = ToDouble(line, key, value);
    } else if (key == "p_e2") {
      c.p_e2 = ToDouble(line, key, value);
    } else if (key == "p_f1") {
      c.p_f1 = ToDouble(line, key, value);
    } else if (key == "p_f2") {
      c.p_f2 = ToDouble(line, key, value);
    } else if (key == "p_tau") {
      c.p_tau = ToDouble(line, key, value);
    } else if (key == "tau") {
      c.tau = ToDouble(line, key, value);
    } else if (key == "learning_rate") {
      c.learning_rate = ToDouble(line, key, value);
    } else if (key == "epochs") {
      c.epochs = static_cast<int>(ToInteger(line, key, value));
    } else if (key == "hidden_dim") {
      c.hidden_dim = static_cast<int>(ToInteger(line, key, value));
    } else if (key == "activation") {
      auto a = ParseActivation(value);
      if (!a) BadValue(line, key, value, "one of relu, prelu, rrelu");
      c.activation = *a;
    } else if (key == "weight_decay") {
      c.weight_decay = ToDouble(line, key, value);
    } else if (key == "centrality_measure") {
      auto m = ParseMeasure(value);
      if (!m) BadValue(line, key, value, "one of degree, eigenvector, pagerank");
      c.centrality_measure = *m;
    } else if (key == "adaptive_topology") {
      c.adaptive_topology = ToBool(line, key, value);
    } else if (key == "adaptive_attribute") {
      c.adaptive_attribute = ToBool(line, key, value);
    } else if (key == "seed") {
      const auto s = ToInteger(line, key, value);
      if (s < 0) BadValue(line, key, value, "a nonnegative integer");
      c.seed = static_cast<std::uint64_t>(s);
    } else if (key == "threads") {
      c.threads = static_cast<int>(ToInteger(line, key, value));
    } else {
      throw Error(ErrorCode::kFormat, "config line " + std::to_string(line) + ": unknown key " + key);
    }
  }
  ValidateConfig(c);
  return c;
}

TrainConfig LoadConfig(const std::filesystem::path &path) {
  std::ifstream in(path);
  GCA_CHECK(in.good(), ErrorCode::kIo, "cannot read config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return ParseConfig(buf.str());
  } catch (const Error &e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::string FormatConfig(const TrainConfig &c) {
  std::ostringstream out;
  out << "p_e1 = " << Shortest(c.p_e1) << "\n"
      << "p_e2 = " << Shortest(c.p_e2) << "\n"
      << "p_f1 = " << Shortest(c.p_f1) << "\n"
      << "p_f2 = " << Shortest(c.p_f2) << "\n"
      << "p_tau = " << Shortest(c.p_tau) << "\n"
      << "tau = " << Shortest(c.tau) << "\n"
      << "learning_rate = " << Shortest(c.learning_rate) << "\n"
      << "epochs = " << c.epochs << "\n"
      << "hidden_dim = " << c.hidden_dim << "\n"
      << "activation = " << ActivationName(c.activation) << "\n"
      << "weight_decay = " << Shortest(c.weight_decay) << "\n"
      << "centrality_measure = " << MeasureName(c.centrality_measure) << "\n"
      << "adaptive_topology = " << (c.adaptive_topology ? "true" : "false") << "\n"
      << "adaptive_attribute = " << (c.adaptive_attribute ? "true" : "false") << "\n"
      << "seed = " << c.seed << "\n"
      << "threads = " << c.threads << "\n";
  return out.str();
}

std::optional<TrainConfig> Preset(std::string_view dataset) {
  struct Row {
    const char *name;
    double pe1, pe2, pf1, pf2, ptau, tau, lr;
    int epochs, hidden;
    Activation act;
  };
  static constexpr Row kRows[] = {
      {"wiki-cs", 0.2, 0.4, 0.1, 0.1, 0.7, 0.6, 0.01, 3000, 256, Activation::kPRelu},
      {"amazon-computers", 0.5, 0.5, 0.2, 0.1, 0.7, 0.1, 0.01, 1500, 128, Activation::kPRelu},
      {"amazon-photo", 0.3, 0.5, 0.1, 0.1, 0.7, 0.3, 0.1, 2000, 256, Activation::kRelu},
      {"coauthor-cs", 0.3, 0.2, 0.3, 0.4, 0.7, 0.4, 0.0005, 1000, 256, Activation::kLeaky},
      {"coauthor-physics", 0.4, 0.1, 0.1, 0.4, 0.7, 0.5, 0.01, 1500, 128, Activation::kLeaky},
  };
  for (const auto &r : kRows) {
    if (dataset == r.name) {
      TrainConfig c;
      c.p_e1 = r.pe1;
      c.p_e2 = r.pe2;
      c.p_f1 = r.pf1;
      c.p_f2 = r.pf2;
      c.p_tau = r.ptau;
      c.tau = r.tau;
      c.learning_rate = r.lr;
      c.epochs = r.epochs;
      c.hidden_dim = r.hidden;
      c.activation = r.act;
      return c;
    }
  }
  return std::nullopt;
}

bool ApplyVariant(std::string_view variant, TrainConfig &config) {
  if (variant == "gca") {
    config.adaptive_topology = config.adaptive_attribute = true;
  } else if (variant == "gca-t") {
    config.adaptive_topology = false;
    config.adaptive_attribute = true;
  } else if (variant == "gca-a") {
    config.adaptive_topology = true;
    config.adaptive_attribute = false;
  } else if (variant == "gca-t-a") {
    config.adaptive_topology = config.adaptive_attribute = false;
  } else {
    return false;
  }
  return true;
}

Matrix GlorotInit(std::size_t rows, std::size_t cols, Rng &rng) {
  GCA_CHECK(rows > 0 && cols > 0, ErrorCode::kInvalidArgument, "Glorot init needs positive dimensions");
  const double bound = std::sqrt(6.0 / static_cast<double>(rows + cols));
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rng.Uniform(-bound, bound);
  }
  return m;
}

ModelParams InitParams(std::size_t in_dim, std::size_t hidden, std::size_t out_dim, Activation act, Rng &rng) {
  ModelParams p = ZeroParams(in_dim, hidden, out_dim, act);
  p.w1 = GlorotInit(in_dim, hidden, rng);
  p.w2 = GlorotInit(hidden, out_dim, rng);
  p.proj_w1 = GlorotInit(out_dim, out_dim, rng);
  p.proj_w2 = GlorotInit(out_dim, out_dim, rng);
  return p;
}

AdamState MakeAdamState(const ModelParams &params) {
  AdamState s;
  for (const auto &t : Tensors(const_cast<ModelParams &>(params))) {
    s.first.emplace_back(t.values.size(), 0.0);
    s.second.emplace_back(t.values.size(), 0.0);
  }
  return s;
}

void AdamStep(AdamState &state, ModelParams &params, const Gradients &grads, double lr, double weight_decay,
              const std::vector<std::string> &frozen) {
  auto ptensors = Tensors(params);
  auto gtensors = Tensors(const_cast<Gradients &>(grads));
  GCA_CHECK(ptensors.size() == gtensors.size() && ptensors.size() == state.first.size(), ErrorCode::kShape,
            "optimizer state does not match the parameter layout");
  for (std::size_t t = 0; t < ptensors.size(); ++t) {
    GCA_CHECK(ptensors[t].values.size() == gtensors[t].values.size(), ErrorCode::kShape,
              std::string("gradient shape mismatch for ") + std::string(ptensors[t].name));
    for (double g : gtensors[t].values) {
      GCA_CHECK(std::isfinite(g), ErrorCode::kNonFinite,
                std::string("non-finite gradient in ") + std::string(ptensors[t].name));
    }
  }

  ++state.step;
  const double bias1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
  const double bias2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
  for (std::size_t t = 0; t < ptensors.size(); ++t) {
    if (std::find(frozen.begin(), frozen.end(), ptensors[t].name) != frozen.end()) continue;
    auto theta = ptensors[t].values;
    auto grad = gtensors[t].values;
    auto &m = state.first[t];
    auto &v = state.second[t];
    const double wd = ptensors[t].decayed ? weight_decay : 0.0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
      const double g = grad[i] + wd * theta[i];
      m[i] = state.beta1 * m[i] + (1.0 - state.beta1) * g;
      v[i] = state.beta2 * v[i] + (1.0 - state.beta2) * g * g;
      theta[i] -= lr * (m[i] / bias1) / (std::sqrt(v[i] / bias2) + state.eps);
    }
  }
}

TrainResult Train(const Graph &graph, const TrainConfig &config, const EpochCallback &on_epoch) {
  ValidateConfig(config);
  GCA_CHECK(graph.num_nodes >= 1 && graph.num_features >= 1, ErrorCode::kInvalidArgument,
            "training needs at least one node and one feature");

  NodeCentrality nc{config.centrality_measure, {}};
  if (config.adaptive_topology || config.adaptive_attribute) nc = ComputeCentrality(graph, config.centrality_measure);
  const AugmentationPlan plan1 = BuildPlan(graph, nc, config.p_e1, config.p_f1, config.p_tau,
                                           config.adaptive_topology, config.adaptive_attribute);
  const AugmentationPlan plan2 = BuildPlan(graph, nc, config.p_e2, config.p_f2, config.p_tau,
                                           config.adaptive_topology, config.adaptive_attribute);

  Rng rng(config.seed);
  const auto width = static_cast<std::size_t>(config.hidden_dim);
  TrainResult result;
  result.params = InitParams(graph.num_features, width, width, config.activation, rng);
  AdamState adam = MakeAdamState(result.params);
  result.loss_history.reserve(static_cast<std::size_t>(config.epochs));

  ViewState s1, s2;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    // Both views are drawn from the single training stream before any
    // forward pass, so threading never changes the sample.
    const Graph view1 = SampleView(graph, plan1, rng);
    const Graph view2 = SampleView(graph, plan2, rng);
    if (config.threads > 1) {
      std::exception_ptr failure;
      std::thread worker([&] {
        try {
          ForwardView(result.params, view2, s2);
        } catch (...) {
          failure = std::current_exception();
        }
      });
      ForwardView(result.params, view1, s1);
      worker.join();
      if (failure) std::rethrow_exception(failure);
    } else {
      ForwardView(result.params, view1, s1);
      ForwardView(result.params, view2, s2);
    }

    LossReport loss;
    try {
      loss = ContrastiveObjective(s1.z, s2.z, config.tau, /*clamp_zero_rows=*/true);
    } catch (const Error &e) {
      throw Error(ErrorCode::kDiverged, "epoch " + std::to_string(epoch) + ": " + e.what());
    }
    GCA_CHECK(std::isfinite(loss.objective), ErrorCode::kDiverged,
              "objective became non-finite at epoch " + std::to_string(epoch));
    result.loss_history.push_back(-loss.objective);
    if (on_epoch) on_epoch(epoch, -loss.objective);

    // Ascent on J is descent on -J.
    const Matrix grad_z1 = -loss.grad_u;
    const Matrix grad_z2 = -loss.grad_v;
    Gradients g1, g2;
    if (config.threads > 1) {
      std::thread worker([&] { g2 = BackwardView(result.params, s2.adj, s2.encoder, s2.projector, grad_z2); });
      g1 = BackwardView(result.params, s1.adj, s1.encoder, s1.projector, grad_z1);
      worker.join();
    } else {
      g1 = BackwardView(result.params, s1.adj, s1.encoder, s1.projector, grad_z1);
      g2 = BackwardView(result.params, s2.adj, s2.encoder, s2.projector, grad_z2);
    }
    AddInPlace(g1, g2);
    try {
      AdamStep(adam, result.params, g1, config.learning_rate, config.weight_decay);
    } catch (const Error &e) {
      throw Error(ErrorCode::kDiverged, "epoch " + std::to_string(epoch) + ": " + e.what());
    }
  }
  return result;
}

Matrix Embed(const ModelParams &params, const Graph &graph) {
  return Encode(params, NormalizedAdjacency(graph), graph.feature_matrix()).embeddings;
}

}  // namespace gca
