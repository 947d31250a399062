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
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "gca/gca.h"

namespace {

// Exit codes: 0 success, 1 runtime failure, 2 bad usage or unusable input.
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct CliError {
  int code;
  std::string message;
};

void Check(gca_status s, const std::string &context = {}) {
  if (s == GCA_OK) return;
  const bool input = s == GCA_ERR_INVALID_ARGUMENT || s == GCA_ERR_IO || s == GCA_ERR_FORMAT ||
                     s == GCA_ERR_COUNT_MISMATCH || s == GCA_ERR_OUT_OF_RANGE;
  std::string msg = gca_last_error_message();
  if (!context.empty()) msg = context + ": " + msg;
  throw CliError{input ? kExitUsage : kExitFailure, msg + " [" + gca_status_name(s) + "]"};
}

template <typename T, void (*Free)(T *)>
struct Deleter {
  void operator()(T *p) const { Free(p); }
};
using GraphPtr = std::unique_ptr<gca_graph, Deleter<gca_graph, gca_graph_free>>;
using ConfigPtr = std::unique_ptr<gca_config, Deleter<gca_config, gca_config_free>>;
using ModelPtr = std::unique_ptr<gca_model, Deleter<gca_model, gca_model_free>>;
using ProbePtr = std::unique_ptr<gca_probe_result, Deleter<gca_probe_result, gca_probe_result_free>>;

GraphPtr LoadGraph(const std::string &dir) {
  gca_graph *g = nullptr;
  Check(gca_graph_load(dir.c_str(), &g), "dataset " + dir);
  return GraphPtr(g);
}

gca_measure Measure(const std::string &name) {
  gca_measure m{};
  Check(gca_measure_parse(name.c_str(), &m));
  return m;
}

int EnvThreads() {
  const char *v = std::getenv("GCA_THREADS");
  if (v == nullptr || *v == '\0') return 1;
  char *end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 1) throw CliError{kExitUsage, std::string("GCA_THREADS must be a positive integer, got '") + v + "'"};
  return static_cast<int>(std::min<long>(n, 256));
}

// Options shared by every command that trains.
struct ModelOptions {
  std::string config_path;
  std::string preset;
  std::string variant;
  std::string measure;
  std::vector<std::string> overrides;
  long long seed = -1;
  int epochs = -1;

  void Register(CLI::App *cmd, bool with_seed = true) {
    auto *cfg = cmd->add_option("--config", config_path, "Config file (key = value lines)")->check(CLI::ExistingFile);
    auto *pre = cmd->add_option("--preset", preset,
                                "Start from a dataset preset: wiki-cs, amazon-computers, amazon-photo, coauthor-cs, "
                                "coauthor-physics");
    cfg->excludes(pre);
    cmd->add_option("--variant", variant, "Augmentation variant: gca, gca-t, gca-a, gca-t-a");
    cmd->add_option("--measure", measure, "Centrality measure: degree, eigenvector, pagerank");
    if (with_seed) cmd->add_option("--seed", seed, "Random seed (overrides the config)");
    cmd->add_option("--epochs", epochs, "Epoch count (overrides the config)");
    cmd->add_option("--set", overrides, "Extra key=value config override, repeatable");
  }

  ConfigPtr Build() const {
    gca_config *c = nullptr;
    if (!config_path.empty()) {
      Check(gca_config_load(config_path.c_str(), &c), "config " + config_path);
    } else if (!preset.empty()) {
      Check(gca_config_preset(preset.c_str(), &c));
    } else {
      Check(gca_config_default(&c));
    }
    ConfigPtr cfg(c);
    if (!variant.empty()) Check(gca_config_variant(cfg.get(), variant.c_str()));
    if (!measure.empty()) {
      Measure(measure);
      Check(gca_config_set(cfg.get(), "centrality_measure", measure.c_str()));
    }
    if (seed >= 0) Check(gca_config_set(cfg.get(), "seed", std::to_string(seed).c_str()));
    if (epochs >= 0) Check(gca_config_set(cfg.get(), "epochs", std::to_string(epochs).c_str()));
    for (const auto &kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw CliError{kExitUsage, "--set expects key=value, got '" + kv + "'"};
      Check(gca_config_set(cfg.get(), kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()));
    }
    return cfg;
  }
};

std::string FormatConfig(const gca_config *cfg) {
  size_t needed = 0;
  Check(gca_config_format(cfg, nullptr, 0, &needed));
  std::string text(needed, '\0');
  Check(gca_config_format(cfg, text.data(), text.size(), &needed));
  text.resize(needed - 1);
  return text;
}

std::ofstream OpenOut(const std::string &path) {
  std::ofstream out(path);
  if (!out) throw CliError{kExitUsage, "cannot write " + path};
  out << std::setprecision(10);
  return out;
}

void WriteProbe(std::ostream &out, const gca_probe_result *r) {
  out << "run\tseed\tl2\taccuracy\n";
  for (size_t i = 0; i < gca_probe_result_runs(r); ++i) {
    out << i << "\t" << gca_probe_result_seed(r, i) << "\t" << gca_probe_result_l2(r, i) << "\t"
        << std::fixed << std::setprecision(6) << gca_probe_result_accuracy(r, i) << std::defaultfloat << "\n";
  }
  out << "mean±std\t" << std::fixed << std::setprecision(4) << gca_probe_result_mean(r) << "±"
      << gca_probe_result_std(r) << std::defaultfloat << "\n";
}

struct TrainArgs {
  ModelOptions model;
  std::string dataset;
  std::string out;
  std::string loss_csv;
  bool quiet = false;
};

int RunTrain(const TrainArgs &a) {
  GraphPtr graph = LoadGraph(a.dataset);
  ConfigPtr cfg = a.model.Build();
  const std::string threads = std::to_string(std::min(EnvThreads(), 2));
  Check(gca_config_set(cfg.get(), "threads", threads.c_str()));
  gca_model *m = nullptr;
  struct Progress {
    bool quiet;
  } progress{a.quiet};
  const auto cb = [](int epoch, double loss, void *user) {
    if (static_cast<Progress *>(user)->quiet) return;
    if (epoch % 50 == 0) std::cerr << "epoch " << epoch << " loss " << loss << "\n";
  };
  Check(gca_train(graph.get(), cfg.get(), cb, &progress, &m), "training");
  ModelPtr model(m);
  Check(gca_model_save(model.get(), a.out.c_str()), "checkpoint");

  size_t count = 0;
  Check(gca_model_loss_history(model.get(), nullptr, 0, &count));
  std::vector<double> losses(count);
  Check(gca_model_loss_history(model.get(), losses.data(), losses.size(), &count));
  const std::string csv = a.loss_csv.empty() ? a.out + ".loss.csv" : a.loss_csv;
  auto out = OpenOut(csv);
  out << std::setprecision(17) << "epoch,loss\n";
  for (size_t i = 0; i < losses.size(); ++i) out << i << "," << losses[i] << "\n";
  if (!a.quiet) {
    std::cerr << "wrote " << a.out << " and " << csv;
    if (!losses.empty()) std::cerr << " (loss " << losses.front() << " -> " << losses.back() << ")";
    std::cerr << "\n";
  }
  return 0;
}

struct EvalArgs {
  ModelOptions model;
  std::string checkpoint;
  std::string embeddings;
  std::string dataset;
  std::string out;
  int runs = 20;
  long long seed = 0;
  bool raw = false;
  bool retrain = false;
  bool ignore_splits = false;
};

std::vector<double> ReadEmbeddings(const std::string &path, size_t &rows, size_t &cols) {
  std::ifstream in(path);
  if (!in) throw CliError{kExitUsage, "cannot open embeddings " + path};
  std::vector<double> values;
  rows = cols = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    size_t n = 0;
    double v = 0.0;
    while (ss >> v) {
      values.push_back(v);
      ++n;
    }
    if (!ss.eof()) throw CliError{kExitUsage, "malformed number in " + path + " row " + std::to_string(rows)};
    if (rows == 0) cols = n;
    if (n != cols || n == 0) throw CliError{kExitUsage, "ragged row " + std::to_string(rows) + " in " + path};
    ++rows;
  }
  return values;
}

int RunEval(const EvalArgs &a) {
  GraphPtr graph = LoadGraph(a.dataset);
  gca_probe_options opts = gca_probe_options_default();
  opts.runs = a.runs;
  opts.seed = static_cast<uint64_t>(a.seed);
  opts.threads = EnvThreads();
  opts.use_stored_splits = a.ignore_splits ? 0 : 1;
  gca_probe_result *r = nullptr;
  if (a.retrain) {
    // One encoder per run: train with seed + r, probe once on split seed + r.
    ConfigPtr base = a.model.Build();
    std::vector<double> acc;
    std::ostringstream rows;
    rows << "run\tseed\tl2\taccuracy\n";
    for (int run = 0; run < a.runs; ++run) {
      gca_config *c = nullptr;
      Check(gca_config_copy(base.get(), &c));
      ConfigPtr cfg(c);
      const auto seed = static_cast<uint64_t>(a.seed) + static_cast<uint64_t>(run);
      Check(gca_config_set(cfg.get(), "seed", std::to_string(seed).c_str()));
      gca_model *m = nullptr;
      Check(gca_train(graph.get(), cfg.get(), nullptr, nullptr, &m), "training run " + std::to_string(run));
      ModelPtr model(m);
      gca_probe_options one = opts;
      one.runs = 1;
      one.seed = seed;
      Check(gca_evaluate(model.get(), graph.get(), &one, &r));
      ProbePtr probe(r);
      acc.push_back(gca_probe_result_accuracy(probe.get(), 0));
      rows << run << "\t" << seed << "\t" << gca_probe_result_l2(probe.get(), 0) << "\t" << std::fixed
           << std::setprecision(6) << acc.back() << std::defaultfloat << "\n";
    }
    double mean = 0.0, var = 0.0;
    for (double x : acc) mean += x / static_cast<double>(acc.size());
    for (double x : acc) var += (x - mean) * (x - mean) / static_cast<double>(acc.size());
    rows << "mean±std\t" << std::fixed << std::setprecision(4) << mean << "±" << std::sqrt(var) << "\n";
    if (a.out.empty()) {
      std::cout << rows.str();
    } else {
      OpenOut(a.out) << rows.str();
    }
    return 0;
  }

  if (!a.embeddings.empty()) {
    size_t rows = 0, cols = 0;
    const auto values = ReadEmbeddings(a.embeddings, rows, cols);
    Check(gca_evaluate_embeddings(values.data(), rows, cols, graph.get(), &opts, &r), "evaluation");
  } else if (a.raw) {
    Check(gca_evaluate(nullptr, graph.get(), &opts, &r), "evaluation");
  } else {
    gca_model *m = nullptr;
    Check(gca_model_load(a.checkpoint.c_str(), &m), "checkpoint " + a.checkpoint);
    ModelPtr model(m);
    Check(gca_evaluate(model.get(), graph.get(), &opts, &r), "evaluation");
  }
  ProbePtr probe(r);
  if (a.out.empty()) {
    WriteProbe(std::cout, probe.get());
  } else {
    auto out = OpenOut(a.out);
    WriteProbe(out, probe.get());
    std::cout << "mean±std\t" << std::fixed << std::setprecision(4) << gca_probe_result_mean(probe.get()) << "±"
              << gca_probe_result_std(probe.get()) << "\n";
  }
  return 0;
}

struct CentralityArgs {
  std::string dataset;
  std::string measure = "degree";
  std::string out;
};

int RunCentrality(const CentralityArgs &a) {
  const gca_measure m = Measure(a.measure);
  GraphPtr graph = LoadGraph(a.dataset);
  const size_t n = gca_graph_num_nodes(graph.get());
  std::vector<double> scores(n);
  Check(gca_node_centrality(graph.get(), m, scores.data(), scores.size()), "centrality");
  size_t count = 0;
  Check(gca_edge_centrality(graph.get(), m, nullptr, nullptr, nullptr, 0, &count));
  std::vector<uint32_t> src(count), dst(count);
  std::vector<double> w(count);
  Check(gca_edge_centrality(graph.get(), m, src.data(), dst.data(), w.data(), count, &count), "edge centrality");

  const auto write_nodes = [&](std::ostream &out) {
    out << std::setprecision(12) << "node\t" << a.measure << "\n";
    for (size_t i = 0; i < n; ++i) out << i << "\t" << scores[i] << "\n";
  };
  const auto write_edges = [&](std::ostream &out) {
    out << std::setprecision(12) << "src\tdst\tcentrality\n";
    for (size_t e = 0; e < count; ++e) out << src[e] << "\t" << dst[e] << "\t" << w[e] << "\n";
  };
  if (a.out.empty()) {
    std::cout << "# nodes\n";
    write_nodes(std::cout);
    std::cout << "# edges\n";
    write_edges(std::cout);
  } else {
    std::error_code ec;
    std::filesystem::create_directories(a.out, ec);
    if (ec) throw CliError{kExitUsage, "cannot create " + a.out + ": " + ec.message()};
    auto nodes = OpenOut(a.out + "/nodes.tsv");
    write_nodes(nodes);
    auto edges = OpenOut(a.out + "/edges.tsv");
    write_edges(edges);
  }
  return 0;
}

struct AugmentArgs {
  std::string dataset;
  std::string measure = "degree";
  double p_e = 0.3;
  double p_f = 0.1;
  double p_tau = 0.7;
  bool uniform_topology = false;
  bool uniform_attribute = false;
  std::string out;
};

int RunAugmentStats(const AugmentArgs &a) {
  const gca_measure m = Measure(a.measure);
  GraphPtr graph = LoadGraph(a.dataset);
  const size_t edges = gca_graph_num_edges(graph.get());
  const size_t features = gca_graph_num_features(graph.get());
  std::vector<double> ep(edges), fp(features);
  gca_augment_stats st{};
  Check(gca_augment_probs(graph.get(), m, a.p_e, a.p_f, a.p_tau, !a.uniform_topology, !a.uniform_attribute, &st,
                          ep.data(), ep.size(), fp.data(), fp.size()),
        "augmentation");
  std::cout << std::setprecision(6) << "edges\t" << st.num_edges << "\n"
            << "edge_prob_min\t" << st.edge_prob_min << "\nedge_prob_mean\t" << st.edge_prob_mean
            << "\nedge_prob_max\t" << st.edge_prob_max << "\nfeatures\t" << st.num_features << "\nfeature_prob_min\t"
            << st.feature_prob_min << "\nfeature_prob_mean\t" << st.feature_prob_mean << "\nfeature_prob_max\t"
            << st.feature_prob_max << "\n";
  if (!a.out.empty()) {
    std::vector<uint32_t> src(edges), dst(edges);
    size_t count = 0;
    Check(gca_edge_centrality(graph.get(), m, src.data(), dst.data(), nullptr, edges, &count));
    auto out = OpenOut(a.out);
    out << "src\tdst\tdrop_prob\n";
    for (size_t e = 0; e < edges; ++e) out << src[e] << "\t" << dst[e] << "\t" << ep[e] << "\n";
  }
  return 0;
}

struct SweepArgs {
  ModelOptions model;
  std::string dataset;
  std::string grid = "0.1:0.9:0.1";
  std::string out;
  int runs = 20;
};

std::vector<double> ParseGrid(const std::string &text) {
  double start = 0, stop = 0, step = 0;
  char c1 = 0, c2 = 0;
  std::istringstream ss(text);
  if (!(ss >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' || !ss.eof()) {
    throw CliError{kExitUsage, "--grid expects start:stop:step, got '" + text + "'"};
  }
  if (!(step > 0.0) || stop < start) throw CliError{kExitUsage, "--grid needs step > 0 and stop >= start"};
  std::vector<double> out;
  const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
  for (long i = 0; i <= n; ++i) out.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
  return out;
}

int RunSweep(const SweepArgs &a) {
  const auto grid = ParseGrid(a.grid);
  GraphPtr graph = LoadGraph(a.dataset);
  ConfigPtr base = a.model.Build();
  const size_t k = grid.size();
  std::vector<double> acc(k * k, 0.0);
  std::vector<std::string> failures(k * k);
  std::atomic<size_t> next{0};
  std::mutex log;
  const auto worker = [&] {
    for (size_t cell = next++; cell < k * k; cell = next++) {
      const double pe = grid[cell / k], pf = grid[cell % k];
      try {
        gca_config *c = nullptr;
        Check(gca_config_copy(base.get(), &c));
        ConfigPtr cfg(c);
        std::ostringstream pes, pfs;
        pes << std::setprecision(17) << pe;
        pfs << std::setprecision(17) << pf;
        // Both views share one removal rate and one masking rate.
        for (const char *key : {"p_e1", "p_e2"}) Check(gca_config_set(cfg.get(), key, pes.str().c_str()));
        for (const char *key : {"p_f1", "p_f2"}) Check(gca_config_set(cfg.get(), key, pfs.str().c_str()));
        gca_model *m = nullptr;
        Check(gca_train(graph.get(), cfg.get(), nullptr, nullptr, &m), "training");
        ModelPtr model(m);
        gca_probe_options opts = gca_probe_options_default();
        opts.runs = a.runs;
        gca_probe_result *r = nullptr;
        Check(gca_evaluate(model.get(), graph.get(), &opts, &r), "evaluation");
        ProbePtr probe(r);
        acc[cell] = gca_probe_result_mean(probe.get());
        std::lock_guard<std::mutex> lock(log);
        std::cerr << "p_e=" << pe << " p_f=" << pf << " accuracy " << acc[cell] << "\n";
      } catch (const CliError &e) {
        failures[cell] = e.message;
        acc[cell] = std::nan("");
      }
    }
  };
  const int threads = std::min<int>(EnvThreads(), static_cast<int>(k * k));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto &t : pool) t.join();

  std::ostringstream table;
  table << "p_e\\p_f";
  for (double pf : grid) table << "\t" << pf;
  table << "\n";
  for (size_t i = 0; i < k; ++i) {
    table << grid[i];
    for (size_t j = 0; j < k; ++j) table << "\t" << std::fixed << std::setprecision(4) << acc[i * k + j] << std::defaultfloat;
    table << "\n";
  }
  if (a.out.empty()) {
    std::cout << table.str();
  } else {
    OpenOut(a.out) << table.str();
  }
  for (size_t cell = 0; cell < k * k; ++cell) {
    if (!failures[cell].empty()) {
      std::cerr << "cell p_e=" << grid[cell / k] << " p_f=" << grid[cell % k] << " failed: " << failures[cell] << "\n";
    }
  }
  return std::any_of(failures.begin(), failures.end(), [](const auto &s) { return !s.empty(); }) ? kExitFailure : 0;
}

int RunVerify(long long seed) {
  int failures = 0;
  const auto cb = [](const char *name, int passed, const char *detail, void *) {
    std::cout << (passed ? "[PASS] " : "[FAIL] ") << name << "  " << detail << "\n";
  };
  Check(gca_verify(static_cast<uint64_t>(seed), cb, nullptr, &failures), "verify");
  std::cout << (failures == 0 ? "all checks passed" : std::to_string(failures) + " check(s) failed") << "\n";
  return failures == 0 ? 0 : kExitFailure;
}

struct SbmArgs {
  std::string out;
  size_t n_per_block = 100;
  size_t blocks = 2;
  double p_in = 0.05;
  double p_out = 0.005;
  size_t features = 32;
  double noise = 0.4;
  long long seed = 0;
};

void Describe(const gca_graph *g, const std::string &dir) {
  std::cerr << "wrote " << dir << ": " << gca_graph_num_nodes(g) << " nodes, " << gca_graph_num_edges(g) << " edges, "
            << gca_graph_num_features(g) << " features, " << gca_graph_num_classes(g) << " classes\n";
}

int RunSbm(const SbmArgs &a) {
  gca_graph *g = nullptr;
  Check(gca_graph_sbm(a.n_per_block, a.blocks, a.p_in, a.p_out, a.features, a.noise, static_cast<uint64_t>(a.seed), &g),
        "sbm");
  GraphPtr graph(g);
  Check(gca_graph_save(graph.get(), a.out.c_str()), "save");
  Describe(graph.get(), a.out);
  return 0;
}

int RunKarate(const std::string &out) {
  gca_graph *g = nullptr;
  Check(gca_graph_karate(&g));
  GraphPtr graph(g);
  Check(gca_graph_save(graph.get(), out.c_str()), "save");
  Describe(graph.get(), out);
  return 0;
}

int RunShowConfig(const ModelOptions &m) {
  std::cout << FormatConfig(m.Build().get());
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Graph contrastive learning with adaptive augmentation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", gca_version());

  TrainArgs train;
  auto *train_cmd = app.add_subcommand("train", "Train an encoder and write a checkpoint plus loss CSV");
  train.model.Register(train_cmd);
  train_cmd->add_option("--dataset", train.dataset, "Dataset directory")->required();
  train_cmd->add_option("--out", train.out, "Checkpoint path")->required();
  train_cmd->add_option("--loss-csv", train.loss_csv, "Loss CSV path (default: <out>.loss.csv)");
  train_cmd->add_flag("--quiet", train.quiet, "No progress output");

  EvalArgs eval;
  auto *eval_cmd = app.add_subcommand("eval", "Linear evaluation of embeddings over repeated splits");
  eval_cmd->add_option("--dataset", eval.dataset, "Dataset directory")->required();
  auto *ck = eval_cmd->add_option("--checkpoint", eval.checkpoint, "Trained model checkpoint");
  auto *emb = eval_cmd->add_option("--embeddings", eval.embeddings, "Whitespace-separated embedding matrix, one row per node");
  auto *raw = eval_cmd->add_flag("--raw", eval.raw, "Evaluate the raw node features");
  auto *retrain = eval_cmd->add_flag("--retrain", eval.retrain, "Retrain the encoder for every run (seed + run)");
  eval.model.Register(eval_cmd, false);
  ck->excludes(emb)->excludes(raw)->excludes(retrain);
  emb->excludes(raw)->excludes(retrain);
  raw->excludes(retrain);
  eval_cmd->add_option("--runs", eval.runs, "Number of runs")->check(CLI::Range(1, 100000));
  eval_cmd->add_option("--seed", eval.seed, "Split seed base (and training seed base with --retrain)")
      ->check(CLI::NonNegativeNumber);
  eval_cmd->add_option("--out", eval.out, "Results TSV path (default: standard output)");
  eval_cmd->add_flag("--random-splits", eval.ignore_splits, "Ignore the dataset's stored splits");
  eval_cmd->callback([&] {
    if (eval.checkpoint.empty() && eval.embeddings.empty() && !eval.raw && !eval.retrain) {
      throw CLI::ValidationError("eval", "one of --checkpoint, --embeddings, --raw or --retrain is required");
    }
  });

  CentralityArgs cent;
  auto *cent_cmd = app.add_subcommand("centrality", "Node and edge centrality tables");
  cent_cmd->add_option("--dataset", cent.dataset, "Dataset directory")->required();
  cent_cmd->add_option("--measure", cent.measure, "degree, eigenvector or pagerank");
  cent_cmd->add_option("--out", cent.out, "Directory for nodes.tsv and edges.tsv (default: standard output)");

  AugmentArgs aug;
  auto *aug_cmd = app.add_subcommand("augment-stats", "Edge removal and feature masking probabilities");
  aug_cmd->add_option("--dataset", aug.dataset, "Dataset directory")->required();
  aug_cmd->add_option("--measure", aug.measure, "degree, eigenvector or pagerank");
  aug_cmd->add_option("--p-e", aug.p_e, "Edge removal budget");
  aug_cmd->add_option("--p-f", aug.p_f, "Feature masking budget");
  aug_cmd->add_option("--p-tau", aug.p_tau, "Probability cut-off");
  aug_cmd->add_flag("--uniform-topology", aug.uniform_topology, "Uniform edge removal");
  aug_cmd->add_flag("--uniform-attribute", aug.uniform_attribute, "Uniform feature masking");
  aug_cmd->add_option("--out", aug.out, "Per-edge probability TSV");

  SweepArgs sweep;
  auto *sweep_cmd = app.add_subcommand("sweep", "Accuracy over a tied (p_e, p_f) grid; GCA_THREADS cells in parallel");
  sweep.model.Register(sweep_cmd);
  sweep_cmd->add_option("--dataset", sweep.dataset, "Dataset directory")->required();
  sweep_cmd->add_option("--grid", sweep.grid, "start:stop:step, applied to both p_e and p_f");
  sweep_cmd->add_option("--runs", sweep.runs, "Probe runs per cell")->check(CLI::Range(1, 100000));
  sweep_cmd->add_option("--out", sweep.out, "Matrix TSV path (default: standard output)");

  long long verify_seed = 0;
  auto *verify_cmd = app.add_subcommand("verify", "Numerical self-checks against reference implementations");
  verify_cmd->add_option("--seed", verify_seed, "Seed for the random instances")->check(CLI::NonNegativeNumber);

  SbmArgs sbm;
  auto *sbm_cmd = app.add_subcommand("sbm", "Write a stochastic block model dataset");
  sbm_cmd->add_option("--out", sbm.out, "Output directory")->required();
  sbm_cmd->add_option("--n-per-block", sbm.n_per_block, "Nodes per block");
  sbm_cmd->add_option("--blocks", sbm.blocks, "Number of blocks");
  sbm_cmd->add_option("--p-in", sbm.p_in, "Within-block edge probability");
  sbm_cmd->add_option("--p-out", sbm.p_out, "Between-block edge probability");
  sbm_cmd->add_option("--features", sbm.features, "Feature dimension");
  sbm_cmd->add_option("--noise", sbm.noise, "Feature flip probability");
  sbm_cmd->add_option("--seed", sbm.seed, "Random seed")->check(CLI::NonNegativeNumber);

  std::string karate_out;
  auto *karate_cmd = app.add_subcommand("karate", "Write the karate club dataset");
  karate_cmd->add_option("--out", karate_out, "Output directory")->required();

  ModelOptions show;
  auto *show_cmd = app.add_subcommand("config", "Print the resolved training configuration");
  show.Register(show_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*train_cmd) return RunTrain(train);
    if (*eval_cmd) return RunEval(eval);
    if (*cent_cmd) return RunCentrality(cent);
    if (*aug_cmd) return RunAugmentStats(aug);
    if (*sweep_cmd) return RunSweep(sweep);
    if (*verify_cmd) return RunVerify(verify_seed);
    if (*sbm_cmd) return RunSbm(sbm);
    if (*karate_cmd) return RunKarate(karate_out);
    if (*show_cmd) return RunShowConfig(show);
  } catch (const CliError &e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  }
  return kExitUsage;
}
