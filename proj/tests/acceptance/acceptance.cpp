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
// Acceptance runner: one [PASS]/[FAIL]/[SKIP] line per criterion, each with
// its own runtime limit. Exits nonzero when any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "gca/augment.hpp"
#include "gca/centrality.hpp"
#include "gca/dataset.hpp"
#include "gca/objective.hpp"
#include "gca/oracle.hpp"
#include "gca/probe.hpp"
#include "gca/trainer.hpp"

using namespace gca;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
  bool skipped = false;
};

int g_failures = 0;

void Criterion(const std::string &name, double limit_seconds, const std::function<Outcome()> &body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception &e) {
    out = {false, std::string("error: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = secs < limit_seconds;
  const char *tag = out.skipped ? "[SKIP]" : (out.passed && in_time ? "[PASS]" : "[FAIL]");
  if (!out.skipped && !(out.passed && in_time)) ++g_failures;
  std::printf("%s %-28s %7.2fs (limit %.0fs)%s  %s\n", tag, name.c_str(), secs, limit_seconds,
              in_time ? "" : " TIME EXCEEDED", out.detail.c_str());
  std::fflush(stdout);
}

std::string Fmt(const char *fmt, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, a, b, c);
  return buf;
}

Matrix RandomMatrix(Eigen::Index r, Eigen::Index c, Rng &rng) {
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.Uniform(-1.0, 1.0);
  return m;
}

double Gaussian(Rng &rng) {
  const double u1 = 1.0 - rng.Uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * rng.Uniform());
}

std::vector<double> Ranks(const std::vector<double> &v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    for (std::size_t k = i; k <= j; ++k) r[order[k]] = 0.5 * static_cast<double>(i + j);
    i = j + 1;
  }
  return r;
}

double Spearman(const std::vector<double> &a, const std::vector<double> &b) {
  const auto ra = Ranks(a), rb = Ranks(b);
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n, mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

Outcome ProbabilityContract() {
  Rng rng(2026);
  int violations = 0;
  std::size_t edges_checked = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng.Index(99);
    Graph g = RandomConnectedGraph(n, rng.Uniform(0.0, 0.2), 1 + rng.Index(20), rng);
    const auto measure = static_cast<CentralityMeasure>(rng.Index(3));
    const double p_e = rng.Uniform(0.0, 0.95), p_f = rng.Uniform(0.0, 0.95), p_tau = rng.Uniform(0.05, 0.95);
    const NodeCentrality nc = ComputeCentrality(g, measure);
    const AugmentationPlan plan = BuildPlan(g, nc, p_e, p_f, p_tau, true, true);
    const EdgeWeights w = EdgeCentrality(g, nc);
    // One entry per undirected pair.
    std::vector<std::pair<double, double>> pairs;
    const auto src = g.arc_sources();
    for (std::size_t a = 0; a < g.num_arcs(); ++a) {
      if (src[a] < g.col_indices[a]) pairs.emplace_back(w.values[a], plan.edge_drop_probs[a]);
    }
    edges_checked += pairs.size();
    std::sort(pairs.begin(), pairs.end());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      violations += pairs[i].second < 0.0 || pairs[i].second > p_tau;
      if (i > 0 && pairs[i].first > pairs[i - 1].first) violations += pairs[i].second > pairs[i - 1].second;
      if (i > 0 && pairs[i].first == pairs[i - 1].first) violations += pairs[i].second != pairs[i - 1].second;
    }
    const double top = pairs.back().first;
    const bool all_equal = pairs.front().first == top;
    if (!all_equal) {
      for (const auto &[wv, p] : pairs) violations += wv == top && p != 0.0;
    }
    for (double p : plan.feature_mask_probs) violations += p < 0.0 || p > p_tau;
  }
  return {violations == 0, Fmt("200 graphs, %.0f edges, %.0f violations", static_cast<double>(edges_checked),
                               violations)};
}

Outcome CentralityOracles() {
  Rng rng(7);
  double eig_err = 0.0, pr_res = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + rng.Index(7);
    const Graph g = RandomConnectedGraph(n, rng.Uniform(0.0, 0.6), 1, rng);
    const auto ev = EigenvectorCentrality(g).scores;
    EigenPair ref = DenseEigen(DenseAdjacency(g));
    if (ref.vector.sum() < 0) ref.vector = -ref.vector;
    for (std::size_t i = 0; i < n; ++i) {
      eig_err = std::max(eig_err, std::abs(ev[i] - ref.vector(static_cast<Eigen::Index>(i))));
    }
    pr_res = std::max(pr_res, PageRankResidual(g, PageRankCentrality(g).scores));
  }
  // Graphs with isolated and dangling nodes for the PageRank residual.
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + rng.Index(30);
    std::vector<Edge> edges;
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = 0; v < n; ++v) {
        if (u != v && rng.Bernoulli(0.1)) edges.push_back({u, v});
      }
    }
    const Graph g = BuildGraph(n, t % 2 == 0, edges, std::vector<float>(n, 1.0f), 1);
    pr_res = std::max(pr_res, PageRankResidual(g, PageRankCentrality(g).scores));
  }
  const Graph cycle = BuildGraph(2, false, std::vector<Edge>{{0, 1}}, {1.0f, 1.0f}, 1);
  const auto pr = PageRankCentrality(cycle).scores;
  const double cycle_err = std::max(std::abs(pr[0] - 20.0 / 3.0), std::abs(pr[1] - 20.0 / 3.0));
  return {eig_err < 1e-6 && pr_res < 1e-8 && cycle_err < 1e-6,
          Fmt("eigenvector max err %.2e, pagerank residual %.2e, 2-cycle err %.2e", eig_err, pr_res, cycle_err)};
}

Outcome KarateProperty() {
  const Graph g = KarateClub();
  bool ok = true;
  std::ostringstream detail;
  for (auto m : {CentralityMeasure::kDegree, CentralityMeasure::kEigenvector, CentralityMeasure::kPageRank}) {
    const auto w = EdgeCentrality(g, ComputeCentrality(g, m));
    const auto src = g.arc_sources();
    double hub = 0.0, rest = 0.0;
    int nh = 0, nr = 0;
    for (std::size_t a = 0; a < g.num_arcs(); ++a) {
      const NodeId u = src[a], v = g.col_indices[a];
      if (u > v) continue;
      const bool coach = u == 0 || v == 0 || u == 33 || v == 33;
      (coach ? hub : rest) += w.values[a];
      ++(coach ? nh : nr);
    }
    hub /= nh;
    rest /= nr;
    ok = ok && hub > rest;
    detail << MeasureName(m) << " " << hub << " > " << rest << "; ";
  }
  return {ok, detail.str()};
}

Outcome GradientAgreement() {
  double worst = 0.0, slope = 0.0;
  for (auto act : {Activation::kRelu, Activation::kPRelu}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto r = GradientCheck(act, seed);
      worst = std::max(worst, r.relative_error);
      slope = std::max(slope, r.slope_relative_error);
    }
  }
  return {worst < 1e-4 && slope < 1e-4, Fmt("relu+prelu max rel err %.2e, slope rel err %.2e", worst, slope)};
}

Outcome LossEquivalence() {
  Rng rng(11);
  double worst = 0.0;
  bool symmetric = true;
  for (int t = 0; t < 500; ++t) {
    const auto n = static_cast<Eigen::Index>(1 + rng.Index(50));
    const auto d = static_cast<Eigen::Index>(1 + rng.Index(16));
    const Matrix u = RandomMatrix(n, d, rng), v = RandomMatrix(n, d, rng);
    const double tau = rng.Uniform(0.05, 1.5);
    const double j = ContrastiveObjective(u, v, tau).objective;
    worst = std::max(worst, std::abs(j - NaiveLoss(u, v, tau)));
    symmetric = symmetric && j == ContrastiveObjective(v, u, tau).objective;
  }
  return {worst < 1e-10 && symmetric, Fmt("500 batches, max |J - naive| %.2e, symmetry ", worst) +
                                          (symmetric ? "exact" : "BROKEN")};
}

Outcome InfoNceBound() {
  Rng rng(13);
  double min_gap = 1e300;
  for (int t = 0; t < 100; ++t) {
    const auto n = static_cast<Eigen::Index>(1 + rng.Index(64));
    const Matrix u = RandomMatrix(n, 8, rng);
    // Mix of random and correlated views.
    const Matrix v = rng.Uniform() < 0.5 ? RandomMatrix(n, 8, rng) : Matrix(u + 0.3 * RandomMatrix(n, 8, rng));
    const double tau = rng.Uniform(0.05, 1.5);
    const double gap = InfoNceEstimate(u, v, tau) + InfoNceEstimate(v, u, tau) -
                       2.0 * ContrastiveObjective(u, v, tau).objective;
    min_gap = std::min(min_gap, gap);
  }
  return {min_gap >= -1e-9, Fmt("100 batches, min I(U,V) + I(V,U) - 2J = %.3e", min_gap)};
}

Matrix UnitRows(Matrix m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) m.row(i).normalize();
  return m;
}

Outcome TripletRegime() {
  Rng rng(17);
  const Eigen::Index n = 32, d = 128;
  const double tau = 0.05;
  double worst = 1.0;
  int accepted = 0, rejected = 0;
  while (accepted < 50) {
    Matrix base(n, d), noise(n, d);
    for (Eigen::Index i = 0; i < base.size(); ++i) {
      base.data()[i] = Gaussian(rng);
      noise.data()[i] = Gaussian(rng);
    }
    const Matrix u = UnitRows(base);
    Matrix v(n, d);
    for (Eigen::Index i = 0; i < n; ++i) {
      // Orthogonal direction, then a per-anchor alignment angle.
      RowVector w = noise.row(i) - noise.row(i).dot(u.row(i)) * u.row(i);
      w.normalize();
      const double cos_pos = rng.Uniform(0.5, 1.0);
      v.row(i) = cos_pos * u.row(i) + std::sqrt(1.0 - cos_pos * cos_pos) * w;
    }
    const Matrix vn = UnitRows(v);
    const Matrix uv = u * vn.transpose(), uu = u * u.transpose();
    double min_pos = 1e300, max_neg = -1e300;
    for (Eigen::Index i = 0; i < n; ++i) {
      min_pos = std::min(min_pos, uv(i, i));
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j != i) max_neg = std::max({max_neg, uv(i, j), uu(i, j)});
      }
    }
    if (min_pos - max_neg < 6.0 * tau) {
      ++rejected;
      continue;
    }
    const TripletReport r = TripletSurrogate(u, vn, tau);
    worst = std::min(worst, Spearman(r.negative_loss, r.surrogate));
    ++accepted;
  }
  return {worst > 0.95, Fmt("50 instances (%.0f rejected), min Spearman %.4f", rejected, worst)};
}

Graph SmokeGraph(std::uint64_t seed) {
  Rng rng(1000 + seed);
  return SbmGenerate(100, 2, 0.05, 0.005, 32, 0.4, rng);
}

TrainConfig SmokeConfig(std::uint64_t seed) {
  TrainConfig c;
  c.epochs = 200;
  c.hidden_dim = 32;
  c.centrality_measure = CentralityMeasure::kDegree;
  c.seed = seed;
  return c;
}

double ProbeMean(const Matrix &e, const Graph &g) {
  ProbeOptions opt;
  opt.runs = 20;
  opt.threads = 2;
  return Evaluate(e, *g.labels, *g.num_classes, opt).mean;
}

Outcome Smoke() {
  double model = 0.0, raw = 0.0;
  const int seeds = 5;
  for (int s = 0; s < seeds; ++s) {
    const Graph g = SmokeGraph(static_cast<std::uint64_t>(s));
    TrainConfig c = SmokeConfig(static_cast<std::uint64_t>(s));
    c.threads = 2;
    model += ProbeMean(Embed(Train(g, c).params, g), g) / seeds;
    raw += ProbeMean(g.feature_matrix(), g) / seeds;
  }
  return {model >= raw && model >= 0.85,
          Fmt("5 seeds, embeddings %.4f vs raw features %.4f (need >= raw and >= 0.85)", model, raw)};
}

Outcome Ablation() {
  double adaptive = 0.0, uniform = 0.0;
  const int seeds = 10;
  for (int s = 0; s < seeds; ++s) {
    const Graph g = SmokeGraph(static_cast<std::uint64_t>(s));
    TrainConfig c = SmokeConfig(static_cast<std::uint64_t>(s));
    c.threads = 2;
    adaptive += ProbeMean(Embed(Train(g, c).params, g), g) / seeds;
    ApplyVariant("gca-t-a", c);
    uniform += ProbeMean(Embed(Train(g, c).params, g), g) / seeds;
  }
  return {adaptive >= uniform - 0.01,
          Fmt("10 seeds, adaptive %.4f vs uniform %.4f (need >= uniform - 0.01)", adaptive, uniform)};
}

Outcome AmazonPhoto() {
  const char *dir = std::getenv("GCA_AMAZON_PHOTO_DIR");
  if (!dir || !*dir) return {false, "set GCA_AMAZON_PHOTO_DIR to a converted dataset directory to run", true};
  const Dataset data = LoadDataset(dir);
  TrainConfig c = *Preset("amazon-photo");
  c.threads = 2;
  const Matrix e = Embed(Train(data.graph, c).params, data.graph);
  ProbeOptions opt;
  opt.runs = 20;
  opt.threads = 4;
  const ProbeResult r = Evaluate(e, *data.graph.labels, *data.graph.num_classes, opt, data.splits);
  const double acc = 100.0 * r.mean;
  return {std::abs(acc - 92.49) <= 1.0, Fmt("accuracy %.2f ± %.2f (target 92.49 ± 1.0)", acc, 100.0 * r.std)};
}

}  // namespace

int main() {
  Criterion("probability-contract", 10, ProbabilityContract);
  Criterion("centrality-oracles", 30, CentralityOracles);
  Criterion("karate-coach-edges", 1, KarateProperty);
  Criterion("gradient-check", 60, GradientAgreement);
  Criterion("loss-equivalence", 30, LossEquivalence);
  Criterion("infonce-bound", 10, InfoNceBound);
  Criterion("triplet-regime", 10, TripletRegime);
  Criterion("sbm-smoke", 300, Smoke);
  Criterion("ablation-direction", 900, Ablation);
  Criterion("amazon-photo-reproduction", 36000, AmazonPhoto);
  std::printf("%s\n", g_failures == 0 ? "all acceptance criteria passed" : "acceptance criteria FAILED");
  return g_failures == 0 ? 0 : 1;
}
