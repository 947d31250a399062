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
#include "gca/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "gca/augment.hpp"
#include "gca/centrality.hpp"
#include "gca/error.hpp"
#include "gca/objective.hpp"
#include "gca/trainer.hpp"

namespace gca {
namespace {

double Cosine(const Matrix &a, Eigen::Index i, const Matrix &b, Eigen::Index k) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (Eigen::Index d = 0; d < a.cols(); ++d) {
    dot += a(i, d) * b(k, d);
    na += a(i, d) * a(i, d);
    nb += b(k, d) * b(k, d);
  }
  GCA_CHECK(na > 0.0 && nb > 0.0, ErrorCode::kInvalidArgument, "zero-norm row in naive loss");
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

// One anchor's term, anchor rows from `a`, positives and inter-view
// negatives from `b`, intra-view negatives from `a`.
double NaiveTerm(const Matrix &a, const Matrix &b, Eigen::Index i, double tau) {
  const double pos = std::exp(Cosine(a, i, b, i) / tau);
  double denom = 0.0;
  for (Eigen::Index k = 0; k < a.rows(); ++k) denom += std::exp(Cosine(a, i, b, k) / tau);
  for (Eigen::Index k = 0; k < a.rows(); ++k) {
    if (k != i) denom += std::exp(Cosine(a, i, a, k) / tau);
  }
  return std::log(pos / denom);
}

std::string Fmt(double v) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << v;
  return s.str();
}

}  // namespace

std::vector<double> FiniteDiff(const std::function<double(std::span<const double>)> &f, std::span<const double> x,
                               double eps) {
  GCA_CHECK(eps > 0.0, ErrorCode::kInvalidArgument, "finite difference step must be positive");
  std::vector<double> point(x.begin(), x.end());
  std::vector<double> grad(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) {
    const double keep = point[i];
    point[i] = keep + eps;
    const double up = f(point);
    point[i] = keep - eps;
    const double down = f(point);
    point[i] = keep;
    GCA_CHECK(std::isfinite(up) && std::isfinite(down), ErrorCode::kNonFinite,
              "function is not finite near coordinate " + std::to_string(i));
    grad[i] = (up - down) / (2.0 * eps);
  }
  return grad;
}

double NaiveLoss(const Matrix &z_u, const Matrix &z_v, double tau) {
  GCA_CHECK(tau > 0.0, ErrorCode::kInvalidArgument, "temperature must be positive");
  GCA_CHECK(z_u.rows() == z_v.rows() && z_u.cols() == z_v.cols(), ErrorCode::kShape, "view shapes differ");
  const auto n = z_u.rows();
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    total += NaiveTerm(z_u, z_v, i, tau) + NaiveTerm(z_v, z_u, i, tau);
  }
  return total / (2.0 * static_cast<double>(n));
}

namespace {

// Cyclic Jacobi on a copy; returns eigenvalues on the diagonal, vectors in
// the columns of `vectors`.
Matrix JacobiSweeps(const Matrix &symmetric, Matrix &vectors, int &sweeps) {
  GCA_CHECK(symmetric.rows() == symmetric.cols(), ErrorCode::kShape, "matrix must be square");
  GCA_CHECK(symmetric.rows() <= 64, ErrorCode::kInvalidArgument, "dense eigensolver supports N <= 64");
  GCA_CHECK((symmetric - symmetric.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + symmetric.cwiseAbs().maxCoeff()),
            ErrorCode::kInvalidArgument, "matrix must be symmetric");
  const auto n = symmetric.rows();
  Matrix a = symmetric;
  vectors = Matrix::Identity(n, n);
  for (sweeps = 0; sweeps < 100; ++sweeps) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    }
    if (off < 1e-22 * std::max(1.0, a.squaredNorm())) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = vectors(k, p), vkq = vectors(k, q);
          vectors(k, p) = c * vkp - s * vkq;
          vectors(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  return a;
}

}  // namespace

EigenPair DenseEigen(const Matrix &symmetric) {
  Matrix vectors;
  EigenPair out;
  const Matrix a = JacobiSweeps(symmetric, vectors, out.sweeps);
  Eigen::Index best = 0;
  a.diagonal().maxCoeff(&best);
  out.value = a(best, best);
  out.vector = vectors.col(best);
  out.vector /= out.vector.norm();
  return out;
}

Vector DenseEigenvalues(const Matrix &symmetric) {
  Matrix vectors;
  int sweeps = 0;
  Vector d = JacobiSweeps(symmetric, vectors, sweeps).diagonal();
  std::sort(d.data(), d.data() + d.size());
  return d;
}

Graph SbmGenerate(std::size_t n_per_block, std::size_t blocks, double p_in, double p_out, std::size_t feature_dim,
                  double feature_noise, Rng &rng) {
  GCA_CHECK(blocks >= 1 && n_per_block >= 1, ErrorCode::kInvalidArgument, "need at least one non-empty block");
  GCA_CHECK(p_in >= 0.0 && p_in <= 1.0 && p_out >= 0.0 && p_out <= 1.0, ErrorCode::kInvalidArgument,
            "edge probabilities must lie in [0, 1]");
  GCA_CHECK(blocks == 1 || p_in > p_out, ErrorCode::kInvalidArgument, "p_in must exceed p_out");
  GCA_CHECK(feature_dim >= 1, ErrorCode::kInvalidArgument, "feature_dim must be >= 1");
  GCA_CHECK(feature_noise >= 0.0 && feature_noise <= 1.0, ErrorCode::kInvalidArgument,
            "feature_noise must lie in [0, 1]");
  const std::size_t n = n_per_block * blocks;
  std::vector<std::int32_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<std::int32_t>(i / n_per_block);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.Bernoulli(labels[i] == labels[j] ? p_in : p_out)) {
        edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j)});
      }
    }
  }
  std::vector<float> features(n * feature_dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 0; d < feature_dim; ++d) {
      bool bit = d % blocks == static_cast<std::size_t>(labels[i]);
      if (rng.Bernoulli(feature_noise)) bit = !bit;
      features[i * feature_dim + d] = bit ? 1.0f : 0.0f;
    }
  }
  return BuildGraph(n, false, edges, std::move(features), feature_dim, std::move(labels), blocks);
}

Graph KarateClub() {
  static const std::vector<std::vector<NodeId>> kAdj = {
      {1, 2, 3, 4, 5, 6, 7, 8, 10, 11, 12, 13, 17, 19, 21, 31},
      {2, 3, 7, 13, 17, 19, 21, 30},
      {3, 7, 8, 9, 13, 27, 28, 32},
      {7, 12, 13},
      {6, 10},
      {6, 10, 16},
      {16},
      {},
      {30, 32, 33},
      {33},
      {},
      {},
      {},
      {33},
      {32, 33},
      {32, 33},
      {},
      {},
      {32, 33},
      {33},
      {32, 33},
      {},
      {32, 33},
      {25, 27, 29, 32, 33},
      {25, 27, 31},
      {31},
      {29, 33},
      {33},
      {31, 33},
      {32, 33},
      {32, 33},
      {32, 33},
      {33},
  };
  std::vector<Edge> edges;
  for (NodeId u = 0; u < kAdj.size(); ++u) {
    for (NodeId v : kAdj[u]) edges.push_back({u, v});
  }
  constexpr std::size_t kN = 34;
  std::vector<float> features(kN * kN, 0.0f);
  for (std::size_t i = 0; i < kN; ++i) features[i * kN + i] = 1.0f;
  std::vector<std::int32_t> labels(kN, 1);
  for (int i : {0, 1, 2, 3, 4, 5, 6, 7, 8, 10, 11, 12, 13, 16, 17, 19, 21}) labels[static_cast<std::size_t>(i)] = 0;
  return BuildGraph(kN, false, edges, std::move(features), kN, std::move(labels), 2);
}

Graph RandomConnectedGraph(std::size_t n, double p, std::size_t num_features, Rng &rng) {
  GCA_CHECK(n >= 1, ErrorCode::kInvalidArgument, "need at least one node");
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.Index(i)]);
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < n; ++i) edges.push_back({order[i - 1], order[i]});
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      if (rng.Bernoulli(p)) edges.push_back({i, j});
    }
  }
  std::vector<float> features(n * num_features);
  for (auto &f : features) f = rng.Bernoulli(0.5) ? 1.0f : 0.0f;
  return BuildGraph(n, false, edges, std::move(features), num_features);
}

Matrix DenseAdjacency(const Graph &graph) {
  const auto n = static_cast<Eigen::Index>(graph.num_nodes);
  Matrix a = Matrix::Zero(n, n);
  for (NodeId u = 0; u < graph.num_nodes; ++u) {
    for (NodeId v : graph.neighbors(u)) a(u, v) = 1.0;
  }
  return a;
}

double ModelObjective(const ModelParams &params, const NormAdjacency &adj1, const Matrix &x1,
                      const NormAdjacency &adj2, const Matrix &x2, double tau) {
  const Matrix z1 = Project(params, Encode(params, adj1, x1).embeddings);
  const Matrix z2 = Project(params, Encode(params, adj2, x2).embeddings);
  return ContrastiveObjective(z1, z2, tau).objective;
}

GradientCheckReport GradientCheck(Activation activation, std::uint64_t seed, double tau) {
  constexpr std::size_t kN = 12, kF = 7, kH = 6, kOut = 5;
  Rng rng(seed);
  const Graph g = RandomConnectedGraph(kN, 0.25, kF, rng);
  // Dense real features keep every unit active on some rows.
  Graph dense = g;
  for (auto &f : dense.features) f = static_cast<float>(rng.Uniform(-1.0, 1.0));
  dense.binary_features = false;
  const AugmentationPlan plan = BuildPlan(dense, CentralityMeasure::kDegree, 0.3, 0.2, 0.7, true, true);
  const Graph v1 = SampleView(dense, plan, rng);
  const Graph v2 = SampleView(dense, plan, rng);
  const NormAdjacency a1 = NormalizedAdjacency(v1), a2 = NormalizedAdjacency(v2);
  const Matrix x1 = v1.feature_matrix(), x2 = v2.feature_matrix();

  ModelParams params = InitParams(kF, kH, kOut, activation, rng);
  for (auto &b : params.proj_b1) b = rng.Uniform(-0.1, 0.1);
  for (auto &b : params.proj_b2) b = rng.Uniform(-0.1, 0.1);
  if (activation == Activation::kPRelu) {
    params.slope1 = rng.Uniform(0.1, 0.4);
    params.slope2 = rng.Uniform(0.1, 0.4);
  }

  EncodeResult e1 = Encode(params, a1, x1), e2 = Encode(params, a2, x2);
  ProjectorTrace p1, p2;
  const Matrix z1 = Project(params, e1.embeddings, &p1);
  const Matrix z2 = Project(params, e2.embeddings, &p2);
  const LossReport loss = ContrastiveObjective(z1, z2, tau);
  const Gradients grads = Backward(params, {&a1, &e1.trace, &p1, &loss.grad_u}, {&a2, &e2.trace, &p2, &loss.grad_v});
  const std::vector<double> analytic = Flatten(grads);

  ModelParams probe = params;
  const auto f = [&](std::span<const double> flat) {
    Unflatten(flat, probe);
    return ModelObjective(probe, a1, x1, a2, x2, tau);
  };
  const std::vector<double> flat = Flatten(params);
  const std::vector<double> numeric = FiniteDiff(f, flat);

  GradientCheckReport r;
  r.num_params = flat.size();
  double diff = 0.0, na = 0.0, nn = 0.0;
  for (std::size_t i = 0; i < flat.size(); ++i) {
    const double d = analytic[i] - numeric[i];
    diff += d * d;
    na += analytic[i] * analytic[i];
    nn += numeric[i] * numeric[i];
    r.max_abs_error = std::max(r.max_abs_error, std::abs(d));
  }
  r.relative_error = std::sqrt(diff) / std::max({std::sqrt(na), std::sqrt(nn), 1e-300});
  if (activation == Activation::kPRelu) {
    const std::size_t k = flat.size() - 2;
    double sd = 0.0, sa = 0.0, sn = 0.0;
    for (std::size_t i = k; i < flat.size(); ++i) {
      sd += (analytic[i] - numeric[i]) * (analytic[i] - numeric[i]);
      sa += analytic[i] * analytic[i];
      sn += numeric[i] * numeric[i];
    }
    r.slope_relative_error = std::sqrt(sd) / std::max({std::sqrt(sa), std::sqrt(sn), 1e-300});
  }
  return r;
}

std::vector<CheckResult> RunSelfChecks(std::uint64_t seed) {
  std::vector<CheckResult> out;
  const auto run = [&](std::string name, const std::function<std::pair<bool, std::string>()> &body) {
    CheckResult c;
    c.name = std::move(name);
    try {
      std::tie(c.passed, c.detail) = body();
    } catch (const std::exception &e) {
      c.passed = false;
      c.detail = e.what();
    }
    out.push_back(std::move(c));
  };
  Rng rng(seed);

  run("finite-difference", [&] {
    std::vector<double> x = {0.3, -1.2, 2.5};
    const auto g = FiniteDiff(
        [](std::span<const double> p) {
          double s = 0.0;
          for (double v : p) s += 0.5 * v * v;
          return s;
        },
        x);
    double err = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) err = std::max(err, std::abs(g[i] - x[i]));
    return std::pair{err < 1e-9, "max error " + Fmt(err)};
  });

  run("loss-equivalence", [&] {
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
      const auto n = static_cast<Eigen::Index>(1 + rng.Index(30));
      const auto d = static_cast<Eigen::Index>(1 + rng.Index(8));
      Matrix u(n, d), v(n, d);
      for (auto &x : u.reshaped()) x = rng.Uniform(-1.0, 1.0);
      for (auto &x : v.reshaped()) x = rng.Uniform(-1.0, 1.0);
      const double tau = rng.Uniform(0.2, 1.0);
      worst = std::max(worst, std::abs(ContrastiveObjective(u, v, tau).objective - NaiveLoss(u, v, tau)));
    }
    return std::pair{worst <= 1e-10, "max |J - naive| " + Fmt(worst)};
  });

  run("eigenvector-centrality", [&] {
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      const Graph g = RandomConnectedGraph(2 + rng.Index(7), 0.3, 1, rng);
      const auto nc = EigenvectorCentrality(g);
      EigenPair ref = DenseEigen(DenseAdjacency(g));
      if (ref.vector.sum() < 0.0) ref.vector = -ref.vector;
      for (std::size_t i = 0; i < g.num_nodes; ++i) {
        worst = std::max(worst, std::abs(nc.scores[i] - ref.vector(static_cast<Eigen::Index>(i))));
      }
    }
    return std::pair{worst <= 1e-6, "max entry error " + Fmt(worst)};
  });

  run("pagerank-two-cycle", [&] {
    const std::vector<Edge> e = {{0, 1}, {1, 0}};
    const Graph g = BuildGraph(2, true, e, {}, 0);
    const auto pr = PageRankCentrality(g);
    const double err = std::max(std::abs(pr.scores[0] - 20.0 / 3.0), std::abs(pr.scores[1] - 20.0 / 3.0));
    return std::pair{err <= 1e-6, "error vs 20/3 " + Fmt(err)};
  });

  for (Activation act : {Activation::kRelu, Activation::kPRelu}) {
    run(std::string("gradient-") + std::string(ActivationName(act)), [&] {
      const auto r = GradientCheck(act, seed);
      return std::pair{r.relative_error < 1e-4, "relative error " + Fmt(r.relative_error)};
    });
  }

  run("karate-edge-centrality", [&] {
    const Graph g = KarateClub();
    const auto sources = g.arc_sources();
    std::string detail;
    bool ok = true;
    for (auto m : {CentralityMeasure::kDegree, CentralityMeasure::kEigenvector, CentralityMeasure::kPageRank}) {
      const auto w = EdgeCentrality(g, ComputeCentrality(g, m));
      double hub = 0.0, rest = 0.0;
      std::size_t nh = 0, nr = 0;
      for (std::size_t a = 0; a < g.num_arcs(); ++a) {
        const NodeId u = sources[a], v = g.col_indices[a];
        if (u > v) continue;
        const bool incident = u == 0 || v == 0 || u == 33 || v == 33;
        (incident ? hub : rest) += w.values[a];
        ++(incident ? nh : nr);
      }
      hub /= static_cast<double>(nh);
      rest /= static_cast<double>(nr);
      ok = ok && hub > rest;
      detail += std::string(MeasureName(m)) + " " + Fmt(hub) + ">" + Fmt(rest) + " ";
    }
    return std::pair{ok, detail};
  });

  return out;
}

}  // namespace gca
