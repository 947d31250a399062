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
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>

#include "doctest.h"
#include "gca/error.hpp"
#include "gca/probe.hpp"
#include "gca/rng.hpp"

using namespace gca;

namespace {

struct Blobs {
  Matrix x;
  std::vector<std::int32_t> y;
  struct Reference {
    double l2;
    double objective;
    double accuracy;
    std::vector<std::vector<double>> probs;
  };
  std::vector<Reference> refs;
};

// Fixture written by tools/oracles/logistic_reference.py.
Blobs LoadBlobs() {
  std::ifstream in(std::string(GCA_SOURCE_DIR) + "/tests/data/probe_blobs.tsv");
  REQUIRE(in.good());
  Blobs b;
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string head;
    ss >> head;
    std::vector<double> vals;
    for (double v; ss >> v;) vals.push_back(v);
    if (head == "fit") {
      b.refs.push_back({vals[0], vals[1], vals[2], {}});
    } else if (head == "prob") {
      b.refs.back().probs.push_back(vals);
    } else {
      b.y.push_back(std::stoi(head));
      rows.push_back(vals);
    }
  }
  b.x.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      b.x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return b;
}

std::vector<NodeId> Range(NodeId lo, NodeId hi) {
  std::vector<NodeId> r(hi - lo);
  std::iota(r.begin(), r.end(), lo);
  return r;
}

Matrix Softmax(const Matrix &x, const Matrix &w) {
  Matrix logits = x * w.topRows(x.cols());
  logits.rowwise() += w.row(x.cols());
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    logits.row(i).array() -= logits.row(i).maxCoeff();
    logits.row(i) = logits.row(i).array().exp();
    logits.row(i) /= logits.row(i).sum();
  }
  return logits;
}

}  // namespace

TEST_SUITE("probe") {
  TEST_CASE("matches the reference solver on blobs") {
    const Blobs b = LoadBlobs();
    REQUIRE(b.x.rows() == 300);
    REQUIRE(b.refs.size() == 2);
    const auto train = Range(0, 200), test = Range(200, 300);
    for (const auto &ref : b.refs) {
      CAPTURE(ref.l2);
      const LogisticFit fit = FitLogistic(b.x, b.y, 3, train, ref.l2);
      CHECK(fit.converged);
      CHECK(fit.grad_norm < 1e-6);
      CHECK(fit.objective == doctest::Approx(LogisticObjective(b.x, b.y, 3, train, fit.weights, ref.l2)));
      CHECK(fit.objective <= ref.objective + 1e-9);
      CHECK(fit.objective >= ref.objective - 1e-7);
      CHECK(Accuracy(b.x, b.y, test, fit.weights) == doctest::Approx(ref.accuracy));
      const Matrix p = Softmax(b.x.middleRows(200, 10), fit.weights);
      for (Eigen::Index i = 0; i < 10; ++i) {
        for (Eigen::Index c = 0; c < 3; ++c) {
          CHECK(std::abs(p(i, c) - ref.probs[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)]) < 1e-5);
        }
      }
    }
  }

  TEST_CASE("separable data is fitted exactly") {
    Matrix x(4, 1);
    x << -2, -1, 1, 2;
    const std::vector<std::int32_t> y = {0, 0, 1, 1};
    const auto rows = Range(0, 4);
    const LogisticFit fit = FitLogistic(x, y, 2, rows, 1e-4);
    CHECK(Accuracy(x, y, rows, fit.weights) == 1.0);
    CHECK(PredictLogistic(x, fit.weights) == y);
    CHECK(fit.objective < LogisticObjective(x, y, 2, rows, Matrix::Zero(2, 2), 1e-4));
  }

  TEST_CASE("strong regularisation shrinks the weights") {
    Rng rng(3);
    Matrix x(50, 3);
    std::vector<std::int32_t> y(50);
    for (int i = 0; i < 50; ++i) {
      y[static_cast<std::size_t>(i)] = i % 2;
      for (int j = 0; j < 3; ++j) x(i, j) = rng.Uniform(-1, 1) + (i % 2);
    }
    const auto rows = Range(0, 50);
    const LogisticFit weak = FitLogistic(x, y, 2, rows, 1e-4);
    const LogisticFit strong = FitLogistic(x, y, 2, rows, 1e4);
    CHECK(strong.converged);
    CHECK(strong.weights.topRows(3).norm() < 1e-3);
    CHECK(strong.weights.topRows(3).norm() < weak.weights.topRows(3).norm());
  }

  TEST_CASE("constant embeddings predict the majority class") {
    const Matrix x = Matrix::Constant(40, 2, 0.5);
    std::vector<std::int32_t> y(40, 1);
    for (int i = 0; i < 10; ++i) y[static_cast<std::size_t>(i)] = 0;
    const auto rows = Range(0, 40);
    const LogisticFit fit = FitLogistic(x, y, 2, rows, 1e-2);
    CHECK(Accuracy(x, y, rows, fit.weights) == doctest::Approx(0.75));
  }

  TEST_CASE("evaluation on label-revealing embeddings") {
    const std::size_t n = 300;
    std::vector<std::int32_t> y(n);
    Matrix x = Matrix::Zero(static_cast<Eigen::Index>(n), 3);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = static_cast<std::int32_t>(i % 3);
      x(static_cast<Eigen::Index>(i), y[i]) = 1.0;
    }
    ProbeOptions opt;
    opt.runs = 5;
    const ProbeResult r = Evaluate(x, y, 3, opt);
    CHECK(r.accuracies.size() == 5);
    CHECK(r.mean == 1.0);
    CHECK(r.std == 0.0);
    CHECK(r.seeds == std::vector<std::uint64_t>{0, 1, 2, 3, 4});
    // All grid points tie on validation, so the first is kept.
    for (double l2 : r.chosen_l2) CHECK(l2 == kDefaultL2Grid.front());
  }

  TEST_CASE("evaluation is deterministic and thread-count independent") {
    const Blobs b = LoadBlobs();
    ProbeOptions opt;
    opt.runs = 6;
    opt.split_seed_base = 11;
    const ProbeResult a = Evaluate(b.x, b.y, 3, opt);
    opt.threads = 3;
    const ProbeResult c = Evaluate(b.x, b.y, 3, opt);
    CHECK(a.accuracies == c.accuracies);
    CHECK(a.chosen_l2 == c.chosen_l2);
    double var = 0.0;
    for (double v : a.accuracies) var += (v - a.mean) * (v - a.mean);
    CHECK(a.std == doctest::Approx(std::sqrt(var / 6.0)));
  }

  TEST_CASE("rotated embeddings give the same accuracy") {
    const Blobs b = LoadBlobs();
    Rng rng(8);
    Matrix g(4, 4);
    for (Eigen::Index i = 0; i < 16; ++i) g.data()[i] = rng.Uniform(-1, 1);
    const Matrix q = Eigen::HouseholderQR<Matrix>(g).householderQ();
    ProbeOptions opt;
    opt.runs = 5;
    const double base = Evaluate(b.x, b.y, 3, opt).mean;
    const double rotated = Evaluate(b.x * q, b.y, 3, opt).mean;
    CHECK(std::abs(base - rotated) < 0.005);
  }

  TEST_CASE("stored splits are used in rotation") {
    Matrix x = Matrix::Zero(20, 2);
    std::vector<std::int32_t> y(20);
    for (int i = 0; i < 20; ++i) {
      y[static_cast<std::size_t>(i)] = i % 2;
      x(i, i % 2) = 1.0;
    }
    // The second split tests on a node whose features are flipped.
    x.row(19) << 1.0, 0.0;
    const Split clean{{0, 1, 2, 3}, {4, 5}, {6, 7}};
    const Split flipped{{0, 1, 2, 3}, {4, 5}, {19}};
    const std::vector<Split> splits = {clean, flipped};
    ProbeOptions opt;
    opt.runs = 4;
    const ProbeResult r = Evaluate(x, y, 2, opt, splits);
    CHECK(r.accuracies == std::vector<double>{1.0, 0.0, 1.0, 0.0});
  }

  TEST_CASE("invalid arguments") {
    const Matrix x = Matrix::Zero(4, 2);
    const std::vector<std::int32_t> y = {0, 1, 0, 5};
    const auto rows = Range(0, 3);
    CHECK_THROWS_AS(FitLogistic(x, y, 2, rows, -1.0), Error);
    CHECK_THROWS_AS(FitLogistic(x, y, 2, Range(0, 4), 1.0), Error);
    ProbeOptions opt;
    opt.runs = 0;
    CHECK_THROWS_AS(Evaluate(x, y, 2, opt), Error);
    opt.runs = 1;
    CHECK_THROWS_AS(Evaluate(x, std::vector<std::int32_t>{0, 1}, 2, opt), Error);
  }
}
