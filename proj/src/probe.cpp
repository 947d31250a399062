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
#include "gca/probe.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "gca/error.hpp"

namespace gca {
namespace {

// Selected rows with a trailing column of ones.
Matrix Design(const Matrix &embeddings, std::span<const NodeId> rows) {
  Matrix x(static_cast<Eigen::Index>(rows.size()), embeddings.cols() + 1);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    GCA_CHECK(rows[r] < static_cast<std::size_t>(embeddings.rows()), ErrorCode::kOutOfRange,
              "probe row " + std::to_string(rows[r]) + " out of range");
    x.row(static_cast<Eigen::Index>(r)) << embeddings.row(rows[r]), 1.0;
  }
  return x;
}

std::vector<std::int32_t> Targets(std::span<const std::int32_t> labels, std::size_t num_classes,
                                  std::span<const NodeId> rows) {
  std::vector<std::int32_t> y(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    GCA_CHECK(rows[r] < labels.size(), ErrorCode::kOutOfRange, "probe row has no label");
    const auto c = labels[rows[r]];
    GCA_CHECK(c >= 0 && static_cast<std::size_t>(c) < num_classes, ErrorCode::kOutOfRange,
              "label " + std::to_string(c) + " outside [0, " + std::to_string(num_classes) + ")");
    y[r] = c;
  }
  return y;
}

// Objective and optionally gradient on a prepared design matrix.
double Loss(const Matrix &x, const std::vector<std::int32_t> &y, const Matrix &w, double l2, Matrix *grad) {
  const auto n = x.rows();
  Matrix logits = x * w;
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double m = logits.row(i).maxCoeff();
    logits.row(i) = (logits.row(i).array() - m).exp().matrix();
    const double z = logits.row(i).sum();
    total += std::log(z) - std::log(logits(i, y[static_cast<std::size_t>(i)]));
    logits.row(i) /= z;
  }
  const auto body = w.topRows(w.rows() - 1);
  const double mean = n > 0 ? total / static_cast<double>(n) : 0.0;
  const double value = mean + 0.5 * l2 * body.squaredNorm();
  if (grad != nullptr) {
    for (Eigen::Index i = 0; i < n; ++i) logits(i, y[static_cast<std::size_t>(i)]) -= 1.0;
    *grad = n > 0 ? Matrix(x.transpose() * logits / static_cast<double>(n)) : Matrix::Zero(w.rows(), w.cols());
    grad->topRows(w.rows() - 1) += l2 * body;
  }
  return value;
}

struct RunOutcome {
  double accuracy = 0.0;
  double l2 = 0.0;
};

}  // namespace

double LogisticObjective(const Matrix &embeddings, std::span<const std::int32_t> labels, std::size_t num_classes,
                         std::span<const NodeId> rows, const Matrix &weights, double l2) {
  GCA_CHECK(weights.rows() == embeddings.cols() + 1 && static_cast<std::size_t>(weights.cols()) == num_classes,
            ErrorCode::kShape, "logistic weights must be (F'+1) x C");
  return Loss(Design(embeddings, rows), Targets(labels, num_classes, rows), weights, l2, nullptr);
}

LogisticFit FitLogistic(const Matrix &embeddings, std::span<const std::int32_t> labels, std::size_t num_classes,
                        std::span<const NodeId> train_idx, double l2, int max_iter) {
  GCA_CHECK(l2 >= 0.0 && std::isfinite(l2), ErrorCode::kInvalidArgument, "l2 must be a finite value >= 0");
  GCA_CHECK(num_classes >= 1, ErrorCode::kInvalidArgument, "need at least one class");
  GCA_CHECK(embeddings.allFinite(), ErrorCode::kNonFinite, "embeddings contain non-finite values");
  const Matrix x = Design(embeddings, train_idx);
  const auto y = Targets(labels, num_classes, train_idx);

  LogisticFit fit;
  fit.weights = Matrix::Zero(x.cols(), static_cast<Eigen::Index>(num_classes));
  Matrix grad;
  double value = Loss(x, y, fit.weights, l2, &grad);
  // Softmax loss curvature is at most 1/2 per unit feature norm squared.
  const double lipschitz = x.rows() > 0 ? 0.5 * x.rowwise().squaredNorm().maxCoeff() + l2 : 1.0;
  double step = 1.0 / std::max(lipschitz, 1e-12);
  Matrix prev_w, prev_g;
  for (fit.iterations = 0; fit.iterations < max_iter; ++fit.iterations) {
    fit.grad_norm = grad.cwiseAbs().maxCoeff();
    if (fit.grad_norm < 1e-6) {
      fit.converged = true;
      break;
    }
    if (fit.iterations > 0) {
      const Matrix s = fit.weights - prev_w;
      const Matrix d = grad - prev_g;
      const double sd = (s.array() * d.array()).sum();
      if (sd > 0.0) step = s.squaredNorm() / sd;
    }
    prev_w = fit.weights;
    prev_g = grad;
    const double slope = grad.squaredNorm();
    Matrix trial, trial_grad;
    double trial_value = value;
    for (int halvings = 0; halvings < 60; ++halvings) {
      trial = prev_w - step * grad;
      trial_value = Loss(x, y, trial, l2, &trial_grad);
      if (trial_value <= value - 1e-4 * step * slope) break;
      step *= 0.5;
    }
    if (!(trial_value < value)) {
      // No descent at rounding level; treat as stationary.
      fit.converged = fit.grad_norm < 1e-4;
      break;
    }
    fit.weights = std::move(trial);
    grad = std::move(trial_grad);
    value = trial_value;
  }
  if (fit.iterations == max_iter) {
    fit.grad_norm = grad.cwiseAbs().maxCoeff();
    fit.converged = fit.grad_norm < 1e-6;
  }
  fit.objective = value;
  return fit;
}

std::vector<std::int32_t> PredictLogistic(const Matrix &embeddings, const Matrix &weights) {
  GCA_CHECK(weights.rows() == embeddings.cols() + 1, ErrorCode::kShape, "logistic weights must be (F'+1) x C");
  const Matrix logits = embeddings * weights.topRows(weights.rows() - 1);
  std::vector<std::int32_t> out(static_cast<std::size_t>(embeddings.rows()));
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    Eigen::Index best = 0;
    (logits.row(i) + weights.bottomRows(1)).maxCoeff(&best);
    out[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(best);
  }
  return out;
}

double Accuracy(const Matrix &embeddings, std::span<const std::int32_t> labels, std::span<const NodeId> rows,
                const Matrix &weights) {
  if (rows.empty()) return 0.0;
  const Matrix x = Design(embeddings, rows);
  const Matrix logits = x * weights;
  std::size_t hits = 0;
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    Eigen::Index best = 0;
    logits.row(i).maxCoeff(&best);
    hits += static_cast<std::int32_t>(best) == labels[rows[static_cast<std::size_t>(i)]];
  }
  return static_cast<double>(hits) / static_cast<double>(rows.size());
}

ProbeResult Evaluate(const Matrix &embeddings, std::span<const std::int32_t> labels, std::size_t num_classes,
                     const ProbeOptions &options, std::span<const Split> stored_splits) {
  GCA_CHECK(options.runs >= 1, ErrorCode::kInvalidArgument, "runs must be >= 1");
  GCA_CHECK(!options.l2_grid.empty(), ErrorCode::kInvalidArgument, "l2 grid is empty");
  GCA_CHECK(labels.size() == static_cast<std::size_t>(embeddings.rows()), ErrorCode::kCountMismatch,
            "labels and embeddings disagree on node count");
  const auto runs = static_cast<std::size_t>(options.runs);
  ProbeResult result;
  result.seeds.resize(runs);
  std::vector<RunOutcome> outcomes(runs);

  auto run_one = [&](std::size_t r) {
    const std::uint64_t seed = options.split_seed_base + r;
    const Split split = stored_splits.empty() ? RandomSplit(labels.size(), seed) : stored_splits[r % stored_splits.size()];
    double best_val = -1.0;
    RunOutcome out;
    for (double l2 : options.l2_grid) {
      const LogisticFit fit = FitLogistic(embeddings, labels, num_classes, split.train, l2, options.max_iter);
      // Ties keep the smaller regularisation, the grid is ascending.
      const double val = split.val.empty() ? 0.0 : Accuracy(embeddings, labels, split.val, fit.weights);
      if (val > best_val) {
        best_val = val;
        out.l2 = l2;
        out.accuracy = Accuracy(embeddings, labels, split.test, fit.weights);
      }
    }
    outcomes[r] = out;
    result.seeds[r] = seed;
  };

  const std::size_t workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(options.threads, 1)), 1, runs);
  if (workers == 1) {
    for (std::size_t r = 0; r < runs; ++r) run_one(r);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t r = t; r < runs; r += workers) run_one(r);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto &th : pool) th.join();
    for (auto &e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  for (const auto &o : outcomes) {
    result.accuracies.push_back(o.accuracy);
    result.chosen_l2.push_back(o.l2);
  }
  double sum = 0.0;
  for (double a : result.accuracies) sum += a;
  result.mean = sum / static_cast<double>(runs);
  double var = 0.0;
  for (double a : result.accuracies) var += (a - result.mean) * (a - result.mean);
  result.std = std::sqrt(var / static_cast<double>(runs));
  return result;
}

}  // namespace gca
