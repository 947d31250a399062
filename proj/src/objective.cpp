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
#include "gca/objective.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gca/error.hpp"

namespace gca {
namespace {

void CheckInputs(const Matrix &z_u, const Matrix &z_v, double tau) {
  GCA_CHECK(tau > 0.0, ErrorCode::kInvalidArgument, "temperature must be positive");
  GCA_CHECK(z_u.rows() >= 1, ErrorCode::kInvalidArgument, "objective needs at least one row");
  GCA_CHECK(z_u.rows() == z_v.rows() && z_u.cols() == z_v.cols(), ErrorCode::kShape,
            "the two views must have identical shapes");
}

// exp(scaled - shift) with the diagonal optionally cleared.
Matrix ShiftedExp(const Matrix &scaled, double shift, bool clear_diagonal) {
  Matrix e = (scaled.array() - shift).exp().matrix();
  if (clear_diagonal) e.diagonal().setZero();
  return e;
}

// d/dz of f(z / max(|z|, floor)) given g = df/d(unit), row-wise.
Matrix NormalizeBackward(const Matrix &z, const Matrix &unit, const Matrix &g) {
  Matrix out(z.rows(), z.cols());
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    const double norm = z.row(i).norm();
    if (norm < kNormFloor) {
      out.row(i) = g.row(i) / kNormFloor;
      continue;
    }
    const double along = unit.row(i).dot(g.row(i));
    out.row(i) = (g.row(i) - along * unit.row(i)) / norm;
  }
  return out;
}

// Terms l(a_i, b_i) for unit rows, with the exponentials kept for the
// gradient. Exponents are shifted by 1/tau, which bounds every cosine/tau.
struct AnchorTerms {
  Matrix e_cross;  // exp(a_i . b_k / tau - shift)
  Matrix e_self;   // exp(a_i . a_k / tau - shift), zero diagonal
  Vector denom;
  Vector terms;
  double total = 0.0;
};

AnchorTerms Anchor(const Matrix &a, const Matrix &b, double tau) {
  const double shift = 1.0 / tau;
  const Matrix s_ab = (a * b.transpose()) / tau;
  AnchorTerms t;
  t.e_cross = ShiftedExp(s_ab, shift, false);
  t.e_self = ShiftedExp((a * a.transpose()) / tau, shift, true);
  t.denom = t.e_cross.rowwise().sum() + t.e_self.rowwise().sum();
  t.terms.resize(a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    t.terms(i) = (s_ab(i, i) - shift) - std::log(t.denom(i));
    t.total += t.terms(i);
  }
  return t;
}

}  // namespace

Matrix NormalizeRows(const Matrix &z, const char *which, bool clamp) {
  Matrix out(z.rows(), z.cols());
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    const double norm = z.row(i).norm();
    GCA_CHECK(std::isfinite(norm), ErrorCode::kNonFinite,
              std::string(which) + " row " + std::to_string(i) + " is not finite");
    GCA_CHECK(clamp || norm > 0.0, ErrorCode::kInvalidArgument,
              std::string(which) + " row " + std::to_string(i) + " has zero norm");
    out.row(i) = z.row(i) / std::max(norm, clamp ? kNormFloor : 0.0);
  }
  return out;
}

LossReport ContrastiveObjective(const Matrix &z_u, const Matrix &z_v, double tau, bool clamp_zero_rows) {
  CheckInputs(z_u, z_v, tau);
  const auto n = z_u.rows();
  const Matrix u = NormalizeRows(z_u, "view-1", clamp_zero_rows);
  const Matrix v = NormalizeRows(z_v, "view-2", clamp_zero_rows);
  // Each direction runs the same arithmetic on its own products, so swapping
  // the views gives a bit-identical value.
  AnchorTerms au = Anchor(u, v, tau);
  AnchorTerms av = Anchor(v, u, tau);

  LossReport r;
  r.tau = tau;
  r.objective = (au.total + av.total) / (2.0 * static_cast<double>(n));
  GCA_CHECK(std::isfinite(r.objective), ErrorCode::kNonFinite, "contrastive objective is not finite");

  // dJ/dS_uv = (2I - diag(1/denom_u) E_uv - E_uv diag(1/denom_v)) / 2N, in place.
  const double scale = 1.0 / (2.0 * static_cast<double>(n));
  const Vector inv_u = au.denom.cwiseInverse();
  const Vector inv_v = av.denom.cwiseInverse();
  Matrix &e_uv = au.e_cross;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < n; ++k) {
      e_uv(i, k) = -scale * e_uv(i, k) * (inv_u(i) + inv_v(k));
    }
    e_uv(i, i) += 2.0 * scale;
  }
  // dJ/dS_uu = -diag(1/denom_u) E_uu / 2N, likewise for vv.
  const Matrix e_uu = (-scale * inv_u).asDiagonal() * au.e_self;
  const Matrix e_vv = (-scale * inv_v).asDiagonal() * av.e_self;

  // S_uu depends on u through both factors.
  Matrix grad_unit_u = (e_uv * v + e_uu * u + e_uu.transpose() * u) / tau;
  Matrix grad_unit_v = (e_uv.transpose() * u + e_vv * v + e_vv.transpose() * v) / tau;
  r.grad_u = NormalizeBackward(z_u, u, grad_unit_u);
  r.grad_v = NormalizeBackward(z_v, v, grad_unit_v);
  return r;
}

std::vector<double> PairwiseObjective(const Matrix &z_u, const Matrix &z_v, double tau) {
  CheckInputs(z_u, z_v, tau);
  const AnchorTerms a = Anchor(NormalizeRows(z_u, "view-1"), NormalizeRows(z_v, "view-2"), tau);
  return std::vector<double>(a.terms.data(), a.terms.data() + a.terms.size());
}

double InfoNceEstimate(const Matrix &z_u, const Matrix &z_v, double tau) {
  CheckInputs(z_u, z_v, tau);
  const auto n = z_u.rows();
  const Matrix u = NormalizeRows(z_u, "view-1");
  const Matrix v = NormalizeRows(z_v, "view-2");
  const double shift = 1.0 / tau;
  const Matrix s_uv = (u * v.transpose()) / tau;
  const Vector row_sums = ShiftedExp(s_uv, shift, false).rowwise().sum();
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    total += (s_uv(i, i) - shift) - std::log(row_sums(i) / static_cast<double>(n));
  }
  return total / static_cast<double>(n);
}

TripletReport TripletSurrogate(const Matrix &z_u, const Matrix &z_v, double tau) {
  CheckInputs(z_u, z_v, tau);
  for (const Matrix *z : {&z_u, &z_v}) {
    for (Eigen::Index i = 0; i < z->rows(); ++i) {
      GCA_CHECK(std::abs(z->row(i).norm() - 1.0) <= 1e-8, ErrorCode::kInvalidArgument,
                "triplet surrogate requires unit-norm rows; row " + std::to_string(i) + " has norm " +
                    std::to_string(z->row(i).norm()));
    }
  }
  const auto n = z_u.rows();
  TripletReport r;
  r.surrogate.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const double pos = (z_u.row(i) - z_v.row(i)).squaredNorm();
    double bracket = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      bracket += (pos - (z_u.row(i) - z_v.row(j)).squaredNorm()) + (pos - (z_u.row(i) - z_u.row(j)).squaredNorm());
    }
    r.surrogate[static_cast<std::size_t>(i)] = 4.0 * static_cast<double>(n) * tau + bracket;
  }
  r.negative_loss = PairwiseObjective(z_u, z_v, tau);
  for (auto &x : r.negative_loss) x = -x;
  return r;
}

void DumpSimilarities(std::ostream &out, const Matrix &z_u, const Matrix &z_v, double tau) {
  CheckInputs(z_u, z_v, tau);
  const Matrix u = NormalizeRows(z_u, "view-1");
  const Matrix v = NormalizeRows(z_v, "view-2");
  const std::pair<const char *, Matrix> blocks[] = {
      {"uv", (u * v.transpose()) / tau}, {"uu", (u * u.transpose()) / tau}, {"vv", (v * v.transpose()) / tau}};
  for (const auto &[name, m] : blocks) {
    out << "# " << name << "\n";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? "\t" : "") << m(i, j);
      out << "\n";
    }
  }
}

}  // namespace gca
