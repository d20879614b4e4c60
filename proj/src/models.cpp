/*
 * Copyright 2026 The csimplex Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "csimplex/models.hpp"

#include <cmath>
#include <numbers>

namespace csimplex {

namespace {

void require_square(const Matrix& A, Eigen::Index n, const char* what) {
  if (A.rows() != n || A.cols() != n) {
    throw ParameterError(std::string(what) + " must be " + std::to_string(n) + "x" +
                         std::to_string(n));
  }
}

void require_positive(const Vector& v, const char* name) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i]) || !(v[i] > 0.0)) {
      throw ParameterError(std::string(name) + "[" + std::to_string(i + 1) +
                           "] must be a finite number > 0");
    }
  }
}

// Diagonal > 0, off-diagonal >= 0: a zero entry decouples two species.
void require_competitive(const Matrix& A, const char* name) {
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      const bool ok = i == j ? A(i, j) > 0.0 : A(i, j) >= 0.0;
      if (!std::isfinite(A(i, j)) || !ok) {
        throw ParameterError(std::string(name) + "[" + std::to_string(i + 1) + "][" +
                             std::to_string(j + 1) + "] must be a finite number " +
                             (i == j ? "> 0" : ">= 0"));
      }
    }
  }
}

std::size_t checked_dimension(const Vector& v, const Matrix& A, const char* vname) {
  if (v.size() == 0) throw ParameterError(std::string(vname) + " must be non-empty");
  require_square(A, v.size(), "A");
  return static_cast<std::size_t>(v.size());
}

void require_point(const CompetitionModel& model, const StateVector& x) {
  if (x.size() != model.dimension()) {
    throw DomainError("point has dimension " + std::to_string(x.size()) + ", model has " +
                      std::to_string(model.dimension()));
  }
}

void require_finite(const Vector& v, const char* what) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw ModelEvaluationError(std::string(what) + " is not finite at index " +
                                     std::to_string(i + 1),
                                 static_cast<std::size_t>(i));
    }
  }
}

void require_finite(const Matrix& m, const char* what) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (!std::isfinite(m(i, j))) {
        throw ModelEvaluationError(std::string(what) + " is not finite in row " +
                                       std::to_string(i + 1),
                                   static_cast<std::size_t>(i));
      }
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// May-Oster

MayOsterModel::MayOsterModel(Vector B, Matrix A)
    : CompetitionModel(checked_dimension(B, A, "B")), B_(std::move(B)), A_(std::move(A)) {
  require_positive(B_, "B");
  require_competitive(A_, "A");
}

Vector MayOsterModel::growth(const Vector& x) const {
  return (B_ - A_ * x).array().exp().matrix();
}

Matrix MayOsterModel::growth_jacobian(const Vector& x) const {
  const Vector g = growth(x);
  return -(g.asDiagonal() * A_);
}

Vector MayOsterModel::axial_fixed_points() const {
  return B_.cwiseQuotient(A_.diagonal());
}

// ---------------------------------------------------------------------------
// Leslie-Gower

LeslieGowerModel::LeslieGowerModel(Vector C, Matrix A)
    : CompetitionModel(checked_dimension(C, A, "C")), C_(std::move(C)), A_(std::move(A)) {
  require_positive(C_, "C");
  require_competitive(A_, "A");
}

Vector LeslieGowerModel::growth(const Vector& x) const {
  const Vector denom = Vector::Ones(C_.size()) + A_ * x;
  return C_.cwiseQuotient(denom);
}

Matrix LeslieGowerModel::growth_jacobian(const Vector& x) const {
  const Vector denom = Vector::Ones(C_.size()) + A_ * x;
  const Vector scale = C_.cwiseQuotient(denom.cwiseProduct(denom));
  return -(scale.asDiagonal() * A_);
}

Vector LeslieGowerModel::axial_fixed_points() const {
  Vector q(C_.size());
  for (Eigen::Index i = 0; i < C_.size(); ++i) {
    if (!(C_[i] > 1.0)) {
      throw NoAxialFixedPoint("no axial fixed point for species " + std::to_string(i + 1) +
                                  " (C <= 1, all trajectories on the axis tend to 0)",
                              static_cast<std::size_t>(i));
    }
    q[i] = (C_[i] - 1.0) / A_(i, i);
  }
  return q;
}

// ---------------------------------------------------------------------------
// Transfer functions

Transfer::Transfer(std::string name, Fn value, Fn derivative, double gain)
    : name_(std::move(name)), value_(std::move(value)), derivative_(std::move(derivative)),
      gain_(gain) {
  if (!std::isfinite(gain_) || !(gain_ > 0.0)) {
    throw ParameterError("gamma must be a finite number > 0");
  }
}

Transfer Transfer::softplus(double gain) {
  auto value = [gain](double s) {
    // log(1 + e^s) without overflow for large s
    const double sp = s > 0.0 ? s + std::log1p(std::exp(-s)) : std::log1p(std::exp(s));
    return gain * (sp - std::numbers::ln2);
  };
  auto derivative = [gain](double s) {
    return s >= 0.0 ? gain / (1.0 + std::exp(-s)) : gain * std::exp(s) / (1.0 + std::exp(s));
  };
  return Transfer("softplus", value, derivative, gain);
}

Transfer Transfer::tanh(double gain) {
  auto value = [gain](double s) { return gain * std::tanh(s); };
  auto derivative = [gain](double s) {
    const double c = std::cosh(s);
    return gain / (c * c);
  };
  return Transfer("tanh", value, derivative, gain);
}

Transfer Transfer::custom(std::string name, Fn value, Fn derivative, double gain) {
  if (!value || !derivative) throw ParameterError("transfer needs a value and a derivative");
  if (value(0.0) != 0.0) throw ParameterError("transfer must satisfy sigma(0) = 0");
  return Transfer(std::move(name), std::move(value), std::move(derivative), gain);
}

// ---------------------------------------------------------------------------
// Neural network

NeuralNetModel::NeuralNetModel(Vector B, Matrix A, Transfer transfer)
    : CompetitionModel(checked_dimension(B, A, "B")), B_(std::move(B)), A_(std::move(A)),
      transfer_(std::move(transfer)) {
  require_positive(B_, "B");
  require_competitive(A_, "A");
}

Vector NeuralNetModel::growth(const Vector& x) const {
  const Vector s = input(x);
  Vector g(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) g[i] = std::exp(transfer_(s[i]));
  return g;
}

Matrix NeuralNetModel::growth_jacobian(const Vector& x) const {
  const Vector s = input(x);
  Vector scale(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    scale[i] = transfer_.derivative(s[i]) * std::exp(transfer_(s[i]));
  }
  return -(scale.asDiagonal() * A_);
}

Vector NeuralNetModel::axial_fixed_points() const {
  // sigma vanishes only at 0 (strictly increasing), so s_i = 0 on the axis.
  return B_.cwiseQuotient(A_.diagonal());
}

// ---------------------------------------------------------------------------

Matrix central_difference_jacobian(const std::function<Vector(const Vector&)>& f,
                                   const Vector& x) {
  const Eigen::Index n = x.size();
  Matrix J;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double h = 1e-6 * (1.0 + std::abs(x[j]));
    Vector xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    const Vector col = (f(xp) - f(xm)) / (xp[j] - xm[j]);
    if (j == 0) J.resize(col.size(), n);
    J.col(j) = col;
  }
  return J;
}

StateVector eval_map(const CompetitionModel& model, const StateVector& x) {
  require_point(model, x);
  const Vector g = model.growth(x.vec());
  require_finite(g, "growth factor");
  Vector y = model.map(x.vec());
  require_finite(y, "map value");
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    if (y[k] < 0.0) {
      throw ModelEvaluationError("map value is negative at index " + std::to_string(i + 1), i);
    }
  }
  return StateVector(std::move(y));
}

Vector eval_growth(const CompetitionModel& model, const StateVector& x) {
  require_point(model, x);
  Vector g = model.growth(x.vec());
  require_finite(g, "growth factor");
  return g;
}

Matrix eval_growth_jacobian(const CompetitionModel& model, const StateVector& x) {
  require_point(model, x);
  Matrix J = model.growth_jacobian(x.vec());
  require_finite(J, "growth Jacobian");
  return J;
}

Matrix map_jacobian(const CompetitionModel& model, const StateVector& x) {
  const Vector g = eval_growth(model, x);
  const Matrix J = eval_growth_jacobian(model, x);
  Matrix T = x.vec().asDiagonal() * J;
  T.diagonal() += g;
  return T;
}

StateVector axial_fixed_points(const CompetitionModel& model) {
  const std::size_t n = model.dimension();
  Vector q = model.axial_fixed_points();
  for (std::size_t i = 0; i < n; ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    if (!std::isfinite(q[k]) || !(q[k] > 0.0)) {
      throw NoAxialFixedPoint("no positive axial fixed point for species " + std::to_string(i + 1),
                              i);
    }
    const StateVector on_axis = StateVector::axis(n, i, q[k]);
    const double image = eval_map(model, on_axis)[i];
    if (std::abs(image - q[k]) > 1e-10 * std::max(1.0, q[k])) {
      throw NoAxialFixedPoint("axial point for species " + std::to_string(i + 1) +
                                  " is not fixed (T moves it by " +
                                  std::to_string(image - q[k]) + ")",
                              i);
    }
  }
  return StateVector(std::move(q));
}

}  // namespace csimplex
